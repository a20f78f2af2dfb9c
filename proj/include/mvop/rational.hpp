#pragma once

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "error.hpp"

namespace mvop {

/// Arbitrary-precision rational in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;

    template <std::integral T>
    Rational(T v) // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<T>)
            v_ = static_cast<long>(v);
        else
            v_ = static_cast<unsigned long>(v);
    }

    Rational(long num, long den)
    {
        if (den == 0)
            fail(ErrorKind::InvalidArgument, "zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    /// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        auto first = s.find_first_not_of(" \t");
        auto last = s.find_last_not_of(" \t");
        if (first == std::string::npos)
            fail(ErrorKind::ParseError, "empty fraction");
        s = s.substr(first, last - first + 1);
        auto slash = s.find('/');
        auto valid_int = [](const std::string& t) {
            if (t.empty())
                return false;
            std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
            if (i == t.size())
                return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9')
                    return false;
            return true;
        };
        std::string num = slash == std::string::npos ? s : s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
            fail(ErrorKind::ParseError, "not an exact fraction: '" + std::string(text) + "'");
        if (num[0] == '+')
            num.erase(0, 1);
        mpz_class n(num, 10), d(den, 10);
        if (d == 0)
            fail(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
        return Rational(mpq_class(n, d));
    }

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// Largest integer not above this value.
    mpz_class floor() const
    {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    std::string str() const
    {
        if (is_integer())
            return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    double to_double() const { return v_.get_d(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero())
            fail(ErrorKind::InvalidArgument, "division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(Rational base, unsigned e)
{
    Rational out(1);
    while (e) {
        if (e & 1U)
            out *= base;
        base *= base;
        e >>= 1U;
    }
    return out;
}

inline Rational binomial(unsigned n, unsigned k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

inline bool is_zero(const Rational& r) { return r.is_zero(); }

} // namespace mvop
