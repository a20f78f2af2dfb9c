#pragma once

#include <string>
#include <utility>

#include "matrix.hpp"
#include "poly.hpp"

namespace mvop {

/// Reduced rational function num/den in x with monic denominator.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(PolyX num) : num_(std::move(num)), den_(1) {} // NOLINT(google-explicit-constructor)
    RatFunc(Rational c) : RatFunc(PolyX(std::move(c))) {} // NOLINT(google-explicit-constructor)
    template <std::integral T>
    RatFunc(T c) : RatFunc(PolyX(c)) {} // NOLINT(google-explicit-constructor)
    RatFunc(PolyX num, PolyX den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const PolyX& num() const { return num_; }
    const PolyX& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc derivative() const
    {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b)
    {
        if (a.den_ == b.den_)
            return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator-(const RatFunc& a)
    {
        RatFunc r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const Rational& s) { return a * RatFunc(s); }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b)
    {
        if (b.is_zero())
            fail(ErrorKind::InvalidArgument, "rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string str() const
    {
        if (is_polynomial())
            return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize()
    {
        if (den_.is_zero())
            fail(ErrorKind::InvalidArgument, "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = PolyX(1);
            return;
        }
        PolyX g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        Rational lc = den_.leading();
        if (lc != Rational(1)) {
            Rational inv = Rational(1) / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    PolyX num_;
    PolyX den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }
inline RatFunc exact_div(const RatFunc& a, const RatFunc& b) { return a / b; }

using RatMat = Mat<RatFunc>;

inline RatMat to_ratmat(const PolyMat& m)
{
    return m.map([](const PolyX& p) { return RatFunc(p); });
}

/// Inverse of a square rational-function matrix; SingularMatrix when det ≡ 0.
inline RatMat mat_inverse(const RatMat& a) { return inverse(a); }

inline RatMat derivative(const RatMat& m)
{
    return m.map([](const RatFunc& f) { return f.derivative(); });
}

} // namespace mvop
