#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace mvop {

struct XVar {
    static constexpr std::string_view name = "x";
};
struct NVar {
    static constexpr std::string_view name = "n";
};

/// Dense univariate polynomial over the rationals, ascending coefficients.
/// The zero polynomial has no coefficients.
template <class Var>
class UniPoly {
public:
    using Coeffs = std::vector<Rational>;

    UniPoly() = default;
    UniPoly(Rational c) : c_{std::move(c)} { trim(); } // NOLINT(google-explicit-constructor)
    template <std::integral T>
    UniPoly(T c) : UniPoly(Rational(c)) {} // NOLINT(google-explicit-constructor)
    explicit UniPoly(Coeffs c) : c_(std::move(c)) { trim(); }
    UniPoly(std::initializer_list<Rational> c) : c_(c) { trim(); }

    static UniPoly var() { return UniPoly(Coeffs{Rational(0), Rational(1)}); }
    static UniPoly monomial(std::size_t k, Rational c = 1)
    {
        Coeffs v(k + 1);
        v[k] = std::move(c);
        return UniPoly(std::move(v));
    }

    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(); }
    Rational leading() const { return c_.empty() ? Rational() : c_.back(); }

    Rational operator()(const Rational& t) const
    {
        Rational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * t + *it;
        return acc;
    }

    /// p(q(t)).
    template <class V2>
    UniPoly<V2> compose(const UniPoly<V2>& q) const
    {
        UniPoly<V2> acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * q + UniPoly<V2>(*it);
        return acc;
    }

    UniPoly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        Coeffs d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            d[k - 1] = c_[k] * Rational(static_cast<long>(k));
        return UniPoly(std::move(d));
    }

    UniPoly derivative(unsigned order) const
    {
        UniPoly p = *this;
        for (unsigned i = 0; i < order && !p.is_zero(); ++i)
            p = p.derivative();
        return p;
    }

    UniPoly monic() const
    {
        if (is_zero())
            return {};
        return *this * (Rational(1) / leading());
    }

    /// Euclidean division; divisor must be nonzero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const
    {
        if (d.is_zero())
            fail(ErrorKind::InvalidArgument, "polynomial division by zero");
        if (degree() < d.degree())
            return {UniPoly(), *this};
        Coeffs r = c_;
        Coeffs q(c_.size() - d.c_.size() + 1);
        const Rational inv = Rational(1) / d.leading();
        for (int k = degree() - d.degree(); k >= 0; --k) {
            Rational f = r[k + d.degree()] * inv;
            if (f.is_zero())
                continue;
            q[k] = f;
            for (int j = 0; j <= d.degree(); ++j)
                r[k + j] -= f * d.c_[j];
        }
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }

    UniPoly& operator+=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k)
            c_[k] += o.c_[k];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k)
            c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    UniPoly& operator*=(const Rational& s)
    {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_)
            c *= s;
        return *this;
    }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(UniPoly a)
    {
        for (auto& c : a.c_)
            c = -c;
        return a;
    }
    friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
    friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        Coeffs r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    std::string str() const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Rational& c = c_[k];
            if (c.is_zero())
                continue;
            bool neg = c.sign() < 0;
            Rational a = neg ? -c : c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            bool unit = a == Rational(1);
            if (k == 0 || !unit)
                out += (k > 0 && !a.is_integer()) ? "(" + a.str() + ")" : a.str();
            if (k > 0) {
                if (!unit)
                    out += "*";
                out += Var::name;
                if (k > 1)
                    out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }

    Coeffs c_;
};

using PolyX = UniPoly<XVar>;
using PolyN = UniPoly<NVar>;

template <class Var>
bool is_zero(const UniPoly<Var>& p)
{
    return p.is_zero();
}

template <class Var>
UniPoly<Var> pow(const UniPoly<Var>& base, unsigned e)
{
    UniPoly<Var> out(1), b = base;
    while (e) {
        if (e & 1U)
            out *= b;
        b *= b;
        e >>= 1U;
    }
    return out;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class Var>
UniPoly<Var> gcd(UniPoly<Var> a, UniPoly<Var> b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// [t]_k = t(t-1)...(t-k+1).
template <class Var>
UniPoly<Var> falling_factorial(unsigned k)
{
    UniPoly<Var> out(1);
    for (unsigned i = 0; i < k; ++i)
        out *= UniPoly<Var>{Rational(-static_cast<long>(i)), Rational(1)};
    return out;
}

inline PolyX derivative(const PolyX& p) { return p.derivative(); }

} // namespace mvop
