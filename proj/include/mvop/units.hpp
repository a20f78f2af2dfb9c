#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>

#include "error.hpp"
#include "rational.hpp"

namespace mvop {

enum class UnitFamily { None, Hermite, Laguerre, Jacobi };

/// Symbolic transcendental unit attached to a moment:
///   Hermite(b)     sqrt(pi) * exp(b^2)
///   Laguerre(a)    Gamma(a + 1)
///   Jacobi(a, b)   2^(a+b+1) * B(a + 1, b + 1)
struct UnitTag {
    UnitFamily family = UnitFamily::None;
    Rational p;
    Rational q;

    static UnitTag none() { return {}; }
    static UnitTag hermite(Rational b) { return {UnitFamily::Hermite, std::move(b), Rational()}; }
    static UnitTag laguerre(Rational a) { return {UnitFamily::Laguerre, std::move(a), Rational()}; }
    static UnitTag jacobi(Rational a, Rational b) { return {UnitFamily::Jacobi, std::move(a), std::move(b)}; }

    friend bool operator==(const UnitTag&, const UnitTag&) = default;
    friend std::strong_ordering operator<=>(const UnitTag& a, const UnitTag& b)
    {
        if (auto c = a.family <=> b.family; c != 0)
            return c;
        if (auto c = a.p <=> b.p; c != 0)
            return c;
        return a.q <=> b.q;
    }

    std::string str() const
    {
        switch (family) {
        case UnitFamily::None: return "1";
        case UnitFamily::Hermite: return "HermiteUnit(" + p.str() + ")";
        case UnitFamily::Laguerre: return "LaguerreUnit(" + p.str() + ")";
        case UnitFamily::Jacobi: return "JacobiUnit(" + p.str() + "," + q.str() + ")";
        }
        return "?";
    }
};

namespace detail {

// shift so that the parameter lands in (-1, 0]
inline Rational canonical_param(const Rational& a)
{
    Rational c = Rational(mpz_class(-(-a).floor()));
    return a - c;
}

} // namespace detail

/// Canonical representative of the commensurability class of `t`, and the
/// rational factor f with t = f * canonical.
inline std::pair<UnitTag, Rational> canonicalize(const UnitTag& t)
{
    switch (t.family) {
    case UnitFamily::None:
    case UnitFamily::Hermite:
        return {t, Rational(1)};
    case UnitFamily::Laguerre: {
        Rational a = detail::canonical_param(t.p);
        Rational f(1);
        // Gamma(a + 2) = (a + 1) Gamma(a + 1)
        for (; a < t.p; a += 1)
            f *= a + 1;
        return {UnitTag::laguerre(detail::canonical_param(t.p)), f};
    }
    case UnitFamily::Jacobi: {
        Rational a = detail::canonical_param(t.p);
        Rational b = detail::canonical_param(t.q);
        UnitTag canon = UnitTag::jacobi(a, b);
        Rational f(1);
        for (; a < t.p; a += 1)
            f *= Rational(2) * (a + 1) / (a + b + 2);
        for (; b < t.q; b += 1)
            f *= Rational(2) * (b + 1) / (a + b + 2);
        return {canon, f};
    }
    }
    return {t, Rational(1)};
}

inline bool commensurable(const UnitTag& a, const UnitTag& b)
{
    return canonicalize(a).first == canonicalize(b).first;
}

struct UnitScalar {
    Rational coeff;
    UnitTag unit;

    bool is_zero() const { return coeff.is_zero(); }
    std::string str() const { return unit.family == UnitFamily::None ? coeff.str() : coeff.str() + "*" + unit.str(); }
};

/// Re-express `s` as a multiple of `target`. Zero converts to any unit.
inline UnitScalar unit_convert(const UnitScalar& s, const UnitTag& target)
{
    if (s.coeff.is_zero())
        return {Rational(), target};
    auto [cs, fs] = canonicalize(s.unit);
    auto [ct, ft] = canonicalize(target);
    if (cs != ct)
        fail(ErrorKind::IncommensurableUnits, s.unit.str() + " vs " + target.str());
    return {s.coeff * fs / ft, target};
}

/// Finite rational combination of pairwise incommensurable units, stored
/// against canonical tags. Needed because conjugated and direct-sum weights
/// put several unit classes in one moment entry.
class UnitSum {
public:
    UnitSum() = default;
    UnitSum(const Rational& c) { add(UnitTag::none(), c); } // NOLINT(google-explicit-constructor)
    UnitSum(const UnitScalar& s) { add(s.unit, s.coeff); }  // NOLINT(google-explicit-constructor)
    UnitSum(const Rational& c, const UnitTag& unit) { add(unit, c); }

    const std::map<UnitTag, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    /// Coefficient against `unit` (converted); the other classes are ignored.
    Rational coeff_in(const UnitTag& unit) const
    {
        auto [c, f] = canonicalize(unit);
        auto it = t_.find(c);
        return it == t_.end() ? Rational() : it->second / f;
    }

    /// Single-unit value; IncommensurableUnits if more than one class is present.
    UnitScalar as_scalar(const UnitTag& unit) const
    {
        auto [c, f] = canonicalize(unit);
        for (const auto& [tag, v] : t_)
            if (tag != c)
                fail(ErrorKind::IncommensurableUnits, "moment carries " + tag.str() + ", requested " + unit.str());
        return {coeff_in(unit), unit};
    }

    UnitSum& operator+=(const UnitSum& o)
    {
        for (const auto& [tag, v] : o.t_)
            add_canonical(tag, v);
        return *this;
    }
    UnitSum& operator-=(const UnitSum& o)
    {
        for (const auto& [tag, v] : o.t_)
            add_canonical(tag, -v);
        return *this;
    }
    friend UnitSum operator+(UnitSum a, const UnitSum& b) { return a += b; }
    friend UnitSum operator-(UnitSum a, const UnitSum& b) { return a -= b; }
    friend UnitSum operator-(UnitSum a)
    {
        for (auto& [tag, v] : a.t_)
            v = -v;
        return a;
    }
    friend UnitSum operator*(const Rational& s, UnitSum a)
    {
        if (s.is_zero())
            return {};
        for (auto& [tag, v] : a.t_)
            v *= s;
        return a;
    }
    friend UnitSum operator*(UnitSum a, const Rational& s) { return s * std::move(a); }
    friend bool operator==(const UnitSum&, const UnitSum&) = default;

    std::string str() const
    {
        if (t_.empty())
            return "0";
        std::string out;
        for (const auto& [tag, v] : t_) {
            if (!out.empty())
                out += " + ";
            out += UnitScalar{v, tag}.str();
        }
        return out;
    }

private:
    void add(const UnitTag& unit, const Rational& c)
    {
        if (c.is_zero())
            return;
        auto [canon, f] = canonicalize(unit);
        add_canonical(canon, c * f);
    }
    void add_canonical(const UnitTag& canon, const Rational& c)
    {
        auto [it, fresh] = t_.try_emplace(canon, c);
        if (!fresh)
            it->second += c;
        if (it->second.is_zero())
            t_.erase(it);
    }

    std::map<UnitTag, Rational> t_;
};

inline bool is_zero(const UnitSum& s) { return s.is_zero(); }

} // namespace mvop
