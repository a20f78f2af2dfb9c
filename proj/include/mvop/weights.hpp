#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "diffop.hpp"
#include "matrix.hpp"
#include "units.hpp"

namespace mvop {

/// Shifted Hermite e^{-x^2+2bx}, Laguerre x^a e^{-x}, Jacobi (1-x)^a (1+x)^b.
/// For Hermite the shift is stored in `a`.
struct ClassicalWeight {
    ScalarFamily family = ScalarFamily::Jacobi;
    Rational a;
    Rational b;

    static ClassicalWeight hermite(Rational shift) { return {ScalarFamily::Hermite, std::move(shift), Rational()}; }
    static ClassicalWeight laguerre(Rational alpha)
    {
        ClassicalWeight w{ScalarFamily::Laguerre, std::move(alpha), Rational()};
        w.validate();
        return w;
    }
    static ClassicalWeight jacobi(Rational alpha, Rational beta)
    {
        ClassicalWeight w{ScalarFamily::Jacobi, std::move(alpha), std::move(beta)};
        w.validate();
        return w;
    }

    void validate() const
    {
        if (family != ScalarFamily::Hermite && a <= Rational(-1))
            fail(ErrorKind::ParameterConstraintViolated, "alpha must exceed -1, got " + a.str());
        if (family == ScalarFamily::Jacobi && b <= Rational(-1))
            fail(ErrorKind::ParameterConstraintViolated, "beta must exceed -1, got " + b.str());
    }

    UnitTag unit() const
    {
        switch (family) {
        case ScalarFamily::Hermite: return UnitTag::hermite(a);
        case ScalarFamily::Laguerre: return UnitTag::laguerre(a);
        case ScalarFamily::Jacobi: return UnitTag::jacobi(a, b);
        }
        return {};
    }

    std::string str() const
    {
        switch (family) {
        case ScalarFamily::Hermite: return "hermite(b=" + a.str() + ")";
        case ScalarFamily::Laguerre: return "laguerre(" + a.str() + ")";
        case ScalarFamily::Jacobi: return "jacobi(" + a.str() + "," + b.str() + ")";
        }
        return "?";
    }

    friend bool operator==(const ClassicalWeight&, const ClassicalWeight&) = default;
};

using MomentSeq = std::vector<Mat<UnitSum>>;

struct WeightSpec;

struct DirectSum {
    std::vector<WeightSpec> parts;
};

/// M W M^T for a constant nonsingular M.
struct Conjugated {
    QMat m;
    std::shared_ptr<const WeightSpec> inner;
};

/// (1-x)^a (1+x)^b (W2 (1-x)^2/4 + W1 (1-x)/2 + W0), 2x2.
struct MatrixJacobi {
    Rational alpha;
    Rational beta;
    Rational v;
};

/// Weight known only through user-supplied moments.
struct MomentWeight {
    MomentSeq moments;
};

struct WeightSpec {
    std::variant<ClassicalWeight, DirectSum, Conjugated, MatrixJacobi, MomentWeight> v;

    WeightSpec() = default;
    WeightSpec(ClassicalWeight w) : v(std::move(w)) {} // NOLINT(google-explicit-constructor)
    WeightSpec(DirectSum w) : v(std::move(w)) {}       // NOLINT(google-explicit-constructor)
    WeightSpec(Conjugated w) : v(std::move(w)) {}      // NOLINT(google-explicit-constructor)
    WeightSpec(MatrixJacobi w) : v(std::move(w)) {}    // NOLINT(google-explicit-constructor)
    WeightSpec(MomentWeight w) : v(std::move(w)) {}    // NOLINT(google-explicit-constructor)

    static WeightSpec direct_sum(std::vector<WeightSpec> parts)
    {
        if (parts.empty())
            fail(ErrorKind::UnsupportedWeight, "empty direct sum");
        return DirectSum{std::move(parts)};
    }
    static WeightSpec conjugated(QMat m, WeightSpec inner)
    {
        if (!m.is_square())
            fail(ErrorKind::DimensionMismatch, "conjugating matrix must be square");
        if (determinant(m).is_zero())
            fail(ErrorKind::SingularMatrix, "conjugating matrix is singular");
        if (m.rows() != inner.size())
            fail(ErrorKind::DimensionMismatch, "conjugating matrix does not match the inner weight");
        return Conjugated{std::move(m), std::make_shared<const WeightSpec>(std::move(inner))};
    }

    std::size_t size() const
    {
        struct {
            std::size_t operator()(const ClassicalWeight&) const { return 1; }
            std::size_t operator()(const DirectSum& d) const
            {
                std::size_t n = 0;
                for (const auto& p : d.parts)
                    n += p.size();
                return n;
            }
            std::size_t operator()(const Conjugated& c) const { return c.m.rows(); }
            std::size_t operator()(const MatrixJacobi&) const { return 2; }
            std::size_t operator()(const MomentWeight& m) const { return m.moments.empty() ? 0 : m.moments[0].rows(); }
        } vis;
        return std::visit(vis, v);
    }

    template <class T>
    const T* get() const
    {
        return std::get_if<T>(&v);
    }
};

// ---------------------------------------------------------------- classical

inline MatDiffOp classical_delta(const ClassicalWeight& w)
{
    const PolyX x = PolyX::var();
    switch (w.family) {
    case ScalarFamily::Hermite:
        return MatDiffOp::d(2) + MatDiffOp::d(1, PolyX{w.a * 2, Rational(-2)});
    case ScalarFamily::Laguerre:
        return MatDiffOp::d(2, x) + MatDiffOp::d(1, PolyX{w.a + 1, Rational(-1)});
    case ScalarFamily::Jacobi:
        return MatDiffOp::d(2, PolyX{Rational(1), Rational(0), Rational(-1)}) +
               MatDiffOp::d(1, PolyX{w.b - w.a, -(w.a + w.b + 2)});
    }
    return {};
}

inline PolyN classical_eigenvalue(const ClassicalWeight& w)
{
    switch (w.family) {
    case ScalarFamily::Hermite: return PolyN{Rational(0), Rational(-2)};
    case ScalarFamily::Laguerre: return PolyN{Rational(0), Rational(-1)};
    case ScalarFamily::Jacobi: return PolyN{Rational(0), -(w.a + w.b + 1), Rational(-1)};
    }
    return {};
}

inline bool darboux_equivalent(const ClassicalWeight& w, const ClassicalWeight& u)
{
    if (w.family != u.family)
        return false;
    switch (w.family) {
    case ScalarFamily::Hermite: return w.a == u.a;
    case ScalarFamily::Laguerre: return (w.a - u.a).is_integer();
    case ScalarFamily::Jacobi: return w.a + w.b == u.a + u.b && (w.a - u.a).is_integer();
    }
    return false;
}

namespace detail {

inline long integer_shift(const Rational& d)
{
    if (!d.numerator().fits_slong_p())
        fail(ErrorKind::InvalidArgument, "parameter shift out of range");
    return d.numerator().get_si();
}

} // namespace detail

/// Generator T of the module D(w, u): every operator mapping the monic
/// orthogonal polynomials of w onto multiples of those of u is T p(delta_u).
inline MatDiffOp t_operator(const ClassicalWeight& w, const ClassicalWeight& u)
{
    if (w.family != u.family)
        fail(ErrorKind::MixedFamilies, w.str() + " vs " + u.str());
    if (w == u)
        return MatDiffOp::identity(1);
    if (!darboux_equivalent(w, u))
        return MatDiffOp(1, 1);
    const PolyX x = PolyX::var();
    MatDiffOp t = MatDiffOp::identity(1);
    switch (w.family) {
    case ScalarFamily::Hermite:
        break; // equal shifts were handled above
    case ScalarFamily::Laguerre: {
        long k = detail::integer_shift(u.a - w.a);
        if (k > 0) {
            t = pow(MatDiffOp::d(1, PolyX(-1)) + MatDiffOp::identity(1), static_cast<unsigned>(k));
        } else {
            for (long j = -k; j >= 1; --j)
                t = compose(t, MatDiffOp::d(1, x) + MatDiffOp::scalar(PolyX(u.a + j)));
        }
        break;
    }
    case ScalarFamily::Jacobi: {
        long k = detail::integer_shift(u.a - w.a);
        if (k > 0) {
            // (a, b) -> (a+k, b-k): prod_j (d(1+x) + b - k + j)
            for (long j = k; j >= 1; --j)
                t = compose(t, MatDiffOp::d(1, PolyX{Rational(1), Rational(1)}) + MatDiffOp::scalar(PolyX(w.b - k + j)));
        } else {
            // (a, b) -> (a-K, b+K): prod_j (d(x-1) + a - K + j)
            for (long j = -k; j >= 1; --j)
                t = compose(t, MatDiffOp::d(1, PolyX{Rational(-1), Rational(1)}) + MatDiffOp::scalar(PolyX(u.a + j)));
        }
        break;
    }
    }
    return t;
}

/// Lambda_n(T_{w,u}) from the Gamma-ratio closed forms.
inline PolyN t_eigenvalue(const ClassicalWeight& w, const ClassicalWeight& u)
{
    if (w.family != u.family)
        fail(ErrorKind::MixedFamilies, w.str() + " vs " + u.str());
    if (w == u)
        return PolyN(1);
    if (!darboux_equivalent(w, u))
        return PolyN();
    auto rising = [](const Rational& base, long k) {
        // (n + base + 1) ... (n + base + k)
        PolyN out(1);
        for (long j = 1; j <= k; ++j)
            out *= PolyN{base + j, Rational(1)};
        return out;
    };
    switch (w.family) {
    case ScalarFamily::Hermite: return PolyN(1);
    case ScalarFamily::Laguerre: {
        long k = detail::integer_shift(u.a - w.a);
        return k > 0 ? PolyN(1) : rising(u.a, -k);
    }
    case ScalarFamily::Jacobi: {
        long k = detail::integer_shift(u.a - w.a);
        return k > 0 ? rising(u.b, k) : rising(u.a, -k);
    }
    }
    return {};
}

// ---------------------------------------------------------------- moments

namespace detail {

inline std::vector<Rational> classical_moment_coeffs(const ClassicalWeight& w, std::size_t k_max)
{
    std::vector<Rational> mu(k_max + 1);
    switch (w.family) {
    case ScalarFamily::Laguerre: {
        Rational acc(1);
        for (std::size_t k = 0; k <= k_max; ++k) {
            mu[k] = acc;
            acc *= w.a + Rational(static_cast<long>(k)) + 1;
        }
        break;
    }
    case ScalarFamily::Jacobi: {
        // int (1-x)^a (1+x)^(b+j) = U * 2^j prod_{i<=j} (b+i)/(a+b+1+i)
        std::vector<Rational> e(k_max + 1);
        e[0] = 1;
        for (std::size_t j = 1; j <= k_max; ++j) {
            Rational i(static_cast<long>(j));
            e[j] = e[j - 1] * 2 * (w.b + i) / (w.a + w.b + 1 + i);
        }
        // x^k = ((1+x) - 1)^k
        for (std::size_t k = 0; k <= k_max; ++k) {
            Rational s;
            for (std::size_t j = 0; j <= k; ++j) {
                Rational t = binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)) * e[j];
                s += ((k - j) % 2) ? -t : t;
            }
            mu[k] = s;
        }
        break;
    }
    case ScalarFamily::Hermite: {
        // central moments of e^{-t^2}/sqrt(pi): (j-1)!!/2^(j/2) for even j
        std::vector<Rational> c(k_max + 1);
        c[0] = 1;
        for (std::size_t j = 2; j <= k_max; j += 2)
            c[j] = c[j - 2] * Rational(static_cast<long>(j - 1), 2);
        for (std::size_t k = 0; k <= k_max; ++k) {
            Rational s;
            for (std::size_t j = 0; j <= k; j += 2)
                s += binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)) *
                     pow(w.a, static_cast<unsigned>(k - j)) * c[j];
            mu[k] = s;
        }
        break;
    }
    }
    return mu;
}

inline void check_matrix_jacobi(const MatrixJacobi& p)
{
    Rational lo = abs(p.alpha - p.beta), mid = abs(p.v), hi = p.alpha + p.beta + 2;
    if (!(lo < mid && mid < hi))
        fail(ErrorKind::ParameterConstraintViolated, "need |alpha-beta| < |v| < alpha+beta+2, got alpha=" +
                                                         p.alpha.str() + " beta=" + p.beta.str() + " v=" + p.v.str());
}

} // namespace detail

struct MatrixJacobiCoeffs {
    QMat w2, w1, w0;
};

inline MatrixJacobiCoeffs matrix_jacobi_coeffs(const MatrixJacobi& p)
{
    detail::check_matrix_jacobi(p);
    const Rational &a = p.alpha, &b = p.beta, &v = p.v;
    const Rational s = a + b;
    MatrixJacobiCoeffs c;
    c.w2 = QMat{{v * (v + 2 + s) / (v + a - b), Rational()}, {Rational(), v * (-v + 2 + s) / (v - a + b)}};
    c.w1 = QMat{{-(v + s + 2), s + 2}, {s + 2, -(-v + s + 2)}};
    c.w0 = QMat{{a + 1, -a - 1}, {-a - 1, a + 1}};
    return c;
}

/// The polynomial factor W2 (1-x)^2/4 + W1 (1-x)/2 + W0.
inline PolyMat matrix_jacobi_poly(const MatrixJacobi& p)
{
    auto c = matrix_jacobi_coeffs(p);
    const PolyX t2{Rational(1, 4), Rational(-1, 2), Rational(1, 4)};
    const PolyX t1{Rational(1, 2), Rational(-1, 2)};
    auto scale = [](const QMat& m, const PolyX& q) { return m.map([&](const Rational& r) { return q * r; }); };
    return scale(c.w2, t2) + scale(c.w1, t1) + lift<XVar>(c.w0);
}

namespace detail {

inline Mat<UnitSum> unit_mat(const QMat& m, const UnitTag& u)
{
    return m.map([&](const Rational& r) { return UnitSum(r, u); });
}

inline Mat<UnitSum> block_diag(const std::vector<Mat<UnitSum>>& blocks)
{
    std::size_t n = 0;
    for (const auto& b : blocks)
        n += b.rows();
    Mat<UnitSum> out(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return out;
}

} // namespace detail

/// mu_k = int x^k W(x) dx for k = 0..k_max, exactly, in symbolic units.
inline MomentSeq moments(const WeightSpec& w, std::size_t k_max)
{
    MomentSeq out;
    if (const auto* c = w.get<ClassicalWeight>()) {
        c->validate();
        for (const auto& m : detail::classical_moment_coeffs(*c, k_max))
            out.push_back(Mat<UnitSum>{{UnitSum(m, c->unit())}});
    } else if (const auto* d = w.get<DirectSum>()) {
        if (d->parts.empty())
            fail(ErrorKind::UnsupportedWeight, "empty direct sum");
        std::vector<MomentSeq> parts;
        for (const auto& p : d->parts)
            parts.push_back(moments(p, k_max));
        for (std::size_t k = 0; k <= k_max; ++k) {
            std::vector<Mat<UnitSum>> blocks;
            for (const auto& p : parts)
                blocks.push_back(p[k]);
            out.push_back(detail::block_diag(blocks));
        }
    } else if (const auto* cj = w.get<Conjugated>()) {
        const QMat mt = cj->m.transpose();
        for (const auto& mu : moments(*cj->inner, k_max))
            out.push_back(cj->m * mu * mt);
    } else if (const auto* mj = w.get<MatrixJacobi>()) {
        const PolyMat r = matrix_jacobi_poly(*mj);
        const int dr = degree(r);
        const ClassicalWeight base = ClassicalWeight::jacobi(mj->alpha, mj->beta);
        const auto scalar = detail::classical_moment_coeffs(base, k_max + static_cast<std::size_t>(dr));
        for (std::size_t k = 0; k <= k_max; ++k) {
            QMat acc(2, 2);
            for (int j = 0; j <= dr; ++j)
                acc += coeff(r, static_cast<std::size_t>(j)) * scalar[k + static_cast<std::size_t>(j)];
            out.push_back(detail::unit_mat(acc, base.unit()));
        }
    } else if (const auto* mw = w.get<MomentWeight>()) {
        if (mw->moments.size() <= k_max)
            fail(ErrorKind::UnsupportedWeight, "moment file supplies " + std::to_string(mw->moments.size()) +
                                                   " moments, " + std::to_string(k_max + 1) + " needed");
        out.assign(mw->moments.begin(), mw->moments.begin() + static_cast<long>(k_max) + 1);
    }
    return out;
}

/// Symmetry of every moment matrix and a nonzero leading moment; used when
/// ingesting user moment files.
inline void validate_moments(const MomentSeq& mu)
{
    if (mu.empty())
        fail(ErrorKind::InvalidArgument, "no moments supplied");
    const std::size_t n = mu[0].rows();
    for (std::size_t k = 0; k < mu.size(); ++k) {
        if (mu[k].rows() != n || mu[k].cols() != n)
            fail(ErrorKind::DimensionMismatch, "moment " + std::to_string(k) + " has the wrong shape");
        if (!(mu[k] == mu[k].transpose()))
            fail(ErrorKind::InvalidArgument, "moment " + std::to_string(k) + " is not symmetric");
    }
}

// ---------------------------------------------------------------- weight form

/// W as scalar classical factor times polynomial matrix. Direct sums are
/// rebased on the componentwise smallest parameters, which only works inside
/// one family with integer parameter differences (or equal Hermite shifts).
inline WeightForm weight_form(const WeightSpec& w)
{
    if (const auto* c = w.get<ClassicalWeight>())
        return {c->family, c->a, c->b, PolyMat::identity(1)};
    if (const auto* mj = w.get<MatrixJacobi>())
        return {ScalarFamily::Jacobi, mj->alpha, mj->beta, matrix_jacobi_poly(*mj)};
    if (const auto* cj = w.get<Conjugated>()) {
        WeightForm f = weight_form(*cj->inner);
        PolyMat m = lift<XVar>(cj->m);
        f.poly = m * f.poly * m.transpose();
        return f;
    }
    if (const auto* d = w.get<DirectSum>()) {
        if (d->parts.empty())
            fail(ErrorKind::UnsupportedWeight, "empty direct sum");
        std::vector<WeightForm> parts;
        for (const auto& p : d->parts)
            parts.push_back(weight_form(p));
        WeightForm base = parts[0];
        for (const auto& p : parts) {
            if (p.family != base.family)
                fail(ErrorKind::MixedFamilies, "direct sum mixes " + to_string(p.family) + " and " +
                                                   to_string(base.family));
            base.a = std::min(base.a, p.a);
            base.b = std::min(base.b, p.b);
        }
        std::size_t n = 0;
        for (const auto& p : parts)
            n += p.size();
        base.poly = PolyMat(n, n);
        std::size_t off = 0;
        for (const auto& p : parts) {
            RatFunc r = detail::scalar_ratio(p, base);
            if (!r.is_polynomial())
                fail(ErrorKind::UnsupportedWeight, "direct sum components are not rationally related");
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = 0; j < p.size(); ++j)
                    base.poly(off + i, off + j) = r.num() * p.poly(i, j);
            off += p.size();
        }
        return base;
    }
    fail(ErrorKind::UnsupportedWeight, "weight given only by moments has no closed form");
}

/// Classical components of a direct sum, flattened left to right.
inline std::vector<ClassicalWeight> classical_components(const WeightSpec& w)
{
    std::vector<ClassicalWeight> out;
    if (const auto* c = w.get<ClassicalWeight>()) {
        out.push_back(*c);
    } else if (const auto* d = w.get<DirectSum>()) {
        for (const auto& p : d->parts) {
            auto sub = classical_components(p);
            out.insert(out.end(), sub.begin(), sub.end());
        }
    } else {
        fail(ErrorKind::UnsupportedWeight, "expected a direct sum of classical weights");
    }
    if (out.empty())
        fail(ErrorKind::UnsupportedWeight, "empty direct sum");
    for (const auto& c : out)
        if (c.family != out[0].family)
            fail(ErrorKind::UnsupportedWeight, "direct sum components must share a family");
    return out;
}

} // namespace mvop
