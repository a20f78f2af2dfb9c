#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diffop.hpp"
#include "linsolve.hpp"
#include "weights.hpp"

namespace mvop {

struct MopSequence {
    WeightSpec weight;
    MomentSeq mu;
    std::vector<PolyMat> polys;       // P_0 .. P_{n_max}, monic
    std::vector<Mat<UnitSum>> norms;  // <P_n, P_n>

    std::size_t size() const { return polys.empty() ? 0 : polys[0].rows(); }
    std::size_t n_max() const { return polys.size() - 1; }
};

/// <P, Q> = sum_{a,b} P_a mu_{a+b} Q_b^T for P = sum P_a x^a, Q = sum Q_b x^b.
inline Mat<UnitSum> inner_product(const PolyMat& p, const PolyMat& q, const MomentSeq& mu)
{
    if (mu.empty() || p.cols() != mu[0].rows() || q.cols() != mu[0].rows())
        fail(ErrorKind::DimensionMismatch, "inner product: polynomial columns must match the weight size");
    Mat<UnitSum> out(p.rows(), q.rows());
    const int dp = degree(p), dq = degree(q);
    if (dp < 0 || dq < 0)
        return out;
    if (static_cast<std::size_t>(dp + dq) >= mu.size())
        fail(ErrorKind::UnsupportedWeight, "not enough moments for degree " + std::to_string(dp + dq));
    std::vector<QMat> qt;
    for (int b = 0; b <= dq; ++b)
        qt.push_back(coeff(q, static_cast<std::size_t>(b)).transpose());
    for (int a = 0; a <= dp; ++a) {
        QMat pa = coeff(p, static_cast<std::size_t>(a));
        if (pa.is_zero())
            continue;
        for (int b = 0; b <= dq; ++b) {
            if (qt[b].is_zero())
                continue;
            out += pa * mu[a + b] * qt[b];
        }
    }
    return out;
}

inline Mat<UnitSum> inner_product(const PolyMat& p, const PolyMat& q, const WeightSpec& w)
{
    int d = std::max(degree(p), 0) + std::max(degree(q), 0);
    return inner_product(p, q, moments(w, static_cast<std::size_t>(d)));
}

namespace detail {

inline std::vector<UnitTag> unit_classes(const MomentSeq& mu)
{
    std::set<UnitTag> tags;
    for (const auto& m : mu)
        for (const auto& e : m.entries())
            for (const auto& [tag, v] : e.terms())
                tags.insert(tag);
    return {tags.begin(), tags.end()};
}

inline Rational part(const UnitSum& s, const UnitTag& canonical)
{
    auto it = s.terms().find(canonical);
    return it == s.terms().end() ? Rational() : it->second;
}

} // namespace detail

/// Monic P_n from the block Hankel system sum_k c_k mu_{k+j} = -mu_{n+j},
/// j < n. Each unit class contributes its own equations since the units are
/// treated as independent transcendentals.
inline MopSequence monic_mops_from_moments(WeightSpec w, MomentSeq mu, std::size_t n_max)
{
    if (mu.size() < 2 * n_max + 1)
        fail(ErrorKind::UnsupportedWeight, "need " + std::to_string(2 * n_max + 1) + " moments");
    const std::size_t nn = mu[0].rows();
    const auto tags = detail::unit_classes(mu);
    const PolyX x = PolyX::var();

    MopSequence out;
    out.weight = std::move(w);
    out.polys.push_back(PolyMat::identity(nn));
    for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t unknowns = n * nn;
        QMat a(tags.size() * unknowns, unknowns);
        QMat rhs(tags.size() * unknowns, nn);
        // transposed system: row (u, j, s) col (k, r): mu_{k+j}[u](r, s)
        for (std::size_t u = 0; u < tags.size(); ++u)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t s = 0; s < nn; ++s) {
                    std::size_t row = u * unknowns + j * nn + s;
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t r = 0; r < nn; ++r)
                            a(row, k * nn + r) = detail::part(mu[k + j](r, s), tags[u]);
                    for (std::size_t i = 0; i < nn; ++i)
                        rhs(row, i) = -detail::part(mu[n + j](i, s), tags[u]);
                }
        SolveResult sol = solve_exact(a, rhs);
        if (sol.status != SolveStatus::Unique)
            fail(ErrorKind::SingularHankel, "moment system of degree " + std::to_string(n) +
                                                (sol.status == SolveStatus::Inconsistent ? " is inconsistent"
                                                                                         : " is rank deficient"));
        PolyMat p = PolyMat::identity(nn).map([&](const PolyX& e) { return e * PolyX::monomial(n); });
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < nn; ++i)
                for (std::size_t r = 0; r < nn; ++r)
                    p(i, r) += PolyX::monomial(k, sol.x(k * nn + r, i));
        out.polys.push_back(std::move(p));
    }
    for (const auto& p : out.polys)
        out.norms.push_back(inner_product(p, p, mu));
    out.mu = std::move(mu);
    return out;
}

inline MopSequence monic_mops(const WeightSpec& w, std::size_t n_max)
{
    return monic_mops_from_moments(w, moments(w, 2 * n_max + 1), n_max);
}

struct RecursionCoeffs {
    std::vector<QMat> b;
    std::vector<QMat> c; // c[0] is zero
    bool residual_zero = true;
    bool inner_product_identities = true;
    std::optional<std::size_t> first_failure_n;
};

/// x P_n = P_{n+1} + B_n P_n + C_n P_{n-1}. B_n and C_n are read off the two
/// top coefficients of x P_n - P_{n+1}; the residual and the identities
/// B_n |P_n|^2 = <x P_n, P_n>, C_n |P_{n-1}|^2 = <x P_n, P_{n-1}> are checked.
inline RecursionCoeffs recursion_coeffs(const MopSequence& m)
{
    RecursionCoeffs rc;
    const std::size_t nn = m.size();
    const PolyMat x = PolyMat::identity(nn).map([](const PolyX& e) { return e * PolyX::var(); });
    for (std::size_t n = 0; n < m.n_max(); ++n) {
        const PolyMat xp = x * m.polys[n];
        PolyMat r = xp - m.polys[n + 1];
        QMat bn = coeff(r, n);
        r -= lift<XVar>(bn) * m.polys[n];
        QMat cn(nn, nn);
        if (n > 0) {
            cn = coeff(r, n - 1);
            r -= lift<XVar>(cn) * m.polys[n - 1];
        }
        bool ok = r.is_zero();
        rc.residual_zero = rc.residual_zero && ok;
        bool ids = bn * m.norms[n] == inner_product(xp, m.polys[n], m.mu);
        if (n > 0)
            ids = ids && cn * m.norms[n - 1] == inner_product(xp, m.polys[n - 1], m.mu);
        rc.inner_product_identities = rc.inner_product_identities && ids;
        if ((!ok || !ids) && !rc.first_failure_n)
            rc.first_failure_n = n;
        rc.b.push_back(std::move(bn));
        rc.c.push_back(std::move(cn));
    }
    return rc;
}

struct EigenfunctionReport {
    bool passed = true;
    std::optional<std::size_t> first_failure_n;
    PolyMat residual;
};

/// Checks P_n . D = Lambda_n(D) P_n for n = 0..n_max.
inline EigenfunctionReport check_eigenfunction(const MatDiffOp& d, const MopSequence& m)
{
    if (!d.is_square() || d.rows() != m.size())
        fail(ErrorKind::DimensionMismatch, "operator size does not match the weight");
    const EigMatN lam = eigenvalue_poly(d);
    EigenfunctionReport rep;
    for (std::size_t n = 0; n <= m.n_max(); ++n) {
        PolyMat lhs = apply(m.polys[n], d);
        PolyMat rhs = lift<XVar>(evaluate(lam, Rational(static_cast<long>(n)))) * m.polys[n];
        if (!(lhs == rhs)) {
            rep.passed = false;
            rep.first_failure_n = n;
            rep.residual = lhs - rhs;
            break;
        }
    }
    return rep;
}

inline int default_symmetry_degree(const MatDiffOp& d)
{
    int cd = 0;
    for (const auto& c : d.coeffs())
        cd = std::max(cd, degree(c));
    return std::max(d.order(), 0) + cd + 4;
}

/// Bounded check of <P . D, Q> = <P, Q . D> on P = x^a I, Q = x^b I with
/// a, b <= d_max; by bilinearity this covers every matrix monomial pair.
inline bool is_symmetric(const MatDiffOp& d, const WeightSpec& w, std::optional<int> d_max = std::nullopt)
{
    if (!d.is_square() || d.rows() != w.size())
        fail(ErrorKind::DimensionMismatch, "operator size does not match the weight");
    const int top = d_max.value_or(default_symmetry_degree(d));
    const std::size_t nn = w.size();
    std::vector<PolyMat> mono, image;
    int max_deg = 0;
    for (int a = 0; a <= top; ++a) {
        mono.push_back(PolyMat::identity(nn).map(
            [a](const PolyX& e) { return e * PolyX::monomial(static_cast<std::size_t>(a)); }));
        image.push_back(apply(mono.back(), d));
        max_deg = std::max(max_deg, degree(image.back()));
    }
    const MomentSeq mu = moments(w, static_cast<std::size_t>(max_deg + top));
    for (int a = 0; a <= top; ++a)
        for (int b = 0; b <= top; ++b)
            if (!(inner_product(image[a], mono[b], mu) == inner_product(mono[a], image[b], mu)))
                return false;
    return true;
}

} // namespace mvop
