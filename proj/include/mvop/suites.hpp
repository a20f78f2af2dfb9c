#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jacobi_example.hpp"
#include "mops.hpp"
#include "report.hpp"
#include "serialize.hpp"
#include "structure.hpp"
#include "weights.hpp"

namespace mvop {

struct Sample {
    Rational alpha, beta, v;
    std::string label() const { return "(" + alpha.str() + "," + beta.str() + "," + v.str() + ")"; }
};

inline std::vector<Sample> default_samples()
{
    return {{Rational(0), Rational(0), Rational(1)},
            {Rational(1), Rational(1, 2), Rational(2)},
            {Rational(2), Rational(1), Rational(5, 2)}};
}

namespace detail {

inline void add_decomposition(Report& rep, const JacobiExampleBundle& b, const std::string& name, const MatDiffOp& op,
                              const std::map<std::string, ZPoly>& expected = {})
{
    try {
        const auto d = decompose_in_module_basis(b, op);
        bool ok = d.residual_zero && (expected.empty() || d.coeffs == expected);
        std::string w;
        for (const auto& [label, zp] : d.coeffs)
            for (const auto& [st, c] : zp)
                w += (w.empty() ? "" : " + ") + c.str() + "*Z1^" + std::to_string(st.first) + "Z2^" +
                     std::to_string(st.second) + "*" + label;
        rep.add("module decomposition of " + name, ok, w);
    } catch (const Error& e) {
        rep.add("module decomposition of " + name, false, e.what());
    }
}

inline std::string mat_str(const Mat<UnitSum>& m) { return mat_to_json(m).dump(); }

} // namespace detail

/// Cofactor A for the factorized D over the diagonal partner weight, and the
/// quartic p(n) of Lambda_n(A D).
inline Report cofactor_suite(const JacobiExampleBundle& b)
{
    Report rep;
    const CofactorResult cr = centralizing_cofactor(b.op("D"), b.w_tilde);
    const EigMat lad = eigenvalue_poly(compose(cr.cofactor, b.op("D")));
    const PolyN p = expected_quartic(b);
    rep.add("cofactor is diag(delta - c2, delta - c1)", cr.cofactor == b.op("A"), cr.cofactor.str());
    rep.add("Lambda_n(A D) = p(n) I for the computed cofactor",
            lad == EigMat::identity(2).map([&](const PolyN& e) { return e * p; }), to_string(lad));
    rep.add("one Darboux class with p equal to the quartic", cr.p_n.size() == 1 && cr.p_n[0] == p,
            cr.p_n.empty() ? "" : cr.p_n[0].str());
    const PolyN lam_poly = PolyN{-b.c1(), Rational(1)} * PolyN{-b.c2(), Rational(1)};
    rep.add("p written in lambda is (lambda - c1)(lambda - c2)", cr.p_lambda.size() == 1 && cr.p_lambda[0] == lam_poly,
            cr.p_lambda.empty() ? "" : cr.p_lambda[0].str());
    rep.add("A D is central", center_check(compose(cr.cofactor, b.op("D")), [&] {
                GeneratorSet g;
                for (const char* name : {"D1", "D2", "D3", "D4"})
                    g.add(name, b.op(name));
                return g;
            }()));
    return rep;
}

inline Report orthogonality_suite(const JacobiExampleBundle& b, std::size_t n_max)
{
    Report rep;
    const OrthogonalFamily of = orthogonal_family(b, n_max);
    rep.add("Q_n = J_n . V pairwise orthogonal for n <= " + std::to_string(n_max), of.orthogonal,
            of.first_failure ? "first failure (n,m) = (" + std::to_string(of.first_failure->first) + "," +
                                   std::to_string(of.first_failure->second) + ")"
                             : "",
            of.first_failure ? std::optional<std::size_t>(of.first_failure->first) : std::nullopt);
    rep.add("leading coefficient of Q_n is Lambda_n(V)", of.leading_is_lambda);
    rep.add("deg Q_n = n", of.degrees_exact);
    const QMat q0 = coeff(of.q[0], 0);
    const Rational s = b.s();
    rep.add("Q_0 = diag((v+2+s)/2, (-v+2+s)/2)",
            q0 == QMat{{(b.v + 2 + s) / 2, Rational()}, {Rational(), (-b.v + 2 + s) / 2}}, to_string(q0));
    return rep;
}

/// Everything the irreducible 2x2 Jacobi example supports, at one sample.
inline Report jacobi_suite(const Sample& smp, std::size_t n_max)
{
    Report rep;
    const JacobiExampleBundle b = build_bundle(smp.alpha, smp.beta, smp.v);
    const std::size_t n_darboux = std::max<std::size_t>(n_max, 8);
    rep.merge(verify_factorization(b, n_darboux), "factorization: ");
    rep.merge(verify_generators_and_relations(b, n_max), "generators: ");
    rep.merge(verify_center(b), "center: ");
    rep.merge(cofactor_suite(b), "cofactor: ");
    rep.merge(orthogonality_suite(b, n_max), "orthogonality: ");

    Report dec;
    detail::add_decomposition(dec, b, "D1", b.op("D1"), {{"D1", {{{0, 0}, Rational(1)}}}});
    detail::add_decomposition(dec, b, "Z1", b.op("Z1"), {{"I", {{{1, 0}, Rational(1)}}}});
    detail::add_decomposition(dec, b, "D5 D5 D2", compose_all({b.op("D5"), b.op("D5"), b.op("D2")}));
    detail::add_decomposition(dec, b, "Z2 D3 + D2 D3 - 2 I",
                              compose(b.op("Z2"), b.op("D3")) + compose(b.op("D2"), b.op("D3")) -
                                  MatDiffOp::constant(QMat::identity(2) * Rational(2)));
    rep.merge(dec, "module: ");
    for (const auto& e : b.errata)
        rep.notes.push_back("closed form corrected: " + e);
    if (n_max < 10)
        rep.notes.push_back("reduced depth: orthogonality and eigenfunction checks run to n = " + std::to_string(n_max));
    return rep;
}

inline Report darboux_suite(const Sample& smp, std::size_t n_max)
{
    const JacobiExampleBundle b = build_bundle(smp.alpha, smp.beta, smp.v);
    return verify_factorization(b, n_max);
}

inline Report center_suite(const Sample& smp)
{
    const JacobiExampleBundle b = build_bundle(smp.alpha, smp.beta, smp.v);
    Report rep;
    rep.merge(verify_center(b));
    rep.merge(cofactor_suite(b), "cofactor: ");
    return rep;
}

// ---------------------------------------------------------------- direct sums

/// Generators, ladders, T-eigenvalues and the center of a direct sum of
/// classical weights (optionally conjugated by a constant matrix).
inline Report directsum_suite(const WeightSpec& w, std::size_t n_max, std::optional<int> d_max = std::nullopt)
{
    Report rep;
    const auto view = detail::direct_sum_view(w);
    const auto& comps = view.comps;
    const std::size_t n = comps.size();

    const GeneratorSet gens = directsum_generators(w);
    std::size_t linked = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            linked += i != j && darboux_equivalent(comps[i], comps[j]);
    rep.add("generator inventory: 2N + #linked ordered pairs = " + std::to_string(2 * n + linked),
            gens.size() == 2 * n + linked, "got " + std::to_string(gens.size()));

    const MopSequence m = monic_mops(w, n_max);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const auto r = check_eigenfunction(gens.ops[g], m);
        rep.add("generator " + gens.labels[g] + " in D(W)", r.passed, r.passed ? "" : to_string(r.residual),
                r.first_failure_n);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::string label = "delta_" + std::to_string(j + 1);
        rep.add(label + " is W-symmetric", is_symmetric(gens.at(label), w, d_max));
    }
    rep.add("commutativity matches the absence of linked pairs", commutativity_probe(gens) == (linked == 0));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!darboux_equivalent(comps[i], comps[j]))
                continue;
            const std::string ij = std::to_string(i + 1) + "," + std::to_string(j + 1);
            const MatDiffOp t = t_operator(comps[i], comps[j]);
            const PolyN te = t_eigenvalue(comps[i], comps[j]);
            rep.add("t_eigenvalue(" + ij + ") = Lambda(t_operator)", eigenvalue_poly(t)(0, 0) == te, te.str());
            const MopSequence pi = monic_mops(comps[i], n_max), pj = monic_mops(comps[j], n_max);
            bool ok = true;
            std::optional<std::size_t> bad;
            for (std::size_t k = 0; k <= n_max && ok; ++k)
                if (!(apply(pi.polys[k], t) == pj.polys[k] * te(Rational(static_cast<long>(k))))) {
                    ok = false;
                    bad = k;
                }
            rep.add("T(" + ij + ") maps monic polynomials onto monic polynomials", ok, {}, bad);
            for (std::size_t r = 0; r < n; ++r) {
                if (!darboux_equivalent(comps[i], comps[r]))
                    continue;
                const std::string name = "ladder F_" + std::to_string(i + 1) + std::to_string(r + 1) + " F_" +
                                         std::to_string(r + 1) + std::to_string(j + 1);
                try {
                    const LadderRelation lr = ladder_relation(comps, i, r, j);
                    rep.add(name + " = q(delta) F_" + std::to_string(i + 1) + std::to_string(j + 1), lr.applicable && lr.holds,
                            "q = " + lr.q_lambda.str());
                } catch (const Error& e) {
                    rep.add(name, false, e.what());
                }
            }
        }

    const DirectSumCenter ctr = directsum_center(w);
    rep.add("center has one Delta block per Darboux class", ctr.classes.classes.size() ==
                                                                  static_cast<std::size_t>(std::count_if(
                                                                      ctr.gens.labels.begin(), ctr.gens.labels.end(),
                                                                      [](const std::string& l) { return l.rfind("Delta_", 0) == 0; })),
            std::to_string(ctr.classes.classes.size()) + " classes");
    for (std::size_t c = 0; c < ctr.gens.size(); ++c) {
        const MatDiffOp& z = ctr.gens.ops[c];
        bool commutes = true;
        for (const auto& g : gens.ops)
            commutes = commutes && compose(z, g) == compose(g, z);
        rep.add("center generator " + ctr.gens.labels[c] + " passes center_check", center_check(z, gens));
        rep.add("center generator " + ctr.gens.labels[c] + " commutes with every generator", commutes);
    }
    rep.notes.push_back("components: " + [&] {
        std::string s;
        for (const auto& c : comps)
            s += (s.empty() ? "" : " + ") + c.str();
        return s;
    }());
    return rep;
}

// ---------------------------------------------------------------- mops

struct MopsResult {
    MopSequence mops;
    RecursionCoeffs rec;
    Report report;
};

inline MopsResult mops_suite(const WeightSpec& w, std::size_t n_max)
{
    MopsResult out;
    out.mops = w.get<MomentWeight>() ? monic_mops_from_moments(w, w.get<MomentWeight>()->moments, n_max)
                                     : monic_mops(w, n_max);
    out.rec = recursion_coeffs(out.mops);
    Report& rep = out.report;
    rep.add("three-term recursion residual is zero", out.rec.residual_zero, {}, out.rec.first_failure_n);
    rep.add("recursion coefficients match inner products", out.rec.inner_product_identities, {}, out.rec.first_failure_n);
    bool orth = true;
    std::optional<std::size_t> bad;
    for (std::size_t a = 1; a <= n_max && orth; ++a)
        for (std::size_t c = 0; c < a; ++c)
            if (!inner_product(out.mops.polys[a], out.mops.polys[c], out.mops.mu).is_zero()) {
                orth = false;
                bad = a;
                break;
            }
    rep.add("monic polynomials pairwise orthogonal", orth, {}, bad);
    if (const auto* mj = w.get<MatrixJacobi>()) {
        const JacobiExampleBundle b = build_bundle(mj->alpha, mj->beta, mj->v);
        const OrthogonalFamily of = orthogonal_family(b, n_max);
        bool same = true;
        for (std::size_t k = 0; k <= n_max; ++k) {
            const QMat lead = coeff(of.q[k], k);
            same = same && of.q[k] == lift<XVar>(lead) * out.mops.polys[k];
        }
        rep.add("cross-check: J_n . V = Lambda_n(V) P_n", same);
    }
    return out;
}

} // namespace mvop
