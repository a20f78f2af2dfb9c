#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffop.hpp"
#include "mops.hpp"
#include "weights.hpp"

namespace mvop {

using EigMat = EigMatN;

struct GeneratorSet {
    std::vector<MatDiffOp> ops;
    std::vector<std::string> labels;

    void add(std::string label, MatDiffOp op)
    {
        for (const auto& l : labels)
            if (l == label)
                fail(ErrorKind::InvalidArgument, "duplicate generator label " + label);
        if (!ops.empty() && (op.rows() != ops[0].rows() || op.cols() != ops[0].cols()))
            fail(ErrorKind::DimensionMismatch, "generator " + label + " has a different size");
        labels.push_back(std::move(label));
        ops.push_back(std::move(op));
    }
    std::size_t size() const { return ops.size(); }
    const MatDiffOp& at(const std::string& label) const
    {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label)
                return ops[i];
        fail(ErrorKind::InvalidArgument, "no generator labelled " + label);
    }
};

inline EigMat eig_commutator(const EigMat& a, const EigMat& b)
{
    if (!a.is_square() || a.rows() != b.rows() || !b.is_square())
        fail(ErrorKind::DimensionMismatch, "commutator of differently sized matrices");
    return a * b - b * a;
}

inline bool center_check(const MatDiffOp& d, const GeneratorSet& gens)
{
    const EigMat ld = eigenvalue_poly(d);
    for (const auto& g : gens.ops)
        if (!eig_commutator(ld, eigenvalue_poly(g)).is_zero())
            return false;
    return true;
}

inline bool commutativity_probe(const GeneratorSet& gens)
{
    std::vector<EigMat> lam;
    for (const auto& g : gens.ops)
        lam.push_back(eigenvalue_poly(g));
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j)
            if (!eig_commutator(lam[i], lam[j]).is_zero())
                return false;
    return true;
}

/// Coefficientwise M F M^{-1}: carries D(W0) onto D(M W0 M^T).
inline MatDiffOp conjugate_op(const MatDiffOp& d, const QMat& m)
{
    const PolyMat ml = lift<XVar>(m);
    const PolyMat mi = lift<XVar>(inverse(m));
    return d.map_coeffs([&](const PolyMat& f) { return ml * f * mi; });
}

// ---------------------------------------------------------------- Q[n] -> Q[lambda]

/// Rewrites q(n) as p(lambda) with lambda = Lambda_n(delta_w), so that the
/// operator p(delta_w) has eigenvalue q. Throws NotRepresentable when q is
/// outside Q[lambda] (only possible for Jacobi, where lambda is quadratic).
inline PolyN rewrite_in_delta(const PolyN& q, const ClassicalWeight& w)
{
    switch (w.family) {
    case ScalarFamily::Hermite:
        return q.compose(PolyN{Rational(0), Rational(-1, 2)});
    case ScalarFamily::Laguerre:
        return q.compose(PolyN{Rational(0), Rational(-1)});
    case ScalarFamily::Jacobi: {
        const PolyN m{Rational(0), w.a + w.b + 1, Rational(1)}; // n(n+a+b+1) = -lambda
        PolyN rest = q;
        std::vector<Rational> pm;
        while (rest.degree() > 0) {
            if (rest.degree() % 2)
                fail(ErrorKind::NotRepresentable, q.str() + " is not a polynomial in n(n+" + (w.a + w.b + 1).str() + ")");
            const auto d = static_cast<std::size_t>(rest.degree() / 2);
            if (pm.size() <= d)
                pm.resize(d + 1);
            pm[d] = rest.leading();
            rest -= pow(m, static_cast<unsigned>(d)) * rest.leading();
        }
        if (pm.empty())
            pm.resize(1);
        pm[0] = rest.coeff(0);
        return PolyN(std::move(pm)).compose(PolyN{Rational(0), Rational(-1)});
    }
    }
    return {};
}

/// p(delta) for a scalar delta, as a 1x1 operator.
inline MatDiffOp poly_of_op(const PolyN& p, const MatDiffOp& delta)
{
    MatDiffOp out(1, 1);
    MatDiffOp power = MatDiffOp::identity(1);
    for (int k = 0; k <= p.degree(); ++k) {
        if (k > 0)
            power = compose(power, delta);
        if (!p.coeff(k).is_zero())
            out += p.coeff(k) * power;
    }
    return out;
}

// ---------------------------------------------------------------- direct sums

namespace detail {

struct DirectSumView {
    std::vector<ClassicalWeight> comps;
    std::optional<QMat> conj; // W = M (w_1 + ... + w_N) M^T
};

inline DirectSumView direct_sum_view(const WeightSpec& w)
{
    if (const auto* c = w.get<Conjugated>()) {
        DirectSumView v = direct_sum_view(*c->inner);
        v.conj = v.conj ? c->m * *v.conj : c->m;
        return v;
    }
    return {classical_components(w), std::nullopt};
}

inline MatDiffOp finish(const MatDiffOp& d, const DirectSumView& v)
{
    return v.conj ? conjugate_op(d, *v.conj) : d;
}

} // namespace detail

struct DarbouxClasses {
    std::vector<std::vector<std::size_t>> classes; // component indices, in order of first appearance
    std::vector<std::size_t> permutation;          // concatenation of the classes
};

inline DarbouxClasses darboux_classes(const std::vector<ClassicalWeight>& comps)
{
    DarbouxClasses out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        bool placed = false;
        for (auto& cls : out.classes)
            if (darboux_equivalent(comps[cls[0]], comps[i])) {
                cls.push_back(i);
                placed = true;
                break;
            }
        if (!placed)
            out.classes.push_back({i});
    }
    for (const auto& cls : out.classes)
        out.permutation.insert(out.permutation.end(), cls.begin(), cls.end());
    return out;
}

/// delta_j E_jj, E_jj and the nonzero T_{w_i,w_j} E_ij, i != j.
inline GeneratorSet directsum_generators(const WeightSpec& w)
{
    const auto v = detail::direct_sum_view(w);
    const std::size_t n = v.comps.size();
    GeneratorSet g;
    for (std::size_t j = 0; j < n; ++j) {
        const std::string k = std::to_string(j + 1);
        g.add("delta_" + k, detail::finish(classical_delta(v.comps[j]).placed(n, n, j, j), v));
        g.add("E_" + k, detail::finish(MatDiffOp::identity(1).placed(n, n, j, j), v));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            MatDiffOp t = t_operator(v.comps[i], v.comps[j]);
            if (!t.is_zero())
                g.add("T_" + std::to_string(i + 1) + "_" + std::to_string(j + 1), detail::finish(t.placed(n, n, i, j), v));
        }
    return g;
}

struct DirectSumCenter {
    GeneratorSet gens;          // Delta_c per class, plus class idempotents when there are several classes
    DarbouxClasses classes;
};

inline DirectSumCenter directsum_center(const WeightSpec& w)
{
    const auto v = detail::direct_sum_view(w);
    const std::size_t n = v.comps.size();
    DirectSumCenter out;
    out.classes = darboux_classes(v.comps);
    for (std::size_t c = 0; c < out.classes.classes.size(); ++c) {
        MatDiffOp delta(n, n), idem(n, n);
        for (std::size_t j : out.classes.classes[c]) {
            delta += classical_delta(v.comps[j]).placed(n, n, j, j);
            idem += MatDiffOp::identity(1).placed(n, n, j, j);
        }
        out.gens.add("Delta_" + std::to_string(c + 1), detail::finish(delta, v));
        if (out.classes.classes.size() > 1)
            out.gens.add("Idem_" + std::to_string(c + 1), detail::finish(idem, v));
    }
    return out;
}

/// Operator D in D(W) with Lambda(D) = target, assembled as
/// sum T_{w_i,w_j} p_ij(delta_j) E_ij.
inline MatDiffOp operator_from_eigenvalue(const EigMat& target, const WeightSpec& w)
{
    const auto v = detail::direct_sum_view(w);
    const std::size_t n = v.comps.size();
    if (target.rows() != n || target.cols() != n)
        fail(ErrorKind::DimensionMismatch, "target size does not match the weight");
    EigMat t = target;
    if (v.conj) {
        const auto m = lift<NVar>(*v.conj);
        const auto mi = lift<NVar>(inverse(*v.conj));
        t = mi * target * m;
    }
    MatDiffOp out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (t(i, j).is_zero())
                continue;
            const PolyN lt = t_eigenvalue(v.comps[i], v.comps[j]);
            const std::string where = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            if (lt.is_zero())
                fail(ErrorKind::NotRepresentable, where + ": components are not Darboux equivalent");
            auto [q, r] = t(i, j).divmod(lt);
            if (!r.is_zero())
                fail(ErrorKind::NotRepresentable, where + ": " + t(i, j).str() + " is not divisible by " + lt.str());
            PolyN p = rewrite_in_delta(q, v.comps[j]);
            MatDiffOp entry = compose(t_operator(v.comps[i], v.comps[j]), poly_of_op(p, classical_delta(v.comps[j])));
            out += entry.placed(n, n, i, j);
        }
    return detail::finish(out, v);
}

struct CofactorResult {
    MatDiffOp cofactor;            // the operator A
    std::vector<PolyN> p_n;        // per class: Lambda_n(A D) restricted to the class, as a scalar in Q[n]
    std::vector<PolyN> p_lambda;   // the same scalar written in lambda = Lambda_n(delta) of the class
    DarbouxClasses classes;
};

/// A with Lambda(A D) = p_c(Lambda(delta_c)) I on every Darboux block, so
/// that A D is central. Blocks where Lambda(D) is already scalar get A = I.
inline CofactorResult centralizing_cofactor(const MatDiffOp& d, const WeightSpec& w)
{
    const auto v = detail::direct_sum_view(w);
    const std::size_t n = v.comps.size();
    if (!d.is_square() || d.rows() != n)
        fail(ErrorKind::DimensionMismatch, "operator size does not match the weight");
    EigMat lam = eigenvalue_poly(d);
    if (v.conj)
        lam = lift<NVar>(inverse(*v.conj)) * lam * lift<NVar>(*v.conj);

    CofactorResult res;
    res.classes = darboux_classes(v.comps);
    std::vector<std::size_t> cls_of(n);
    for (std::size_t c = 0; c < res.classes.classes.size(); ++c)
        for (std::size_t j : res.classes.classes[c])
            cls_of[j] = c;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (cls_of[i] != cls_of[j] && !lam(i, j).is_zero())
                fail(ErrorKind::NotRepresentable, "eigenvalue is not block diagonal over the Darboux classes");

    EigMat target(n, n);
    for (const auto& idx : res.classes.classes) {
        const std::size_t k = idx.size();
        EigMat block(k, k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                block(a, b) = lam(idx[a], idx[b]);
        bool scalar = true;
        for (std::size_t a = 0; a < k && scalar; ++a)
            for (std::size_t b = 0; b < k; ++b)
                if (!(block(a, b) == (a == b ? block(0, 0) : PolyN()))) {
                    scalar = false;
                    break;
                }
        PolyN p;
        EigMat adj(k, k);
        if (scalar) {
            p = block(0, 0);
            adj = EigMat::identity(k);
        } else {
            p = determinant(block);
            adj = adjugate(block);
        }
        if (p.is_zero())
            fail(ErrorKind::SingularEigenvalue, "eigenvalue block has zero determinant");
        res.p_n.push_back(p);
        res.p_lambda.push_back(rewrite_in_delta(p, v.comps[idx[0]]));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                target(idx[a], idx[b]) = adj(a, b);
    }
    if (v.conj)
        target = lift<NVar>(*v.conj) * target * lift<NVar>(inverse(*v.conj));
    res.cofactor = operator_from_eigenvalue(target, w);
    return res;
}

// ---------------------------------------------------------------- ladders

/// F_{i,j} = T_{w_i,w_j} E_{i,j} (F_{i,i} = E_{i,i}).
inline MatDiffOp ladder(const std::vector<ClassicalWeight>& comps, std::size_t i, std::size_t j)
{
    const std::size_t n = comps.size();
    return t_operator(comps[i], comps[j]).placed(n, n, i, j);
}

struct LadderRelation {
    bool applicable = false; // w_i ~ w_j
    PolyN q_n;               // Lambda(T_ir) Lambda(T_rj) / Lambda(T_ij)
    PolyN q_lambda;          // q as a polynomial in Lambda(delta_i)
    bool holds = false;      // F_ir F_rj == q(delta_i) F_ij as operators
};

/// F_{i,r} F_{r,j} = q(delta_i) F_{i,j}, with q recovered by exact division.
inline LadderRelation ladder_relation(const std::vector<ClassicalWeight>& comps, std::size_t i, std::size_t r,
                                      std::size_t j)
{
    LadderRelation out;
    const PolyN tij = t_eigenvalue(comps[i], comps[j]);
    const MatDiffOp lhs = compose(ladder(comps, i, r), ladder(comps, r, j));
    if (tij.is_zero()) {
        out.holds = lhs.is_zero();
        return out;
    }
    out.applicable = true;
    auto [q, rem] = (t_eigenvalue(comps[i], comps[r]) * t_eigenvalue(comps[r], comps[j])).divmod(tij);
    if (!rem.is_zero())
        fail(ErrorKind::NotRepresentable, "ladder product eigenvalue is not divisible by Lambda(T_ij)");
    out.q_n = q;
    out.q_lambda = rewrite_in_delta(q, comps[i]);
    const std::size_t n = comps.size();
    const MatDiffOp qd = poly_of_op(out.q_lambda, classical_delta(comps[i])).placed(n, n, i, i);
    out.holds = lhs == compose(qd, ladder(comps, i, j));
    return out;
}

// ---------------------------------------------------------------- Darboux

struct DarbouxReport {
    MatDiffOp n_op;                      // (a) the adjoint of V across the two weights
    EigMat a_n;                          // (b) Lambda_n(V)
    std::optional<DegreeCertificate> degree;
    bool vn_in_source_algebra = false;   // (c)
    bool nv_in_target_algebra = false;
    bool intertwines = false;            // (d) P_n . V = A_n Ptilde_n
    bool norm_identity = false;          // (e) Lambda_n(N) |P_n|^2 = |Ptilde_n|^2 A_n^T
    std::optional<std::size_t> first_failure_n;

    bool passed() const
    {
        return vn_in_source_algebra && nv_in_target_algebra && intertwines && norm_identity &&
               (!degree || degree->preserving);
    }
};

/// V maps the monic orthogonal polynomials of `source` onto those of
/// `target`: P_n . V = A_n Ptilde_n. N is the adjoint with
/// <P . V, Q>_target = <P, Q . N>_source.
inline DarbouxReport darboux_verify(const MatDiffOp& vop, const MopSequence& src, const MopSequence& tgt)
{
    if (vop.rows() != src.size() || vop.cols() != tgt.size())
        fail(ErrorKind::DimensionMismatch, "V does not map the source size onto the target size");
    const std::size_t n_max = std::min(src.n_max(), tgt.n_max());
    DarbouxReport rep;
    rep.n_op = formal_adjoint(vop, weight_form(tgt.weight), weight_form(src.weight));
    rep.a_n = eigenvalue_poly(vop);
    if (vop.is_square())
        rep.degree = is_degree_preserving(vop);

    auto note = [&](std::size_t n) {
        if (!rep.first_failure_n || n < *rep.first_failure_n)
            rep.first_failure_n = n;
    };
    const auto vn = check_eigenfunction(compose(vop, rep.n_op), src);
    const auto nv = check_eigenfunction(compose(rep.n_op, vop), tgt);
    rep.vn_in_source_algebra = vn.passed;
    rep.nv_in_target_algebra = nv.passed;
    if (vn.first_failure_n)
        note(*vn.first_failure_n);
    if (nv.first_failure_n)
        note(*nv.first_failure_n);

    const EigMat an_tilde = eigenvalue_poly(rep.n_op);
    rep.intertwines = true;
    rep.norm_identity = true;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const Rational nr(static_cast<long>(n));
        const QMat a = evaluate(rep.a_n, nr);
        if (!(apply(src.polys[n], vop) == lift<XVar>(a) * tgt.polys[n])) {
            rep.intertwines = false;
            note(n);
        }
        if (!(evaluate(an_tilde, nr) * src.norms[n] == tgt.norms[n] * a.transpose())) {
            rep.norm_identity = false;
            note(n);
        }
    }
    return rep;
}

inline DarbouxReport darboux_verify(const MatDiffOp& vop, const WeightSpec& source, const WeightSpec& target,
                                    std::size_t n_max)
{
    return darboux_verify(vop, monic_mops(source, n_max), monic_mops(target, n_max));
}

} // namespace mvop
