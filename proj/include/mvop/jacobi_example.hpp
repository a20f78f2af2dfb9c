#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diffop.hpp"
#include "linsolve.hpp"
#include "mops.hpp"
#include "report.hpp"
#include "structure.hpp"
#include "weights.hpp"

namespace mvop {

/// The irreducible 2x2 Jacobi-type weight with parameters (alpha, beta, v),
/// its diagonal Darboux partner (1-x)^(alpha+1) (1+x)^(beta+1) I and the
/// named operators of its algebra.
struct JacobiExampleBundle {
    Rational alpha, beta, v;
    WeightSpec w;       // the 2x2 weight
    WeightSpec w_tilde; // jacobi(alpha+1, beta+1) twice
    std::map<std::string, MatDiffOp> ops;         // built by composition
    std::map<std::string, MatDiffOp> displayed;   // expanded closed forms
    std::vector<std::string> errata;              // corrections applied to the closed forms

    const MatDiffOp& op(const std::string& name) const
    {
        auto it = ops.find(name);
        if (it == ops.end())
            fail(ErrorKind::InvalidArgument, "bundle has no operator " + name);
        return it->second;
    }
    Rational s() const { return alpha + beta; }
    /// c1 = (-v+4+s)(v+2+s)/4 and c2 = (s+v+4)(-v+2+s)/4.
    Rational c1() const { return (-v + 4 + s()) * (v + 2 + s()) / 4; }
    Rational c2() const { return (s() + v + 4) * (-v + 2 + s()) / 4; }
};

namespace detail {

inline MatDiffOp op2(const std::vector<std::array<std::array<PolyX, 2>, 2>>& coeffs)
{
    std::vector<PolyMat> v;
    for (const auto& c : coeffs)
        v.push_back(PolyMat{{c[0][0], c[0][1]}, {c[1][0], c[1][1]}});
    return MatDiffOp(std::move(v));
}

inline MatDiffOp unit_op(std::size_t i, std::size_t j) { return MatDiffOp::constant(PolyMat::unit(2, 2, i, j)); }

} // namespace detail

inline JacobiExampleBundle build_bundle(const Rational& alpha, const Rational& beta, const Rational& v)
{
    JacobiExampleBundle b;
    b.alpha = alpha;
    b.beta = beta;
    b.v = v;
    const MatrixJacobi params{alpha, beta, v};
    detail::check_matrix_jacobi(params);
    b.w = params;
    const ClassicalWeight wt = ClassicalWeight::jacobi(alpha + 1, beta + 1);
    b.w_tilde = WeightSpec::direct_sum({wt, wt});

    const Rational s = alpha + beta, d = alpha - beta, v2 = v * v;
    const PolyX x = PolyX::var();
    const PolyX one(1);
    auto c = [](const Rational& r) { return PolyX(r); };
    auto lin = [](const Rational& c0, const Rational& c1) { return PolyX{c0, c1}; };

    // V = d V1(x) + V0,  N = d N1(x) + N0
    const MatDiffOp V = detail::op2({
        {{{c((v + 2 + s) / 2), PolyX()}, {PolyX(), c((-v + 2 + s) / 2)}}},
        {{{lin(-d / v, 1), c(1 - d / v)}, {c(1 + d / v), lin(d / v, 1)}}},
    });
    const MatDiffOp N = detail::op2({
        {{{c(-(-v + 4 + s) / 2), PolyX()}, {PolyX(), c(-(s + v + 4) / 2)}}},
        {{{lin(-d / v, -1), c(1 - d / v)}, {c(1 + d / v), lin(d / v, -1)}}},
    });
    const MatDiffOp delta1 = classical_delta(wt);
    const MatDiffOp i2 = MatDiffOp::identity(2);
    const MatDiffOp delta = delta1.placed(2, 2, 0, 0) + delta1.placed(2, 2, 1, 1);
    const MatDiffOp D = delta - MatDiffOp::constant(QMat{{b.c1(), 0}, {0, b.c2()}});
    const MatDiffOp A = delta - MatDiffOp::constant(QMat{{b.c2(), 0}, {0, b.c1()}});

    auto& o = b.ops;
    o["V"] = V;
    o["N"] = N;
    o["D"] = D;
    o["A"] = A;
    o["delta"] = delta;
    o["D1"] = compose_all({N, detail::unit_op(0, 0), V});
    o["D2"] = compose_all({N, detail::unit_op(0, 1), V});
    o["D3"] = compose_all({N, detail::unit_op(1, 0), V});
    o["D4"] = compose_all({N, detail::unit_op(1, 1), V});
    o["D5"] = compose(N, V);
    o["Z1"] = compose_all({N, A, V});
    o["Z2"] = compose_all({N, delta, A, V});

    // Expanded closed forms (with the corrections listed in errata).
    auto q = [&](const Rational& r) { return c(r); };
    const PolyX vxpd = lin(d, v);   // v x + (alpha - beta)
    const PolyX mvxpd = lin(d, -v); // -v x + (alpha - beta)
    auto& e = b.displayed;
    e["D1"] = detail::op2({
        {{{q(-(-v + 4 + s) * (v + 2 + s) / 4), PolyX()}, {PolyX(), PolyX()}}},
        {{{lin(-(v - 2) * d / v, -(s + 4)), q((-v + d) * (s - v + 6) / (v * 2))},
          {q((v + d) * (v + 2 + s) / (v * 2)), PolyX()}}},
        {{{PolyX{d * d / v2, 0, -1}, vxpd * (-v + d) * (Rational(1) / v2)},
          {lin(-d, v) * (v + d) * (Rational(1) / v2), q(1 - d * d / v2)}}},
    });
    e["D2"] = detail::op2({
        {{{PolyX(), q(-(-v + 4 + s) * (-v + 2 + s) / 4)}, {PolyX(), PolyX()}}},
        {{{q((-v - d) * (s - v + 6) / (v * 2)), vxpd * (-(-v + 4 + s) / v)},
          {PolyX(), q((v + d) * (-v + 2 + s) / (v * 2))}}},
        {{{vxpd * ((-v - d) / v2), vxpd * vxpd * (-Rational(1) / v2)},
          {q((v + d) * (v + d) / v2), vxpd * ((v + d) / v2)}}},
    });
    e["D3"] = detail::op2({
        {{{PolyX(), PolyX()}, {q(-(s + v + 4) * (v + 2 + s) / 4), PolyX()}}},
        {{{q(-(v + 2 + s) * (-v + d) / (v * 2)), PolyX()},
          {mvxpd * ((s + v + 4) / v), q((s + v + 6) * (-v + d) / (v * 2))}}},
        {{{mvxpd * ((-v + d) / v2), q((-v + d) * (-v + d) / v2)},
          {mvxpd * mvxpd * (-Rational(1) / v2), mvxpd * ((v - d) / v2)}}},
    });
    e["D4"] = detail::op2({
        {{{PolyX(), PolyX()}, {PolyX(), q(-(s + v + 4) * (-v + 2 + s) / 4)}}},
        {{{PolyX(), q((v - d) * (-v + 2 + s) / (v * 2))},
          {q(-(v + d) * (s + v + 6) / (v * 2)), lin(-(v + 2) * d / v, -(s + 4))}}},
        {{{q(1 - d * d / v2), vxpd * ((v - d) / v2)},
          {mvxpd * ((v + d) / v2), PolyX{d * d / v2, 0, -1}}}},
    });
    e["D5"] = detail::op2({
        {{{q(-(-v + 4 + s) * (v + 2 + s) / 4), PolyX()}, {PolyX(), q(-(s + v + 4) * (-v + 2 + s) / 4)}}},
        {{{lin(-(v - 2) * d / v, -(s + 4)), q(2 * (-v + d) / v)},
          {q(-2 * (v + d) / v), lin(-(v + 2) * d / v, -(s + 4))}}},
        {{{PolyX{1, 0, -1}, PolyX()}, {PolyX(), PolyX{1, 0, -1}}}},
    });
    // Z1, Z2 written through D1 and D4
    const MatDiffOp &d1 = o["D1"], &d4 = o["D4"];
    const MatDiffOp d1s = compose(d1, d1), d4s = compose(d4, d4);
    e["Z1"] = d1s + d4s + v * (d1 - d4);
    e["Z2"] = compose(d1s, d1) + compose(d4s, d4) + b.c1() * (d1s + v * d1) + b.c2() * (d4s - v * d4) +
              v * (d1s - d4s);
    (void)one;
    (void)x;
    (void)i2;

    b.errata = {
        "D: first-order term of delta_(alpha+1,beta+1) uses x(alpha+beta+4); x(alpha+beta+3) does not factor as V N",
        "D1 d-coefficient (1,1): -x(alpha+beta+4) - (v-2)(alpha-beta)/v, denominator v rather than 2v",
        "D1 d-coefficient (1,2): factor (alpha+beta-v+6) rather than (alpha*beta-v+6)",
        "D3 d^2-coefficient (2,1): -(-vx+alpha-beta)^2/v^2, the factor is squared",
        "D3 constant term: undefined symbol eta read as beta",
        "D5 constant term (2,2): -(alpha+beta+v+4)(-v+2+alpha+beta)/4, negative sign",
    };
    return b;
}

namespace detail {

inline std::string diff_witness(const MatDiffOp& a, const MatDiffOp& b)
{
    if (a == b)
        return {};
    MatDiffOp r = a - b;
    return "residual " + r.str();
}

inline void add_equal(Report& rep, const std::string& name, const MatDiffOp& a, const MatDiffOp& b)
{
    rep.add(name, a == b, diff_witness(a, b));
}

inline PolyN quarter_product(const PolyN& f, const PolyN& g) { return f * g * Rational(-1, 4); }

} // namespace detail

/// Lambda_n(D1..D4) closed forms.
inline std::map<std::string, EigMat> expected_eigenvalues(const JacobiExampleBundle& b)
{
    const Rational s = b.s(), v = b.v;
    auto lin = [](const Rational& c0) { return PolyN{c0, Rational(2)}; }; // 2n + c0
    std::map<std::string, EigMat> out;
    EigMat z(2, 2);
    out["D1"] = z;
    out["D1"](0, 0) = detail::quarter_product(lin(-v + 4 + s), lin(v + 2 + s));
    out["D2"] = z;
    out["D2"](0, 1) = detail::quarter_product(lin(-v + 4 + s), lin(-v + 2 + s));
    out["D3"] = z;
    out["D3"](1, 0) = detail::quarter_product(lin(v + 4 + s), lin(v + 2 + s));
    out["D4"] = z;
    out["D4"](1, 1) = detail::quarter_product(lin(v + 4 + s), lin(-v + 2 + s));
    return out;
}

/// p(n) = (2n-v+2+s)(2n+s+v+4)(2n+v+2+s)(2n-v+4+s)/16.
inline PolyN expected_quartic(const JacobiExampleBundle& b)
{
    const Rational s = b.s(), v = b.v;
    auto lin = [](const Rational& c0) { return PolyN{c0, Rational(2)}; };
    return lin(-v + 2 + s) * lin(s + v + 4) * lin(v + 2 + s) * lin(-v + 4 + s) * Rational(1, 16);
}

inline Report verify_factorization(const JacobiExampleBundle& b, std::size_t n_max = 8)
{
    Report rep;
    const MatDiffOp &V = b.op("V"), &N = b.op("N"), &D = b.op("D");
    detail::add_equal(rep, "VN equals D", compose(V, N), D);
    rep.add("constant term of VN (1,1)", compose(V, N).coeff(0)(0, 0) == PolyX(-b.c1()));
    rep.add("Lambda_0(D) is the constant coefficient", evaluate(eigenvalue_poly(D), Rational(0)) == coeff(D.coeff(0), 0));
    detail::add_equal(rep, "NV equals the D5 closed form", b.op("D5"), b.displayed.at("D5"));
    detail::add_equal(rep, "D5 equals D1 + D4", b.op("D5"), b.op("D1") + b.op("D4"));

    // Adjoint of V: <P.V, Q>_W = <P, Q.N'>_Wtilde with N' = W V^* Wtilde^{-1}.
    const auto co = matrix_jacobi_coeffs(MatrixJacobi{b.alpha, b.beta, b.v});
    const QMat scale = co.w2 * Rational(-1, 4);
    const WeightForm wf = weight_form(b.w);
    WeightForm wt = weight_form(b.w_tilde);
    try {
        const MatDiffOp adj_plain = formal_adjoint(V, wf, wt);
        detail::add_equal(rep, "adjoint of V over (W, wtilde I) equals N * (-W2/4)", adj_plain,
                          N.map_coeffs([&](const PolyMat& f) { return f * lift<XVar>(scale); }));
        wt.poly = lift<XVar>(scale);
        detail::add_equal(rep, "adjoint of V over (W, wtilde (-W2/4)) equals N", formal_adjoint(V, wf, wt), N);
    } catch (const Error& e) {
        rep.add("adjoint of V has polynomial coefficients", false, e.what());
        return rep;
    }

    const DarbouxReport dr = darboux_verify(V, b.w_tilde, b.w, n_max);
    rep.add("darboux: V is degree preserving", dr.degree && dr.degree->preserving,
            dr.degree ? "det Lambda_n(V) = " + dr.degree->det.str() : "");
    rep.add("darboux: VN' in the algebra of the diagonal weight", dr.vn_in_source_algebra, {}, dr.first_failure_n);
    rep.add("darboux: N'V in the algebra of W", dr.nv_in_target_algebra, {}, dr.first_failure_n);
    rep.add("darboux: J_n . V = Lambda_n(V) Q_n", dr.intertwines, {}, dr.first_failure_n);
    rep.add("darboux: norm identity", dr.norm_identity, {}, dr.first_failure_n);
    return rep;
}

inline Report verify_generators_and_relations(const JacobiExampleBundle& b, std::size_t n_max = 8)
{
    Report rep;
    const auto expected = expected_eigenvalues(b);
    for (const char* name : {"D1", "D2", "D3", "D4"}) {
        const EigMat lam = eigenvalue_poly(b.op(name));
        rep.add(std::string("Lambda_n(") + name + ") closed form", lam == expected.at(name), to_string(lam));
        detail::add_equal(rep, std::string(name) + " = N E V matches its closed form", b.op(name), b.displayed.at(name));
    }

    const MatDiffOp &d1 = b.op("D1"), &d2 = b.op("D2"), &d3 = b.op("D3"), &d4 = b.op("D4");
    const Rational v = b.v;
    // eigenvalue-level pre-check of the first relation
    {
        const auto l = expected;
        rep.add("Lambda(D2)Lambda(D3) = Lambda(D1)^2 + v Lambda(D1)",
                l.at("D2") * l.at("D3") == l.at("D1") * l.at("D1") + l.at("D1").map([&](const PolyN& p) { return p * v; }));
    }
    const MatDiffOp zero(2, 2);
    detail::add_equal(rep, "D2 D3 = D1^2 + v D1", compose(d2, d3), compose(d1, d1) + v * d1);
    detail::add_equal(rep, "D3 D2 = D4^2 - v D4", compose(d3, d2), compose(d4, d4) - v * d4);
    detail::add_equal(rep, "D1 D2 - D2 D4 = -v D2", compose(d1, d2) - compose(d2, d4), -v * d2);
    detail::add_equal(rep, "D4 D3 - D3 D1 = v D3", compose(d4, d3) - compose(d3, d1), v * d3);
    detail::add_equal(rep, "D1 D4 = 0", compose(d1, d4), zero);
    detail::add_equal(rep, "D4 D1 = 0", compose(d4, d1), zero);
    detail::add_equal(rep, "D1 D3 = 0", compose(d1, d3), zero);
    detail::add_equal(rep, "D4 D2 = 0", compose(d4, d2), zero);
    detail::add_equal(rep, "D2 D1 = 0", compose(d2, d1), zero);
    detail::add_equal(rep, "D2^2 = 0", compose(d2, d2), zero);
    detail::add_equal(rep, "D3 D4 = 0", compose(d3, d4), zero);
    detail::add_equal(rep, "D3^2 = 0", compose(d3, d3), zero);

    const MopSequence m = monic_mops(b.w, n_max);
    for (const char* name : {"D1", "D2", "D3", "D4", "D5"}) {
        const auto r = check_eigenfunction(b.op(name), m);
        rep.add(std::string(name) + " has the monic orthogonal polynomials as eigenfunctions", r.passed,
                r.passed ? "" : "residual " + to_string(r.residual), r.first_failure_n);
    }
    for (const auto& [name, op] : b.ops) {
        if (name == "A" || name == "D" || name == "delta" || name == "V" || name == "N")
            continue;
        rep.add("order of " + name + " is even", op.order() % 2 == 0, "order " + std::to_string(op.order()));
    }
    rep.add("leading coefficient of D5 is (1-x^2) I",
            b.op("D5").leading() == PolyMat::identity(2).map([](const PolyX& e) { return e * PolyX{1, 0, -1}; }));
    return rep;
}

inline Report verify_center(const JacobiExampleBundle& b)
{
    Report rep;
    GeneratorSet gens;
    for (const char* name : {"D1", "D2", "D3", "D4"})
        gens.add(name, b.op(name));
    const MatDiffOp &z1 = b.op("Z1"), &z2 = b.op("Z2");
    rep.add("Z1 central in the eigenvalue algebra", center_check(z1, gens));
    rep.add("Z2 central in the eigenvalue algebra", center_check(z2, gens));
    for (const char* name : {"D1", "D2", "D3", "D4"}) {
        const MatDiffOp& g = b.op(name);
        detail::add_equal(rep, std::string("Z1 ") + name + " = " + name + " Z1", compose(z1, g), compose(g, z1));
        detail::add_equal(rep, std::string("Z2 ") + name + " = " + name + " Z2", compose(z2, g), compose(g, z2));
    }
    detail::add_equal(rep, "N A V = D1^2 + D4^2 + v(D1 - D4)", z1, b.displayed.at("Z1"));
    detail::add_equal(rep, "N delta A V matches its expression in D1, D4", z2, b.displayed.at("Z2"));

    auto power_of_w = [](unsigned k) {
        return PolyMat::identity(2).map([k](const PolyX& e) { return e * pow(PolyX{1, 0, -1}, k); });
    };
    rep.add("leading coefficient of Z1 is (1-x^2)^2 I", z1.order() == 4 && z1.leading() == power_of_w(2));
    rep.add("leading coefficient of Z2 is (1-x^2)^3 I", z2.order() == 6 && z2.leading() == power_of_w(3));

    const Rational s = b.s(), v = b.v;
    const Rational cz1z2 = ((4 + s) * (s + 2) - v * v) / 2;
    const Rational cz1sq = (v + 2 + s) * (-v + 2 + s) * (v + 4 + s) * (-v + 4 + s) / 16;
    const MatDiffOp z1sq = compose(z1, z1);
    const MatDiffOp cubic = compose(z1sq, z1) - compose(z2, z2) + cz1z2 * compose(z1, z2) - cz1sq * z1sq;
    rep.add("cubic relation between Z1 and Z2", cubic.is_zero(), cubic.is_zero() ? "" : "residual order " + std::to_string(cubic.order()));

    auto scalar_identity = [](const EigMat& m) {
        return m(0, 1).is_zero() && m(1, 0).is_zero() && m(0, 0) == m(1, 1);
    };
    rep.add("Lambda(Z1) is scalar", scalar_identity(eigenvalue_poly(z1)), to_string(eigenvalue_poly(z1)));
    rep.add("Lambda(Z2) is scalar", scalar_identity(eigenvalue_poly(z2)), to_string(eigenvalue_poly(z2)));

    const EigMat lad = eigenvalue_poly(compose(b.op("A"), b.op("D")));
    const PolyN p = expected_quartic(b);
    rep.add("Lambda_n(A D) = p(n) I", lad == EigMat::identity(2).map([&](const PolyN& e) { return e * p; }), to_string(lad));
    return rep;
}

// ---------------------------------------------------------------- module decomposition

/// Polynomial in the central generators: (s, t) -> coefficient of Z1^s Z2^t.
using ZPoly = std::map<std::pair<unsigned, unsigned>, Rational>;

struct ModuleDecomposition {
    std::map<std::string, ZPoly> coeffs; // basis label -> coefficient
    bool residual_zero = false;
};

namespace detail {

class ZWords {
public:
    explicit ZWords(const JacobiExampleBundle& b) : z1_(b.op("Z1")), z2_(b.op("Z2")) {}

    const MatDiffOp& word(unsigned s, unsigned t)
    {
        auto key = std::make_pair(s, t);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        MatDiffOp w = MatDiffOp::identity(2);
        if (s > 0)
            w = compose(word(s - 1, t), z1_);
        else if (t > 0)
            w = compose(word(0, t - 1), z2_);
        return cache_.emplace(key, std::move(w)).first->second;
    }

private:
    MatDiffOp z1_, z2_;
    std::map<std::pair<unsigned, unsigned>, MatDiffOp> cache_;
};

/// 2s + 3t = m, t as large as possible.
inline std::optional<std::pair<unsigned, unsigned>> split_23(unsigned m)
{
    for (unsigned t = m / 3 + 1; t-- > 0;)
        if ((m - 3 * t) % 2 == 0)
            return std::make_pair((m - 3 * t) / 2, t);
    return std::nullopt;
}

inline std::optional<PolyMat> exact_quotient(const PolyMat& f, const PolyX& g)
{
    PolyMat out(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) {
            auto [q, r] = f(i, j).divmod(g);
            if (!r.is_zero())
                return std::nullopt;
            out(i, j) = q;
        }
    return out;
}

} // namespace detail

/// Writes B as sum z_j * basis_j over the basis {I, D_j, D5 D_j} with z_j
/// polynomials in Z1, Z2, by peeling leading coefficients.
inline ModuleDecomposition decompose_in_module_basis(const JacobiExampleBundle& b, const MatDiffOp& target)
{
    if (target.rows() != 2 || target.cols() != 2)
        fail(ErrorKind::DimensionMismatch, "module decomposition needs a 2x2 operator");
    ModuleDecomposition out;
    detail::ZWords words(b);
    const std::array<std::string, 4> names{"D1", "D2", "D3", "D4"};
    std::array<MatDiffOp, 4> gens, d5g;
    std::array<PolyMat, 4> lead;
    for (std::size_t i = 0; i < 4; ++i) {
        gens[i] = b.op(names[i]);
        d5g[i] = compose(b.op("D5"), gens[i]);
        lead[i] = gens[i].leading();
    }
    const PolyX w{1, 0, -1};
    auto record = [&](const std::string& label, unsigned s, unsigned t, const Rational& c) {
        if (c.is_zero())
            return;
        Rational& slot = out.coeffs[label][{s, t}];
        slot += c;
        if (slot.is_zero())
            out.coeffs[label].erase({s, t});
    };

    MatDiffOp rest = target;
    while (!rest.is_zero()) {
        const int ord = rest.order();
        if (ord % 2)
            fail(ErrorKind::NotDecomposable, "odd order " + std::to_string(ord));
        const auto m = static_cast<unsigned>(ord / 2);
        const PolyMat f = rest.leading();

        if (m == 0) {
            if (!(f(0, 1).is_zero() && f(1, 0).is_zero() && f(0, 0) == f(1, 1) && f(0, 0).is_constant()))
                fail(ErrorKind::NotDecomposable, "order-zero remainder is not a multiple of I");
            const Rational c = f(0, 0).coeff(0);
            record("I", 0, 0, c);
            rest -= MatDiffOp::constant(QMat{{c, 0}, {0, c}});
            continue;
        }

        // central leading term a (1-x^2)^m I with m >= 2: peel with a Z word
        if (m >= 2) {
            if (auto q = detail::exact_quotient(f, pow(w, m));
                q && (*q)(0, 1).is_zero() && (*q)(1, 0).is_zero() && (*q)(0, 0) == (*q)(1, 1) && (*q)(0, 0).is_constant()) {
                auto st = detail::split_23(m);
                const Rational a = (*q)(0, 0).coeff(0);
                record("I", st->first, st->second, a);
                rest -= a * words.word(st->first, st->second);
                if (!rest.is_zero() && rest.order() >= ord)
                    fail(ErrorKind::NotDecomposable, "peeling did not lower the order");
                continue;
            }
        }

        auto q = detail::exact_quotient(f, pow(w, m - 1));
        if (!q)
            fail(ErrorKind::NotDecomposable, "leading coefficient is not divisible by (1-x^2)^" + std::to_string(m - 1));
        // solve sum k_i lead_i = q entrywise, coefficient by coefficient
        int dq = 2;
        for (const auto& l : lead)
            dq = std::max(dq, degree(l));
        dq = std::max(dq, degree(*q));
        const std::size_t rows = 4 * static_cast<std::size_t>(dq + 1);
        QMat a(rows, 4), rhs(rows, 1);
        for (std::size_t e = 0; e < 4; ++e)
            for (int k = 0; k <= dq; ++k) {
                const std::size_t r = e * static_cast<std::size_t>(dq + 1) + static_cast<std::size_t>(k);
                for (std::size_t i = 0; i < 4; ++i)
                    a(r, i) = lead[i](e / 2, e % 2).coeff(static_cast<std::size_t>(k));
                rhs(r, 0) = (*q)(e / 2, e % 2).coeff(static_cast<std::size_t>(k));
            }
        const SolveResult sol = solve_exact(a, rhs);
        if (sol.status != SolveStatus::Unique)
            fail(ErrorKind::NotDecomposable, "leading coefficient is not a combination of the generators' leading terms");

        MatDiffOp sub(2, 2);
        for (std::size_t i = 0; i < 4; ++i) {
            const Rational k = sol.x(i, 0);
            if (k.is_zero())
                continue;
            if (m == 1) {
                record(names[i], 0, 0, k);
                sub += k * gens[i];
            } else if (m == 2) {
                record("D5" + names[i], 0, 0, k);
                sub += k * d5g[i];
            } else {
                auto st = detail::split_23(m - 1);
                record(names[i], st->first, st->second, k);
                sub += k * compose(words.word(st->first, st->second), gens[i]);
            }
        }
        rest -= sub;
        if (!rest.is_zero() && rest.order() >= ord)
            fail(ErrorKind::NotDecomposable, "peeling did not lower the order");
    }

    // rebuild and compare
    MatDiffOp sum(2, 2);
    for (const auto& [label, zp] : out.coeffs) {
        MatDiffOp basis = MatDiffOp::identity(2);
        if (label != "I") {
            const bool with_d5 = label.size() > 2;
            const std::string g = with_d5 ? label.substr(2) : label;
            basis = with_d5 ? compose(b.op("D5"), b.op(g)) : b.op(g);
        }
        for (const auto& [st, c] : zp)
            sum += c * compose(words.word(st.first, st.second), basis);
    }
    out.residual_zero = sum == target;
    return out;
}

// ---------------------------------------------------------------- orthogonal family

struct OrthogonalFamily {
    std::vector<PolyMat> q;              // Q_n = J_n . V
    bool orthogonal = true;
    bool leading_is_lambda = true;       // leading coefficient of Q_n equals Lambda_n(V)
    bool degrees_exact = true;
    std::optional<std::pair<std::size_t, std::size_t>> first_failure; // (n, m)
};

inline OrthogonalFamily orthogonal_family(const JacobiExampleBundle& b, std::size_t n_max)
{
    OrthogonalFamily out;
    const MopSequence jt = monic_mops(b.w_tilde, n_max);
    const MatDiffOp& V = b.op("V");
    const EigMat lam = eigenvalue_poly(V);
    for (std::size_t n = 0; n <= n_max; ++n) {
        PolyMat qn = apply(jt.polys[n], V);
        if (degree(qn) != static_cast<int>(n))
            out.degrees_exact = false;
        if (!(coeff(qn, n) == evaluate(lam, Rational(static_cast<long>(n)))))
            out.leading_is_lambda = false;
        out.q.push_back(std::move(qn));
    }
    const MomentSeq mu = moments(b.w, 2 * n_max);
    for (std::size_t n = 1; n <= n_max; ++n)
        for (std::size_t m = 0; m < n; ++m)
            if (!inner_product(out.q[n], out.q[m], mu).is_zero()) {
                if (out.orthogonal)
                    out.first_failure = std::make_pair(n, m);
                out.orthogonal = false;
            }
    return out;
}

} // namespace mvop
