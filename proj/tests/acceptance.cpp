// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "mvop/mvop.hpp"

using namespace mvop;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

/// Every check of `r` whose name is in `names` passes; all names must be present.
void require_checks(Outcome& out, const Report& r, const std::set<std::string>& names, const std::string& where)
{
    std::size_t seen = 0;
    for (const auto& c : r.checks) {
        if (!names.count(c.name))
            continue;
        ++seen;
        out.require(c.status == Status::Pass, where + ": " + c.name + (c.witness.empty() ? "" : " (" + c.witness + ")"));
    }
    out.require(seen == names.size(), where + ": missing checks");
}

std::vector<JacobiExampleBundle> bundles()
{
    std::vector<JacobiExampleBundle> out;
    for (const auto& s : default_samples())
        out.push_back(build_bundle(s.alpha, s.beta, s.v));
    return out;
}

std::string tag(const JacobiExampleBundle& b)
{
    return "(" + b.alpha.str() + "," + b.beta.str() + "," + b.v.str() + ")";
}

std::vector<ClassicalWeight> catalog()
{
    return {
        ClassicalWeight::hermite(0),           ClassicalWeight::hermite(Rational(1, 2)),
        ClassicalWeight::hermite(-2),          ClassicalWeight::laguerre(0),
        ClassicalWeight::laguerre(Rational(1, 2)), ClassicalWeight::laguerre(Rational(3, 2)),
        ClassicalWeight::laguerre(Rational(5, 2)), ClassicalWeight::jacobi(0, 0),
        ClassicalWeight::jacobi(1, 2),         ClassicalWeight::jacobi(2, 1),
        ClassicalWeight::jacobi(3, 0),         ClassicalWeight::jacobi(Rational(1, 2), Rational(-1, 3)),
        ClassicalWeight::jacobi(Rational(3, 2), Rational(2, 3)),
    };
}

// ---------------------------------------------------------------- criteria

Outcome eigenvalue_closed_forms(const std::vector<JacobiExampleBundle>& bs)
{
    Outcome out;
    for (const auto& w : catalog()) {
        PolyN want;
        switch (w.family) {
        case ScalarFamily::Hermite: want = PolyN{0, -2}; break;
        case ScalarFamily::Laguerre: want = PolyN{0, -1}; break;
        case ScalarFamily::Jacobi: want = PolyN{Rational(0), -(w.a + w.b + 1), Rational(-1)}; break;
        }
        out.require(classical_eigenvalue(w) == want, "closed form for " + w.str());
        out.require(eigenvalue_poly(classical_delta(w))(0, 0) == want, "Lambda(delta) for " + w.str());
    }
    for (const auto& b : bs) {
        const auto expected = expected_eigenvalues(b);
        for (const char* name : {"D1", "D2", "D3", "D4"})
            out.require(eigenvalue_poly(b.op(name)) == expected.at(name), std::string("Lambda(") + name + ") at " + tag(b));
    }
    return out;
}

Outcome factorization(const std::vector<JacobiExampleBundle>& bs)
{
    Outcome out;
    for (const auto& b : bs)
        require_checks(out, verify_factorization(b, 4),
                       {"VN equals D", "constant term of VN (1,1)",
                        "adjoint of V over (W, wtilde I) equals N * (-W2/4)",
                        "adjoint of V over (W, wtilde (-W2/4)) equals N"},
                       tag(b));
    return out;
}

Outcome relations(const std::vector<JacobiExampleBundle>& bs)
{
    Outcome out;
    const std::set<std::string> eleven{
        "D2 D3 = D1^2 + v D1", "D3 D2 = D4^2 - v D4", "D1 D2 - D2 D4 = -v D2", "D4 D3 - D3 D1 = v D3",
        "D1 D4 = 0",           "D4 D1 = 0",           "D1 D3 = 0",             "D4 D2 = 0",
        "D2 D1 = 0",           "D2^2 = 0",            "D3 D4 = 0",
    };
    for (const auto& b : bs) {
        const Report r = verify_generators_and_relations(b, 4);
        require_checks(out, r, eleven, tag(b));
        require_checks(out, r, {"D3^2 = 0"}, tag(b));
    }
    return out;
}

Outcome center(const std::vector<JacobiExampleBundle>& bs)
{
    Outcome out;
    for (const auto& b : bs) {
        std::set<std::string> names{"leading coefficient of Z1 is (1-x^2)^2 I", "leading coefficient of Z2 is (1-x^2)^3 I",
                                    "cubic relation between Z1 and Z2"};
        for (const std::string g : {"D1", "D2", "D3", "D4"}) {
            names.insert("Z1 " + g + " = " + g + " Z1");
            names.insert("Z2 " + g + " = " + g + " Z2");
        }
        require_checks(out, verify_center(b), names, tag(b));
    }
    return out;
}

Outcome cofactor(const std::vector<JacobiExampleBundle>& bs)
{
    Outcome out;
    for (const auto& b : bs) {
        const CofactorResult cr = centralizing_cofactor(b.op("D"), b.w_tilde);
        const PolyN p = expected_quartic(b);
        const EigMat lad = eigenvalue_poly(compose(cr.cofactor, b.op("D")));
        out.require(lad == EigMat::identity(2).map([&](const PolyN& e) { return e * p; }), "Lambda(A D) at " + tag(b));
        out.require(cr.p_n.size() == 1 && cr.p_n[0] == p, "quartic at " + tag(b));
    }
    return out;
}

Outcome orthogonality(const std::vector<JacobiExampleBundle>& bs)
{
    Outcome out;
    for (const auto& b : bs) {
        const OrthogonalFamily of = orthogonal_family(b, 10);
        out.require(of.orthogonal && of.degrees_exact && of.q.size() == 11, "Q_n at " + tag(b));
    }
    return out;
}

Outcome darboux(const std::vector<JacobiExampleBundle>& bs)
{
    Outcome out;
    for (const auto& b : bs) {
        const DarbouxReport dr = darboux_verify(b.op("V"), b.w_tilde, b.w, 12);
        const auto co = matrix_jacobi_coeffs(MatrixJacobi{b.alpha, b.beta, b.v});
        const PolyMat scale = lift<XVar>(co.w2 * Rational(-1, 4));
        out.require(dr.n_op == b.op("N").map_coeffs([&](const PolyMat& f) { return f * scale; }), "(a) adjoint at " + tag(b));
        out.require(dr.a_n == eigenvalue_poly(b.op("V")) && dr.degree && dr.degree->preserving, "(b) at " + tag(b));
        out.require(dr.vn_in_source_algebra && dr.nv_in_target_algebra, "(c) at " + tag(b));
        out.require(dr.intertwines, "(d) at " + tag(b));
        out.require(dr.norm_identity, "(e) at " + tag(b));
    }
    return out;
}

Outcome direct_sums()
{
    Outcome out;
    const Rational a(1, 2);
    for (int k : {1, 2}) {
        const auto w0 = ClassicalWeight::laguerre(a), w1 = ClassicalWeight::laguerre(a + k);
        const WeightSpec w = WeightSpec::direct_sum({w0, w1});
        const GeneratorSet g = directsum_generators(w);
        out.require(g.size() == 6, "inventory for k = " + std::to_string(k));
        const MopSequence m = monic_mops(w, 8);
        for (std::size_t i = 0; i < g.size(); ++i)
            out.require(check_eigenfunction(g.ops[i], m).passed, g.labels[i] + " in the algebra, k = " + std::to_string(k));
    }
    const std::vector<ClassicalWeight> comps{ClassicalWeight::laguerre(a), ClassicalWeight::laguerre(a + 1),
                                             ClassicalWeight::laguerre(a + 2)};
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t r = 0; r < comps.size(); ++r)
            for (std::size_t j = 0; j < comps.size(); ++j) {
                const LadderRelation lr = ladder_relation(comps, i, r, j);
                out.require(lr.applicable && lr.holds,
                            "ladder " + std::to_string(i) + std::to_string(r) + std::to_string(j));
            }
    int linked = 0;
    for (const auto& w : catalog())
        for (const auto& u : catalog()) {
            if (w.family != u.family)
                continue;
            const PolyN te = t_eigenvalue(w, u);
            out.require(eigenvalue_poly(t_operator(w, u))(0, 0) == te, "t_eigenvalue " + w.str() + " -> " + u.str());
            linked += !te.is_zero();
        }
    out.require(linked > 20, "too few linked catalog pairs");
    return out;
}

Outcome direct_sum_centers()
{
    Outcome out;
    const Rational a(1, 2);
    const auto la = ClassicalWeight::laguerre(a), la1 = ClassicalWeight::laguerre(a + 1);
    const WeightSpec pair = WeightSpec::direct_sum({la, la1});
    const DirectSumCenter c2 = directsum_center(pair);
    const GeneratorSet g2 = directsum_generators(pair);
    out.require(c2.gens.size() == 1 && c2.classes.classes.size() == 1, "pair has a single block");
    for (const auto& z : c2.gens.ops)
        out.require(center_check(z, g2), "pair center element");

    const WeightSpec four = WeightSpec::direct_sum({ClassicalWeight::laguerre(0), la, la1, ClassicalWeight::laguerre(1)});
    const DirectSumCenter c4 = directsum_center(four);
    const GeneratorSet g4 = directsum_generators(four);
    out.require(c4.classes.classes == std::vector<std::vector<std::size_t>>{{0, 3}, {1, 2}}, "four-weight classes");
    out.require(c4.gens.labels == std::vector<std::string>{"Delta_1", "Idem_1", "Delta_2", "Idem_2"}, "four-weight labels");
    for (std::size_t i = 0; i < c4.gens.size(); ++i)
        out.require(center_check(c4.gens.ops[i], g4), c4.gens.labels[i] + " central");
    // the two blocks annihilate each other
    out.require(compose(c4.gens.ops[0], c4.gens.ops[2]).is_zero(), "Delta_1 Delta_2 = 0");
    out.require(compose(c4.gens.ops[1], c4.gens.ops[3]).is_zero(), "Idem_1 Idem_2 = 0");
    out.require(c4.gens.ops[1] + c4.gens.ops[3] == MatDiffOp::identity(4), "idempotents sum to I");
    return out;
}

// random operators for the property suites
std::mt19937& rng()
{
    static std::mt19937 g(20261015);
    return g;
}

Rational small_rational()
{
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    return Rational(num(rng()), den(rng()));
}

MatDiffOp random_op(unsigned max_order, int extra_deg)
{
    std::uniform_int_distribution<unsigned> o(0, max_order);
    const unsigned order = o(rng());
    std::vector<PolyMat> c;
    for (unsigned j = 0; j <= order; ++j) {
        PolyMat f(2, 2);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                std::vector<Rational> p(j + 1 + static_cast<unsigned>(extra_deg));
                for (auto& r : p)
                    r = small_rational();
                f(a, b) = PolyX(p);
            }
        c.push_back(f);
    }
    return MatDiffOp(c);
}

Outcome properties(const std::vector<JacobiExampleBundle>& bs)
{
    Outcome out;
    for (int t = 0; t < 200; ++t) {
        const MatDiffOp d1 = random_op(3, 0), d2 = random_op(3, 0);
        out.require(eigenvalue_poly(compose(d1, d2)) == eigenvalue_poly(d1) * eigenvalue_poly(d2),
                    "functoriality trial " + std::to_string(t));
    }
    const std::vector<WeightForm> forms{
        {ScalarFamily::Hermite, Rational(0), Rational(), PolyMat::identity(2)},
        {ScalarFamily::Hermite, Rational(1, 2), Rational(), lift<XVar>(QMat{{2, 1}, {1, 1}})},
        {ScalarFamily::Hermite, Rational(-1), Rational(), lift<XVar>(QMat{{3, -1}, {-1, 2}})},
    };
    for (int t = 0; t < 50; ++t) {
        const WeightForm& f = forms[static_cast<std::size_t>(t) % forms.size()];
        const MatDiffOp d = random_op(3, 1);
        out.require(formal_adjoint(formal_adjoint(d, f), f) == d, "involution trial " + std::to_string(t));
    }

    std::vector<WeightSpec> ws;
    for (const auto& w : catalog())
        ws.emplace_back(w);
    ws.push_back(WeightSpec::direct_sum({ClassicalWeight::laguerre(Rational(1, 2)), ClassicalWeight::laguerre(Rational(3, 2))}));
    ws.push_back(WeightSpec::conjugated(QMat{{1, 2}, {0, 1}},
                                        WeightSpec::direct_sum({ClassicalWeight::jacobi(1, 1), ClassicalWeight::jacobi(2, 0)})));
    for (const auto& b : bs)
        ws.push_back(b.w);
    for (const auto& w : ws) {
        const RecursionCoeffs rc = recursion_coeffs(monic_mops(w, 12));
        out.require(rc.residual_zero && rc.inner_product_identities, "recursion for " + to_json(w).dump());
    }

    for (const auto& b : bs) {
        GeneratorSet g;
        for (const char* name : {"D1", "D2", "D3", "D4"})
            g.add(name, b.op(name));
        out.require(!commutativity_probe(g), "D1..D4 reported commutative at " + tag(b));
    }
    for (const auto& w : catalog()) {
        GeneratorSet g;
        g.add("delta", classical_delta(w));
        out.require(commutativity_probe(g), "{delta} reported noncommutative for " + w.str());
    }
    return out;
}

} // namespace

int main()
{
    const auto bs = bundles();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"eigenvalue closed forms", [&] { return eigenvalue_closed_forms(bs); }},
        {"factorization V N = D and adjoint of V", [&] { return factorization(bs); }},
        {"eleven relations among D1..D4", [&] { return relations(bs); }},
        {"center Z1, Z2: commutation, leading terms, cubic", [&] { return center(bs); }},
        {"centralizing cofactor gives p(n) I", [&] { return cofactor(bs); }},
        {"orthogonality of Q_n = J_n . V up to n = 10", [&] { return orthogonality(bs); }},
        {"Darboux certificate parts (a)-(e)", [&] { return darboux(bs); }},
        {"direct-sum generators, ladders, t_eigenvalue", [] { return direct_sums(); }},
        {"centers of direct sums", [] { return direct_sum_centers(); }},
        {"property suites", [&] { return properties(bs); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const Error& e) {
            o.ok = false;
            o.detail = e.what();
        }
        std::printf("%-4s %2zu  %s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.ok ? "" : ("  [" + o.detail + "]").c_str());
        failed += !o.ok;
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
