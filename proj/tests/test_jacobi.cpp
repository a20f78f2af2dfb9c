// The irreducible 2x2 Jacobi example, module decomposition, and JSON I/O.

#include <gtest/gtest.h>

#include "mvop/mvop.hpp"

using namespace mvop;

namespace {

bool all_pass(const Report& r, std::string* first = nullptr)
{
    for (const auto& c : r.checks)
        if (c.status != Status::Pass) {
            if (first)
                *first = c.name + ": " + c.witness;
            return false;
        }
    return true;
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST(Bundle, Construction)
{
    const auto b = build_bundle(0, 0, 1);
    const auto co = matrix_jacobi_coeffs(MatrixJacobi{0, 0, 1});
    EXPECT_EQ(co.w2, QMat({{3, 0}, {0, 1}}));
    EXPECT_EQ(co.w1, QMat({{-3, 2}, {2, -1}}));
    EXPECT_EQ(co.w0, QMat({{1, -1}, {-1, 1}}));
    for (const char* name : {"V", "N", "D", "A", "D1", "D2", "D3", "D4", "D5", "Z1", "Z2"})
        EXPECT_NO_THROW(b.op(name));
    EXPECT_NO_THROW(build_bundle(1, Rational(1, 2), 2));
    EXPECT_EQ(kind_of([] { build_bundle(0, 0, 3); }), ErrorKind::ParameterConstraintViolated);
    EXPECT_EQ(kind_of([] { build_bundle(1, 0, 1); }), ErrorKind::ParameterConstraintViolated);
    EXPECT_EQ(kind_of([] { build_bundle(1, 0, -3); }), ErrorKind::ParameterConstraintViolated);
    EXPECT_NO_THROW(build_bundle(1, 0, -2));
}

TEST(Bundle, EvenOrders)
{
    const auto b = build_bundle(2, 1, Rational(5, 2));
    for (const char* name : {"D", "A", "D1", "D2", "D3", "D4", "D5", "Z1", "Z2"})
        EXPECT_EQ(b.op(name).order() % 2, 0) << name;
}

TEST(Bundle, SuitesPassAtDefaultSamples)
{
    for (const auto& s : default_samples()) {
        const auto b = build_bundle(s.alpha, s.beta, s.v);
        std::string why;
        EXPECT_TRUE(all_pass(verify_factorization(b, 8), &why)) << s.label() << " " << why;
        EXPECT_TRUE(all_pass(verify_generators_and_relations(b, 8), &why)) << s.label() << " " << why;
        EXPECT_TRUE(all_pass(verify_center(b), &why)) << s.label() << " " << why;
    }
}

TEST(Bundle, SpotValues)
{
    const Rational al(1), be(1, 2), v(2);
    const auto b = build_bundle(al, be, v);
    const Rational s = al + be;
    EXPECT_EQ(compose(b.op("V"), b.op("N")).coeff(0)(0, 0), PolyX(-(-v + 4 + s) * (v + 2 + s) / 4));
    const PolyN expect12 = PolyN{-v + 4 + s, 2} * PolyN{-v + 2 + s, 2} * Rational(-1, 4);
    EXPECT_EQ(eigenvalue_poly(b.op("D2"))(0, 1), expect12);
    EXPECT_TRUE(compose(b.op("D1"), b.op("D4")).is_zero());
    EXPECT_TRUE(compose(b.op("D2"), b.op("D2")).is_zero());
    EXPECT_EQ(compose(b.op("Z1"), b.op("D3")), compose(b.op("D3"), b.op("Z1")));
    const EigMat lz = eigenvalue_poly(compose(b.op("A"), b.op("D")));
    EXPECT_EQ(lz, EigMat::identity(2).map([&](const PolyN& e) { return e * expected_quartic(b); }));
    EXPECT_EQ(evaluate(eigenvalue_poly(b.op("D")), Rational(0)), coeff(b.op("D").coeff(0), 0));
}

TEST(Module, Decompositions)
{
    const auto b = build_bundle(1, Rational(1, 2), 2);
    const auto d1 = decompose_in_module_basis(b, b.op("D1"));
    EXPECT_TRUE(d1.residual_zero);
    EXPECT_EQ(d1.coeffs, (std::map<std::string, ZPoly>{{"D1", {{{0, 0}, Rational(1)}}}}));

    const auto z1 = decompose_in_module_basis(b, b.op("Z1"));
    EXPECT_EQ(z1.coeffs, (std::map<std::string, ZPoly>{{"I", {{{1, 0}, Rational(1)}}}}));

    const MatDiffOp b6 = compose_all({b.op("D5"), b.op("D5"), b.op("D2")});
    const auto d6 = decompose_in_module_basis(b, b6);
    EXPECT_TRUE(d6.residual_zero);

    const MatDiffOp mixed = 3 * compose(b.op("Z2"), b.op("D5")) - compose(b.op("Z1"), b.op("D4")) +
                            Rational(1, 2) * b.op("D3") + MatDiffOp::identity(2);
    EXPECT_TRUE(decompose_in_module_basis(b, mixed).residual_zero);
    EXPECT_TRUE(decompose_in_module_basis(b, compose(b.op("Z2"), b.op("Z2"))).residual_zero);

    EXPECT_EQ(kind_of([&] { decompose_in_module_basis(b, b.op("V")); }), ErrorKind::NotDecomposable);
    EXPECT_EQ(kind_of([&] { decompose_in_module_basis(b, MatDiffOp::d(2).placed(2, 2, 0, 0)); }),
              ErrorKind::NotDecomposable);
}

TEST(Module, OrthogonalFamily)
{
    const auto b = build_bundle(2, 1, Rational(5, 2));
    const auto of = orthogonal_family(b, 10);
    EXPECT_TRUE(of.orthogonal);
    EXPECT_TRUE(of.leading_is_lambda);
    EXPECT_TRUE(of.degrees_exact);
    const Rational s = b.s(), v = b.v;
    EXPECT_EQ(of.q[0], lift<XVar>(QMat{{(v + 2 + s) / 2, 0}, {0, (-v + 2 + s) / 2}}));
    EXPECT_TRUE(inner_product(of.q[0], of.q[1], b.w).is_zero());
}

TEST(Json, WeightRoundTrip)
{
    const std::vector<WeightSpec> ws{
        ClassicalWeight::hermite(Rational(1, 2)),
        ClassicalWeight::laguerre(Rational(3, 2)),
        ClassicalWeight::jacobi(1, 2),
        WeightSpec::direct_sum({ClassicalWeight::laguerre(0), ClassicalWeight::laguerre(1)}),
        WeightSpec::conjugated(QMat{{1, 2}, {0, 1}}, WeightSpec::direct_sum({ClassicalWeight::jacobi(1, 1), ClassicalWeight::jacobi(0, 2)})),
        MatrixJacobi{1, Rational(1, 2), 2},
    };
    for (const auto& w : ws) {
        const json j = to_json(w);
        EXPECT_EQ(to_json(weight_from_json(j)), j);
        EXPECT_EQ(moments(weight_from_json(j), 4), moments(w, 4));
    }
    EXPECT_EQ(kind_of([] { weight_from_json(json::parse(R"({"type":"direct_sum","parts":[]})")); }),
              ErrorKind::UnsupportedWeight);
    EXPECT_EQ(kind_of([] { weight_from_json(json::parse(R"({"type":"matrix_jacobi","alpha":"0","beta":"0","v":"3"})")); }),
              ErrorKind::ParameterConstraintViolated);
    EXPECT_EQ(kind_of([] { weight_from_json(json::parse(R"({"type":"laguerre","alpha":0.5})")); }),
              ErrorKind::InvalidArgument);
}

TEST(Json, OperatorAndReport)
{
    const MatDiffOp d = MatDiffOp::d(2, PolyX{1, 0, Rational(-1, 3)}) + MatDiffOp::identity(1);
    const json j = to_json(d);
    EXPECT_EQ(j.dump(), R"({"coeffs":[[[["1"]]],[[[]]],[[["1","0","-1/3"]]]],"size":[1,1]})");

    Report r;
    r.add("ok", true);
    r.add("bad", false, "residual", 3);
    const json jr = to_json(r);
    EXPECT_EQ(jr["checks"][1]["first_failure_n"], 3);
    EXPECT_EQ(jr["checks"][1]["status"], "FAIL");
    EXPECT_FALSE(jr["checks"][0].contains("witness"));
    EXPECT_EQ(jr.dump(), to_json(r).dump());
}

TEST(Json, MomentIngestion)
{
    const json good = json::parse(R"({"moments": [[["2","0"],["0","1"]], [["0","1/2"],["1/2","0"]], [["1","0"],["0","1"]],
                                                  [["0","0"],["0","0"]], [["1","0"],["0","2"]]]})");
    const MomentSeq mu = moments_from_json(good);
    ASSERT_EQ(mu.size(), 5u);
    EXPECT_EQ(mu[1](0, 1), UnitSum(Rational(1, 2)));
    EXPECT_EQ(kind_of([] { moments_from_json(json::parse(R"([[["1","2"],["0","1"]]])")); }), ErrorKind::InvalidArgument);
}

TEST(Suites, DirectSumReports)
{
    const WeightSpec w = WeightSpec::direct_sum({ClassicalWeight::laguerre(Rational(1, 2)), ClassicalWeight::laguerre(Rational(3, 2))});
    std::string why;
    EXPECT_TRUE(all_pass(directsum_suite(w, 6), &why)) << why;
    const WeightSpec k2 = WeightSpec::direct_sum({ClassicalWeight::laguerre(Rational(1, 2)), ClassicalWeight::laguerre(Rational(5, 2))});
    EXPECT_TRUE(all_pass(directsum_suite(k2, 6), &why)) << why;
}
