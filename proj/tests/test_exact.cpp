// Exact scalars, polynomials, rational functions, matrices, units and the
// fraction-free solver.

#include <random>

#include <gtest/gtest.h>

#include "mvop/linsolve.hpp"
#include "mvop/matrix.hpp"
#include "mvop/ratfunc.hpp"
#include "mvop/units.hpp"

using namespace mvop;

namespace {

std::mt19937& rng()
{
    static std::mt19937 g(20240611);
    return g;
}

Rational small_rational()
{
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    return Rational(num(rng()), den(rng()));
}

PolyX random_poly(int max_deg)
{
    std::uniform_int_distribution<int> d(0, max_deg);
    std::vector<Rational> c(static_cast<std::size_t>(d(rng()) + 1));
    for (auto& r : c)
        r = small_rational();
    return PolyX(c);
}

PolyMat random_polymat(std::size_t n, int max_deg)
{
    PolyMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = random_poly(max_deg);
    return m;
}

} // namespace

TEST(Rational, ParseAndNormalize)
{
    EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
    EXPECT_EQ(Rational::parse(" -7 "), Rational(-7));
    EXPECT_EQ(Rational(2, -4).str(), "-1/2");
    EXPECT_THROW(Rational::parse("1/0"), Error);
    EXPECT_THROW(Rational::parse("0.5"), Error);
}

TEST(Poly, Derivative)
{
    const PolyX x = PolyX::var();
    EXPECT_EQ(derivative(x * x * x), PolyX({0, 0, 3}));
    EXPECT_EQ(derivative(PolyX()), PolyX());
    EXPECT_EQ(derivative(PolyX{1, 0, -1}), PolyX({0, -2}));
}

TEST(Poly, DivmodAndGcd)
{
    const PolyX a{-1, 0, 1}; // x^2 - 1
    const PolyX b{1, 1};
    auto [q, r] = a.divmod(b);
    EXPECT_EQ(q, PolyX({-1, 1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(gcd(a, PolyX{-1, 0, 0, 1} - PolyX{0, 0, 0, 0}), PolyX({-1, 1}));
}

TEST(Poly, RingAxioms)
{
    for (int trial = 0; trial < 40; ++trial) {
        PolyX a = random_poly(4), b = random_poly(4), c = random_poly(4);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
    }
}

TEST(Mat, RingAxioms)
{
    for (int trial = 0; trial < 15; ++trial) {
        PolyMat a = random_polymat(2, 2), b = random_polymat(2, 2), c = random_polymat(2, 2);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) * c, a * c + b * c);
    }
}

TEST(Mat, DeterminantAndAdjugate)
{
    const QMat m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    EXPECT_EQ(determinant(m), Rational(18));
    EXPECT_EQ(m * adjugate(m), QMat::identity(3) * Rational(18));
    EXPECT_THROW(inverse(QMat{{1, 2}, {2, 4}}), Error);
}

TEST(RatFunc, Normalized)
{
    RatFunc f(PolyX{-1, 0, 1}, PolyX{2, 2});
    EXPECT_TRUE(f.is_polynomial());
    EXPECT_EQ(f.num(), PolyX({Rational(-1, 2), Rational(1, 2)}));
    RatFunc g(PolyX{1}, PolyX{0, 2});
    EXPECT_EQ(g.den(), PolyX({0, 1}));
    EXPECT_EQ(g.derivative(), RatFunc(PolyX{Rational(-1, 2)}, PolyX{0, 0, 1}));
}

TEST(MatInverse, Examples)
{
    EXPECT_EQ(mat_inverse(RatMat::identity(2)), RatMat::identity(2));
    const PolyX x = PolyX::var();
    RatMat d{{RatFunc(x), RatFunc(1)}, {RatFunc(0), RatFunc(1)}};
    d(0, 1) = RatFunc(0);
    RatMat want{{RatFunc(PolyX(1), x), RatFunc(0)}, {RatFunc(0), RatFunc(1)}};
    EXPECT_EQ(mat_inverse(d), want);

    // degree-one part of V at (alpha, beta, v) = (0, 0, 1): [[x, 1], [1, x]]
    PolyMat v1{{x, PolyX(1)}, {PolyX(1), x}};
    EXPECT_EQ(determinant(v1), PolyX({-1, 0, 1}));
    RatMat r = to_ratmat(v1);
    EXPECT_EQ(r * mat_inverse(r), RatMat::identity(2));

    EXPECT_THROW(mat_inverse(RatMat{{RatFunc(x), RatFunc(x)}, {RatFunc(1), RatFunc(1)}}), Error);
}

TEST(MatInverse, Involution)
{
    int tested = 0;
    for (int trial = 0; trial < 20; ++trial) {
        RatMat a = to_ratmat(random_polymat(2, 2));
        if (determinant(a).is_zero())
            continue;
        EXPECT_EQ(mat_inverse(mat_inverse(a)), a);
        ++tested;
    }
    EXPECT_GT(tested, 10);
}

TEST(Units, Convert)
{
    UnitScalar g3{Rational(1), UnitTag::laguerre(2)}; // Gamma(3)
    EXPECT_EQ(unit_convert(g3, UnitTag::laguerre(1)).coeff, Rational(2));

    UnitScalar zero{Rational(0), UnitTag::laguerre(Rational(9, 2))};
    EXPECT_TRUE(unit_convert(zero, UnitTag::hermite(0)).coeff.is_zero());

    UnitScalar j{Rational(1), UnitTag::jacobi(1, 1)};
    EXPECT_EQ(unit_convert(j, UnitTag::jacobi(0, 0)).coeff, Rational(2, 3));

    EXPECT_THROW(unit_convert(g3, UnitTag::laguerre(Rational(1, 2))), Error);
    EXPECT_THROW(unit_convert(g3, UnitTag::jacobi(0, 0)), Error);
    EXPECT_THROW(unit_convert({Rational(1), UnitTag::hermite(0)}, UnitTag::hermite(1)), Error);
}

TEST(Units, Transitive)
{
    for (const Rational& a : {Rational(0), Rational(1, 2), Rational(-1, 3), Rational(7, 5)}) {
        UnitScalar s{Rational(3, 7), UnitTag::laguerre(a + 2)};
        auto direct = unit_convert(s, UnitTag::laguerre(a));
        auto hop = unit_convert(unit_convert(s, UnitTag::laguerre(a + 1)), UnitTag::laguerre(a));
        EXPECT_EQ(direct.coeff, hop.coeff);

        UnitScalar t{Rational(5), UnitTag::jacobi(a + 2, a + 1)};
        auto jd = unit_convert(t, UnitTag::jacobi(a, a));
        auto jh = unit_convert(unit_convert(t, UnitTag::jacobi(a + 1, a)), UnitTag::jacobi(a, a));
        EXPECT_EQ(jd.coeff, jh.coeff);
    }
}

TEST(Units, SumKeepsClassesApart)
{
    UnitSum s = UnitSum(Rational(1), UnitTag::laguerre(1)) + UnitSum(Rational(1), UnitTag::laguerre(Rational(1, 2)));
    EXPECT_EQ(s.terms().size(), 2u);
    EXPECT_EQ(s.coeff_in(UnitTag::laguerre(0)), Rational(1));
    EXPECT_THROW(s.as_scalar(UnitTag::laguerre(0)), Error);
    EXPECT_TRUE((s - s).is_zero());
}

TEST(Solve, UniqueRankDeficientInconsistent)
{
    const QMat a{{2, 1}, {1, 3}};
    auto r = solve_exact(a, QMat{{3}, {4}});
    ASSERT_EQ(r.status, SolveStatus::Unique);
    EXPECT_EQ(r.x, QMat({{1}, {1}}));

    auto rd = solve_exact(QMat{{1, 2}, {2, 4}}, QMat{{1}, {2}});
    EXPECT_EQ(rd.status, SolveStatus::RankDeficient);
    auto in = solve_exact(QMat{{1, 2}, {2, 4}}, QMat{{1}, {3}});
    EXPECT_EQ(in.status, SolveStatus::Inconsistent);

    // overdetermined but consistent
    auto od = solve_exact(QMat{{1, 0}, {0, 1}, {1, 1}}, QMat{{Rational(1, 2)}, {Rational(1, 3)}, {Rational(5, 6)}});
    ASSERT_EQ(od.status, SolveStatus::Unique);
    EXPECT_EQ(od.x(1, 0), Rational(1, 3));
}
