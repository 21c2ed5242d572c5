#include "spinhurwitz/bernoulli.hpp"
#include "spinhurwitz/series.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spinhurwitz;

namespace {

MultiSeries random_series(std::mt19937& rng, int nvars, int cap, int maxexp)
{
    std::uniform_int_distribution<int> ex(0, maxexp), val(-9, 9);
    MultiSeries s(nvars, cap);
    for (int t = 0; t < 12; ++t) {
        Exponents e(nvars);
        for (int& x : e) x = ex(rng);
        s.add_term(e, make_rational(val(rng), 1 + ex(rng)));
    }
    return s;
}

} // namespace

TEST(MultiSeries, TruncatedProductMatchesNaive)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int nvars = 1 + trial % 3;
        const MultiSeries a = random_series(rng, nvars, 8, 5);
        const MultiSeries b = random_series(rng, nvars, 8, 5);
        EXPECT_EQ(ms_mul(a, b), ms_mul_naive(a, b)) << "trial " << trial;
    }
}

TEST(MultiSeries, ProductOfGeometricSeries)
{
    // (1 + x + x^2 + ...)^2 = sum (k+1) x^k.
    MultiSeries g(1, 10);
    for (int k = 0; k <= 10; ++k) g.add_term({k}, 1);
    const MultiSeries sq = ms_mul(g, g);
    for (int k = 0; k <= 10; ++k) EXPECT_EQ(sq.coeff({k}), Rational(k + 1));
    EXPECT_EQ(sq.coeff({11}), Rational(0));
}

TEST(MultiSeries, WindowRules)
{
    MultiSeries s(2, 4);
    s.set_floor(0, 0);
    EXPECT_THROW(s.add_term({-1, 2}, 1), WindowOverflowError);
    s.add_term({3, 3}, 1);
    EXPECT_TRUE(s.empty());
    s.set_cap(1, 2);
    s.add_term({1, 3}, 1);
    EXPECT_TRUE(s.empty());
    s.add_term({1, 2}, 1);
    s.add_term({1, 2}, -1);
    EXPECT_TRUE(s.empty());
}

TEST(MultiSeries, EulerOperator)
{
    MultiSeries s(2, 6);
    s.add_term({2, 3}, make_rational(1, 5));
    const MultiSeries d = ms_D(1, s);
    EXPECT_EQ(d.coeff({2, 3}), make_rational(3, 5));
}

TEST(ZPoly, KernelsAgreeWithBernoulliCoefficients)
{
    const ZPoly k = ZPoly::z_over_zeta(6);
    for (int j = 0; j <= 6; ++j) EXPECT_EQ(k[j], kernel_coeff(KernelKind::z_over_zeta, j)) << "j=" << j;
    // zeta(lz)/(lz) * z/zeta(z) at l = 1 is 1.
    ZPoly one = ZPoly::zeta_over_arg(6, 1);
    one *= ZPoly::z_over_zeta(6);
    EXPECT_EQ(one[0], Rational(1));
    for (int j = 1; j <= 6; ++j) EXPECT_EQ(one[j], Rational(0));
    // zeta(lz)/(lz) = 1 + l^2 z^2/24 + ...
    EXPECT_EQ(ZPoly::zeta_over_arg(3, 2)[1], make_rational(4, 24));
}

TEST(SingKernel, GeometricExpansion)
{
    const MultiSeries k = sing_kernel(2, 0, 1, 5, 10);
    for (int j = 1; j <= 5; ++j) EXPECT_EQ(k.coeff({j, -j}), Rational(1));
    EXPECT_EQ(k.size(), 5u);
}
