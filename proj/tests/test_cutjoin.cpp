#include "spinhurwitz/cutjoin.hpp"
#include "spinhurwitz/fock.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

using namespace spinhurwitz;

namespace {

Rational fock_scaled(int q, int r, int g, std::vector<int> mu)
{
    int size = 0;
    for (int m : mu) size += m;
    long b = 0;
    if (!try_branch_count(q, r, g, static_cast<int>(mu.size()), size, b)) return 0;
    std::sort(mu.begin(), mu.end(), std::greater<int>());
    return connected_hurwitz(q, r, g, Partition(mu)) / Rational(factorial(b));
}

} // namespace

TEST(CutJoin, MatchesFockAtLowDegree)
{
    const int N = 7;
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 3; ++r) {
            CutJoinSolver s(q, r, N);
            for (int g = 0; g <= 1; ++g) {
                for (int a = 1; a <= N; ++a) EXPECT_EQ(s.correlator(g, 1).coeff({a}), fock_scaled(q, r, g, {a}));
                for (int a = 1; a < N; ++a)
                    for (int b = 1; a + b <= N; ++b)
                        EXPECT_EQ(s.correlator(g, 2).coeff({a, b}), fock_scaled(q, r, g, {a, b}))
                            << "q=" << q << " r=" << r << " g=" << g << " mu=" << a << "," << b;
            }
            for (int a = 1; a <= 3; ++a)
                for (int b = 1; b <= 3; ++b)
                    for (int c = 1; a + b + c <= N; ++c)
                        EXPECT_EQ(s.correlator(0, 3).coeff({a, b, c}), fock_scaled(q, r, 0, {a, b, c}));
            EXPECT_GT(s.laurent_checks(), 0);
        }
}

TEST(CutJoin, MethodsAgree)
{
    for (int q = 1; q <= 2; ++q) {
        EXPECT_EQ(cj_r2(q, 1, 1, 7), cj_general(q, 2, 1, 1, 7));
        EXPECT_EQ(cj_r2(q, 0, 3, 7), cj_general(q, 2, 0, 3, 7));
        for (int r = 1; r <= 3; ++r) EXPECT_EQ(cj_g0(q, r, 3, 7), cj_general(q, r, 0, 3, 7));
    }
}

TEST(CutJoin, Constants)
{
    EXPECT_EQ(c_const(0, 4, 2), Rational(-1));
    EXPECT_EQ(c_const(1, 2, 2), make_rational(1, 24));
    EXPECT_EQ(c_const(0, 3, 2), Rational(0));

    CutJoinSolver s(1, 2, 6);
    EXPECT_EQ(s.rhs_constant(0, 4), c_const(0, 4, 2));
    EXPECT_EQ(s.rhs_constant(1, 2), c_const(1, 2, 2));
    // For odd n the residue sum is +1, so the constant flips sign.
    CutJoinSolver s1(1, 1, 6);
    EXPECT_EQ(s1.rhs_constant(0, 3), Rational(1));
}

TEST(CutJoin, OrderedPoleKernel)
{
    const MultiSeries lo = ordered_pole_kernel(2, 0, 1, 4, 8);
    const MultiSeries hi = ordered_pole_kernel(2, 1, 0, 4, 8);
    EXPECT_EQ(lo.coeff({2, -2}), Rational(1));
    EXPECT_EQ(hi.coeff({0, 0}), Rational(-1));
    EXPECT_EQ(hi.coeff({3, -3}), Rational(-1));
}

TEST(CutJoin, BinomialIdentities)
{
    for (int p = 0; p <= 8; ++p)
        for (int l = 0; p + l <= 8; ++l) EXPECT_TRUE(topdelta_identity(p, l)) << p << "," << l;
}
