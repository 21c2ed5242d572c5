#include "spinhurwitz/closed_forms.hpp"
#include "spinhurwitz/fock.hpp"

#include <gtest/gtest.h>

using namespace spinhurwitz;

TEST(ClosedForms, InverseSeriesComposesToIdentity)
{
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 3; ++r) {
            const CurveSpec spec{q, r};
            const USeries id = useries_compose(x_of_z(spec, 9), z_series(spec, 9));
            for (int k = 0; k <= 9; ++k) EXPECT_EQ(id[k], Rational(k == 1 ? 1 : 0)) << q << r << " k=" << k;
        }
}

TEST(ClosedForms, TreeFunction)
{
    // z = x e^z has coefficients n^{n-1}/n!.
    const USeries z = z_series({1, 1}, 8);
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(z[n], Rational(pow(Integer(n), n - 1)) / Rational(factorial(n)));
}

TEST(ClosedForms, SpinTwoY)
{
    // z = x e^{z^2}: z = x + x^3 + ...
    const USeries y = h01_series({1, 2}, 6).y;
    EXPECT_EQ(y[1], Rational(1));
    EXPECT_EQ(y[2], Rational(0));
    EXPECT_EQ(y[3], Rational(1));
}

TEST(ClosedForms, GenusZeroOnePointMatchesFock)
{
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 2; ++r) {
            const USeries h = h01_series({q, r}, 8).h01;
            for (int d = 1; d <= 8; ++d) {
                long b = 0;
                Rational f = 0;
                if (try_branch_count(q, r, 0, 1, d, b)) f = connected_hurwitz(q, r, 0, Partition({d})) / Rational(factorial(b));
                EXPECT_EQ(h[d], f) << "q=" << q << " r=" << r << " d=" << d;
            }
        }
}

TEST(ClosedForms, GenusOneOnePointMatchesFock)
{
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 2; ++r) {
            const USeries h = h11_series({q, r}, 7);
            for (int d = 1; d <= 7; ++d) {
                long b = 0;
                Rational f = 0;
                if (try_branch_count(q, r, 1, 1, d, b)) f = connected_hurwitz(q, r, 1, Partition({d})) / Rational(factorial(b));
                EXPECT_EQ(h[d], f) << "q=" << q << " r=" << r << " d=" << d;
            }
        }
}

TEST(ClosedForms, TwoPointFunction)
{
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 2; ++r) {
            const CurveSpec spec{q, r};
            EXPECT_EQ(w02_diag_closed(spec, 8), w02_diag_from_h02(spec, 8));
            EXPECT_TRUE(eq02_residual(spec, 7).empty());
        }
}

TEST(ClosedForms, ChainRuleInT)
{
    for (const std::vector<Rational>& f : std::vector<std::vector<Rational>>{{0, 0, 0, 1}, {1, 0, 2, 0, 3}})
        for (const USeries& res : {dtx_residual({1, 2}, f, 8), dtx_residual({2, 1}, f, 8)})
            for (const Rational& c : res) EXPECT_EQ(c, Rational(0));
}

TEST(ClosedForms, ResidueSum)
{
    EXPECT_EQ(residue_sum_check({1, 2, 3}), Rational(1));
    EXPECT_EQ(residue_sum_check({1, 2}), Rational(-1));
    EXPECT_EQ(residue_sum_check({make_rational(1, 2), 3, -4, 7}), Rational(-1));
    EXPECT_THROW(residue_sum_check({1, 2, 1}), DuplicateInputError);
}
