#include "spinhurwitz/calibration.hpp"
#include "spinhurwitz/closed_forms.hpp"
#include "spinhurwitz/fock.hpp"
#include "spinhurwitz/partition.hpp"
#include "spinhurwitz/perm_oracle.hpp"

#include <gtest/gtest.h>

using namespace spinhurwitz;

namespace {

long partition_count(int n)
{
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int s = part; s <= n; ++s) p[s] += p[s - part];
    return p[n];
}

long bell(int n)
{
    std::vector<long> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<long> next{row.back()};
        for (long v : row) next.push_back(next.back() + v);
        row = next;
    }
    return row.front();
}

} // namespace

TEST(Partition, CountsMatchOracles)
{
    for (int n = 1; n <= 12; ++n) EXPECT_EQ(static_cast<long>(partitions_of(n).size()), partition_count(n));
    for (int n = 1; n <= 7; ++n) EXPECT_EQ(static_cast<long>(set_partitions(n).size()), bell(n));
}

TEST(Partition, Basics)
{
    Partition p({1, 2, 1});
    EXPECT_EQ(p.parts(), (std::vector<int>{2, 1, 1}));
    EXPECT_EQ(p.weight(), 4);
    EXPECT_EQ(p.automorphisms(), Integer(2));
    EXPECT_THROW(Partition({2, 0}), Error);
}

TEST(Fock, HeisenbergCommutator)
{
    FockVector v(1);
    v.add(Partition({1}), 1);
    for (int k = 1; k <= 3; ++k) {
        FockVector a = alpha_raise(k, alpha_lower(k, v));
        FockVector b = alpha_lower(k, alpha_raise(k, v));
        for (const auto& [lam, c] : b.terms()) a.add(lam, -c);
        FockVector expect = v;
        expect *= Rational(k);
        EXPECT_EQ(a, expect) << "k=" << k;
    }
}

TEST(Fock, PowerSumPairing)
{
    // <p_mu, p_mu> = z_mu = prod_k k^{m_k} m_k!
    FockVector v = FockVector::vacuum();
    for (int k : {2, 1, 1}) v = alpha_lower(k, v);
    EXPECT_EQ(pairing(v, v), Rational(2 * 1 * 2));
}

TEST(Fock, BranchCount)
{
    EXPECT_EQ(branch_count(1, 1, 0, Partition({3})), 2);
    EXPECT_EQ(branch_count(1, 2, 0, Partition({3})), 1);
    EXPECT_THROW(branch_count(2, 2, 0, Partition({1, 1})), NonIntegralBError);
    EXPECT_THROW(branch_count(2, 1, 0, Partition({3})), DivisibilityError);
    long b = 0;
    EXPECT_FALSE(try_branch_count(2, 2, 0, 2, 2, b));
}

TEST(Fock, CalibrationIsUniqueAndDefault)
{
    const CalibrationResult res = calibrate_convention();
    ASSERT_TRUE(res.unique());
    EXPECT_EQ(res.matching.front(), default_convention());
}

TEST(Fock, NamedPermutationValues)
{
    EXPECT_EQ(perm_oracle(1, 0, Partition({2})), make_rational(1, 2));
    EXPECT_EQ(perm_oracle(1, 0, Partition({3})), Rational(1));
    EXPECT_EQ(perm_oracle(1, 1, Partition({2})), make_rational(1, 2));
    EXPECT_EQ(perm_oracle(1, 0, Partition({1, 1})), Rational(1));
    EXPECT_EQ(connected_hurwitz(1, 1, 0, Partition({2})), make_rational(1, 2));
    EXPECT_EQ(connected_hurwitz(1, 1, 1, Partition({2})), make_rational(1, 2));
    EXPECT_EQ(connected_hurwitz(1, 1, 0, Partition({1, 1})), Rational(1));
    EXPECT_THROW(perm_oracle(1, 0, Partition({8})), SizeLimitError);
}

TEST(Fock, AgreesWithPermutationCounts)
{
    int checked = 0;
    for (int q = 1; q <= 2; ++q)
        for (int d = 1; d <= 6; ++d)
            for (const Partition& mu : partitions_of(d))
                for (int g = 0; g <= 1; ++g) {
                    long b = 0;
                    if (!try_branch_count(q, 1, g, mu.length(), d, b)) continue;
                    EXPECT_EQ(connected_hurwitz(q, 1, g, mu), perm_oracle(q, g, mu))
                        << "q=" << q << " g=" << g << " mu=" << mu.to_string();
                    ++checked;
                }
    EXPECT_GT(checked, 50);
}

TEST(Fock, LagrangeOracleForGenusZeroOnePoint)
{
    // h_{0;(3)} for q=1, r=2: b = 1, and H_{0,1} = h/b! is the Lagrange coefficient 1/3.
    EXPECT_EQ(connected_hurwitz(1, 2, 0, Partition({3})), make_rational(1, 3));
    const USeries h01 = h01_series({1, 2}, 5).h01;
    EXPECT_EQ(h01[3], make_rational(1, 3));
}

TEST(Fock, DisconnectedRebuildsFromConnected)
{
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 2; ++r)
            for (const std::vector<int>& mu : std::vector<std::vector<int>>{{2, 2}, {2, 1, 1}, {3, 1}, {2, 2, 2}})
                for (int g = -1; g <= 1; ++g) {
                    int size = 0;
                    for (int m : mu) size += m;
                    long b = 0;
                    if (!try_branch_count(q, r, g, static_cast<int>(mu.size()), size, b)) continue;
                    EXPECT_EQ(vev_disconnected(q, r, g, Partition(mu)), disconnected_from_connected(q, r, g, mu))
                        << "q=" << q << " r=" << r << " g=" << g;
                }
}

TEST(Fock, ZeroPolicy)
{
    EXPECT_EQ(connected_hurwitz(2, 2, 0, Partition({1, 1}), BPolicy::zero), Rational(0));
    EXPECT_THROW(connected_hurwitz(2, 2, 0, Partition({1, 1})), NonIntegralBError);
}
