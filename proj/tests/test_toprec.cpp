#include "spinhurwitz/toprec.hpp"

#include <gtest/gtest.h>

using namespace spinhurwitz;

namespace {

PoleForm perturbed(const PoleForm& w, const PoleKey& key)
{
    PoleForm out = w;
    out.add(key, w.terms.begin()->second.ring()->one());
    return out;
}

} // namespace

TEST(LocalLaurent, ArithmeticAndPrecision)
{
    auto R = RingSpec::make(1, 1);
    const LocalLaurent v = LocalLaurent::monomial(R->one(), 0, 1, 6);
    const LocalLaurent one = LocalLaurent::monomial(R->one(), 0, 0, 6);
    // 1/(1 - v) = 1 + v + v^2 + ...
    const LocalLaurent g = inverse(one - v);
    for (int e = 0; e < g.high(); ++e) EXPECT_EQ(g.coeff(e), R->one());
    EXPECT_THROW(g.coeff(g.high()), PrecisionError);
    EXPECT_EQ(inverse(v).valuation(), -1);
    EXPECT_EQ(derivative(pow(v, 3)).coeff(2), R->constant(3));
    EXPECT_TRUE(LocalLaurent().holomorphic());
}

TEST(TopRec, RamificationPoints)
{
    for (int q = 1; q <= 3; ++q)
        for (int r = 1; r <= 3; ++r) {
            TopRec tr(q, r);
            const int Q = q * r;
            ASSERT_EQ(static_cast<int>(tr.ram_points().size()), Q);
            for (int i = 0; i < Q; ++i) {
                EXPECT_EQ(pow(tr.ram_points()[i], Q), tr.ring()->constant(make_rational(1, Q)));
                for (int j = 0; j < i; ++j) EXPECT_NE(tr.ram_points()[i], tr.ram_points()[j]);
            }
        }
}

TEST(TopRec, DeckTransformation)
{
    for (auto [q, r] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {1, 3}}) {
        TopRec tr(q, r);
        const int Q = q * r;
        for (int i = 0; i < Q; ++i) {
            const LocalLaurent s = tr.deck(i, 7);
            EXPECT_EQ(s.coeff(1), -tr.ring()->one());
            // sigma(v) = -v + a v^2 + ..., a = (2 - (Q-1)(Q-2)) / (3 Q rho).
            const NumberRingElement a =
                ring_inv(tr.ram_points()[i]) * make_rational(2 - (Q - 1) * (Q - 2), 3 * Q);
            EXPECT_EQ(s.coeff(2), a) << "q=" << q << " r=" << r << " i=" << i;
            const LocalLaurent ss = compose(s, s);
            for (int e = 0; e < ss.high(); ++e) EXPECT_EQ(ss.coeff(e), e == 1 ? tr.ring()->one() : tr.ring()->zero());
        }
    }
    EXPECT_EQ(TopRec(1, 1).deck(0, 4).coeff(2), RingSpec::make(1, 1)->constant(make_rational(2, 3)));
}

TEST(TopRec, GaloisSumEqualsDirectResidues)
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}}) {
        TopRec tr(1, 2);
        PoleForm direct;
        direct.slots = n;
        for (int i = 0; i < 2; ++i)
            for (const auto& [k, c] : tr.residue(g, n, i).terms) direct.add(k, c);
        EXPECT_EQ(direct, tr.omega(g, n)) << "g=" << g << " n=" << n;
    }
}

TEST(TopRec, ThreePointFunctionForQEqualsOne)
{
    TopRec tr(1, 1);
    const PoleForm& w = tr.omega(0, 3);
    ASSERT_EQ(w.terms.size(), 1u);
    const PoleKey key{{0, 2}, {0, 2}, {0, 2}};
    ASSERT_TRUE(w.terms.count(key));
    EXPECT_EQ(w.terms.at(key), tr.ring()->one());
}

TEST(TopRec, ExpansionMatchesHurwitz)
{
    TopRec tr(1, 1);
    // h_{1;(2)} = 1/2, b = 3: mu * h / b! = 2 * (1/2) / 6.
    EXPECT_EQ(tr.expand(tr.omega(1, 1), 3).coeff({2}), make_rational(1, 6));
    const MultiSeries e = tr.expand(tr.omega(0, 3), 5);
    for (const auto& [mu, c] : e.terms()) {
        Exponents rev = mu;
        std::swap(rev[0], rev[2]);
        EXPECT_EQ(e.coeff(rev), c);
    }
}

TEST(TopRec, MarginDoesNotChangeResults)
{
    TopRec a(1, 2, 8), b(1, 2, 12);
    EXPECT_EQ(a.omega(1, 1), b.omega(1, 1));
    EXPECT_EQ(a.omega(0, 4), b.omega(0, 4));
}

TEST(TopRec, LoopEquationsHold)
{
    TopRec tr(1, 2);
    for (int i = 0; i < 2; ++i) {
        EXPECT_TRUE(tr.check_sy(i).ok);
        EXPECT_TRUE(tr.check_linear_loop(0, 3, i, 6).ok);
        EXPECT_TRUE(tr.check_quadratic_loop(0, 3, i, 6).ok);
        EXPECT_TRUE(tr.check_quadratic_delta(0, 3, i, 6).ok);
        EXPECT_TRUE(tr.check_linear_loop(1, 1, i, 6).ok);
        EXPECT_TRUE(tr.check_quadratic_loop(1, 1, i, 6).ok);
    }
    EXPECT_TRUE(tr.check_projection(0, 3).ok);
    EXPECT_TRUE(tr.check_projection(1, 1).ok);
}

TEST(TopRec, NegativeControls)
{
    TopRec tr(1, 2);
    const PoleForm w = tr.omega(0, 3);

    // A double pole is odd under the deck involution; a triple pole is not.
    const PoleForm extra = perturbed(w, PoleKey{{0, 3}, {0, 2}, {1, 2}});
    EXPECT_FALSE(tr.check_linear_loop(extra, 0, 6).ok);

    const PoleForm simple = perturbed(w, PoleKey{{0, 1}, {0, 2}, {0, 2}});
    EXPECT_FALSE(tr.check_projection(simple).ok);

    TopRec bad(1, 2);
    bad.set_omega(0, 3, extra);
    EXPECT_FALSE(bad.check_quadratic_loop(0, 3, 0, 6).ok);

    // Passes the linear loop, so only the quadratic one can reject it.
    const PoleForm odd = perturbed(w, PoleKey{{0, 2}, {0, 2}, {1, 2}});
    EXPECT_TRUE(tr.check_linear_loop(odd, 0, 6).ok);
    EXPECT_TRUE(tr.check_projection(odd).ok);
    TopRec subtle(1, 2);
    subtle.set_omega(0, 3, odd);
    EXPECT_FALSE(subtle.check_quadratic_loop(0, 3, 0, 6).ok);
    EXPECT_FALSE(subtle.check_quadratic_delta(0, 3, 0, 6).ok);
}

TEST(TopRec, NonRationalInputIsRejected)
{
    TopRec tr(1, 2);
    PoleForm w;
    w.slots = 1;
    w.add(PoleKey{{0, 2}}, tr.ring()->one());
    EXPECT_THROW(tr.expand(w, 4), NonRationalCoefficientError);
}

TEST(TopRec, ConjectureReport)
{
    const ConjectureReport rep = verify_conjecture(1, 2, 1, 2, 5);
    EXPECT_FALSE(rep.rows.empty());
    EXPECT_TRUE(rep.all_equal());
}
