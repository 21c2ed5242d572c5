#include "spinhurwitz/bernoulli.hpp"
#include "spinhurwitz/number_ring.hpp"

#include <gtest/gtest.h>

using namespace spinhurwitz;

namespace {

// Bernoulli numbers from sum_{k<=n} binom(n+1,k) B_k = 0.
std::vector<Rational> bernoulli_oracle(int n)
{
    std::vector<Rational> B(n + 1, 0);
    B[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational s = 0;
        for (int k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * B[k];
        B[m] = -s / Rational(m + 1);
    }
    return B;
}

// Series of (e^{z/2} - e^{-z/2})/z in z^2, inverted term by term.
std::vector<Rational> z_over_zeta_oracle(int jmax)
{
    std::vector<Rational> f(jmax + 1);
    for (int k = 0; k <= jmax; ++k) f[k] = make_rational(1, 1) / (pow(Rational(4), k) * Rational(factorial(2 * k + 1)));
    std::vector<Rational> g(jmax + 1, 0);
    g[0] = 1;
    for (int m = 1; m <= jmax; ++m) {
        Rational s = 0;
        for (int k = 1; k <= m; ++k) s += f[k] * g[m - k];
        g[m] = -s;
    }
    return g;
}

} // namespace

TEST(Rational, MakeRationalCanonicalizes)
{
    EXPECT_EQ(make_rational(14, 6).get_str(), "7/3");
    EXPECT_EQ(make_rational(-4, -2), Rational(2));
    EXPECT_EQ(rational_from_strings("10", "-4").get_str(), "-5/2");
}

TEST(Rational, FactorialBinomialPow)
{
    EXPECT_EQ(factorial(10), Integer(3628800));
    EXPECT_EQ(binomial(10, 3), Integer(120));
    EXPECT_EQ(binomial(3, 5), Integer(0));
    EXPECT_EQ(pow(make_rational(2, 3), -2), make_rational(9, 4));
}

TEST(Bernoulli, MatchesRecursionOracle)
{
    const auto B = bernoulli_oracle(20);
    for (int k = 0; k <= 20; ++k) EXPECT_EQ(bernoulli(k), B[k]) << "k=" << k;
    EXPECT_EQ(bernoulli(12), make_rational(-691, 2730));
}

TEST(Bernoulli, KernelCoefficientsMatchSeriesInversion)
{
    const auto g = z_over_zeta_oracle(8);
    for (int j = 0; j <= 8; ++j) EXPECT_EQ(kernel_coeff(KernelKind::z_over_zeta, j), g[j]) << "j=" << j;
    EXPECT_EQ(kernel_coeff(KernelKind::z_over_zeta, 1), make_rational(-1, 24));
    EXPECT_EQ(kernel_coeff(KernelKind::zeta_over_w, 1), make_rational(1, 24));
}

TEST(NumberRing, CyclotomicPolynomials)
{
    EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<Integer>{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<Integer>{1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(9), (std::vector<Integer>{1, 0, 0, 1, 0, 0, 1}));
}

TEST(NumberRing, DefiningRelations)
{
    for (int q = 1; q <= 3; ++q)
        for (int r = 1; r <= 3; ++r) {
            auto R = RingSpec::make(q, r);
            const int n = q * r;
            EXPECT_EQ(pow(R->radical(), n), R->constant(make_rational(1, n)));
            EXPECT_EQ(R->omega_pow(n), R->one());
            EXPECT_EQ(R->omega_pow(-1) * R->omega_pow(1), R->one());
            if (n > 1) {
                NumberRingElement s = R->zero();
                for (int i = 0; i < n; ++i) s += R->omega_pow(i);
                EXPECT_TRUE(s.is_zero());
            }
        }
}

TEST(NumberRing, InverseAndErrors)
{
    auto R = RingSpec::make(3, 3);
    const NumberRingElement a = R->radical() + R->omega_pow(1) * make_rational(2, 3) + R->one();
    EXPECT_EQ(a * ring_inv(a), R->one());
    EXPECT_THROW(ring_inv(R->zero()), ZeroInverseError);

    // c^4 - 1/4 = (c^2 - 1/2)(c^2 + 1/2): a nonzero zero divisor.
    auto R4 = RingSpec::make(2, 2);
    const NumberRingElement zd = pow(R4->radical(), 2) - R4->constant(make_rational(1, 2));
    EXPECT_FALSE(zd.is_zero());
    EXPECT_THROW(ring_inv(zd), ZeroDivisorError);
}

TEST(NumberRing, Rationality)
{
    auto R = RingSpec::make(1, 2);
    EXPECT_TRUE(R->constant(make_rational(5, 7)).is_rational());
    EXPECT_EQ(R->constant(make_rational(5, 7)).to_rational(), make_rational(5, 7));
    EXPECT_FALSE(R->radical().is_rational());
    EXPECT_THROW(R->radical().to_rational(), Error);
    // c^2 = 1/2.
    EXPECT_EQ((R->radical() * R->radical()).to_rational(), make_rational(1, 2));
}
