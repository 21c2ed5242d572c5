#pragma once

#include "spinhurwitz/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace spinhurwitz {

class ZeroDivisorError : public Error {
public:
    using Error::Error;
};

class ZeroInverseError : public Error {
public:
    using Error::Error;
};

class NumberRingElement;

/// The ring Q(w)[c] / (Phi_{qr}(w), c^{qr} - 1/(qr)) hosting the ramification
/// points of x = z exp(-z^{qr}). Elements are dense coefficient arrays over the
/// basis w^a c^b, 0 <= a < phi(qr), 0 <= b < qr.
class RingSpec : public std::enable_shared_from_this<RingSpec> {
public:
    static std::shared_ptr<const RingSpec> make(int q, int r);

    int q() const { return q_; }
    int r() const { return r_; }
    int order() const { return n_; }
    int phi() const { return phi_; }
    int dim() const { return phi_ * n_; }

    NumberRingElement zero() const;
    NumberRingElement one() const;
    NumberRingElement constant(const Rational& v) const;
    /// w^i for any integer i.
    NumberRingElement omega_pow(long i) const;
    /// The formal radical c with c^{qr} = 1/(qr).
    NumberRingElement radical() const;

    /// Coefficients of w^a (a < 2 phi - 1) in the reduced basis.
    const std::vector<std::vector<Rational>>& omega_reduction() const { return omega_red_; }
    const std::vector<Integer>& cyclotomic() const { return cyclotomic_; }

private:
    RingSpec(int q, int r);

    int q_;
    int r_;
    int n_;
    int phi_;
    std::vector<Integer> cyclotomic_;
    std::vector<std::vector<Rational>> omega_red_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

/// Cyclotomic polynomial Phi_n as integer coefficients, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(int n);

class NumberRingElement {
public:
    NumberRingElement() = default;
    NumberRingElement(RingPtr ring, std::vector<Rational> coef);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Rational>& coefficients() const { return coef_; }
    const Rational& coeff(int a, int b) const { return coef_[a * ring_->order() + b]; }

    bool is_zero() const;
    bool is_rational() const;
    /// Throws unless is_rational().
    Rational to_rational() const;

    NumberRingElement& operator+=(const NumberRingElement& o);
    NumberRingElement& operator-=(const NumberRingElement& o);
    NumberRingElement& operator*=(const Rational& s);
    NumberRingElement operator-() const;

    friend NumberRingElement operator+(NumberRingElement a, const NumberRingElement& b) { return a += b; }
    friend NumberRingElement operator-(NumberRingElement a, const NumberRingElement& b) { return a -= b; }
    friend NumberRingElement operator*(const NumberRingElement& a, const NumberRingElement& b);
    friend NumberRingElement operator*(NumberRingElement a, const Rational& s) { return a *= s; }
    friend NumberRingElement operator*(const Rational& s, NumberRingElement a) { return a *= s; }
    friend bool operator==(const NumberRingElement& a, const NumberRingElement& b);
    friend bool operator!=(const NumberRingElement& a, const NumberRingElement& b) { return !(a == b); }

    std::string to_string() const;

private:
    RingPtr ring_;
    std::vector<Rational> coef_;
};

/// Multiplicative inverse by a linear solve against the multiplication-by-a
/// matrix. Throws ZeroInverseError for a = 0 and ZeroDivisorError when a is a
/// nonzero zero divisor.
NumberRingElement ring_inv(const NumberRingElement& a);

NumberRingElement pow(const NumberRingElement& a, long e);

} // namespace spinhurwitz
