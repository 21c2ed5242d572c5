#include "spinhurwitz/number_ring.hpp"

#include <sstream>
#include <utility>

namespace spinhurwitz {

namespace {

using IntPoly = std::vector<Integer>;

// Exact division of integer polynomials, divisor monic.
IntPoly divide_monic(IntPoly num, const IntPoly& den)
{
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {};
    IntPoly quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        Integer c = num[i];
        quot[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (num[i] != 0) throw Error("cyclotomic division is not exact");
    return quot;
}

} // namespace

std::vector<Integer> cyclotomic_polynomial(int n)
{
    if (n < 1) throw Error("cyclotomic_polynomial: n must be positive");
    IntPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
    return p;
}

RingSpec::RingSpec(int q, int r) : q_(q), r_(r), n_(q * r)
{
    if (q < 1 || r < 1) throw Error("ring_new: q and r must be positive");
    cyclotomic_ = cyclotomic_polynomial(n_);
    phi_ = static_cast<int>(cyclotomic_.size()) - 1;

    // w^phi = -sum_{a<phi} Phi[a] w^a, then shift upward.
    const int top = 2 * phi_ - 1;
    omega_red_.assign(top, std::vector<Rational>(phi_, 0));
    for (int a = 0; a < phi_; ++a) omega_red_[a][a] = 1;
    for (int a = phi_; a < top; ++a) {
        // w^a = w * w^{a-1}
        const auto& prev = omega_red_[a - 1];
        std::vector<Rational> cur(phi_, 0);
        Rational carry = prev[phi_ - 1];
        for (int j = phi_ - 1; j >= 1; --j) cur[j] = prev[j - 1];
        for (int j = 0; j < phi_; ++j) cur[j] -= carry * Rational(cyclotomic_[j]);
        omega_red_[a] = std::move(cur);
    }
}

std::shared_ptr<const RingSpec> RingSpec::make(int q, int r)
{
    return std::shared_ptr<const RingSpec>(new RingSpec(q, r));
}

NumberRingElement RingSpec::zero() const
{
    return NumberRingElement(shared_from_this(), std::vector<Rational>(dim(), 0));
}

NumberRingElement RingSpec::constant(const Rational& v) const
{
    std::vector<Rational> c(dim(), 0);
    c[0] = v;
    return NumberRingElement(shared_from_this(), std::move(c));
}

NumberRingElement RingSpec::one() const { return constant(1); }

NumberRingElement RingSpec::omega_pow(long i) const
{
    const long e = ((i % n_) + n_) % n_;
    std::vector<Rational> v(phi_, 0);
    v[0] = 1;
    for (long k = 0; k < e; ++k) {
        Rational carry = v[phi_ - 1];
        for (int j = phi_ - 1; j >= 1; --j) v[j] = v[j - 1];
        v[0] = 0;
        if (sgn(carry) != 0)
            for (int j = 0; j < phi_; ++j) v[j] -= carry * Rational(cyclotomic_[j]);
    }
    std::vector<Rational> c(dim(), 0);
    for (int a = 0; a < phi_; ++a) c[a * n_] = v[a];
    return NumberRingElement(shared_from_this(), std::move(c));
}

NumberRingElement RingSpec::radical() const
{
    std::vector<Rational> c(dim(), 0);
    if (n_ == 1)
        c[0] = 1;
    else
        c[1] = 1;
    return NumberRingElement(shared_from_this(), std::move(c));
}

NumberRingElement::NumberRingElement(RingPtr ring, std::vector<Rational> coef)
    : ring_(std::move(ring)), coef_(std::move(coef))
{
    if (static_cast<int>(coef_.size()) != ring_->dim()) throw Error("NumberRingElement: wrong dimension");
}

bool NumberRingElement::is_zero() const
{
    for (const auto& c : coef_)
        if (sgn(c) != 0) return false;
    return true;
}

bool NumberRingElement::is_rational() const
{
    for (std::size_t i = 1; i < coef_.size(); ++i)
        if (sgn(coef_[i]) != 0) return false;
    return true;
}

Rational NumberRingElement::to_rational() const
{
    if (!is_rational()) throw Error("ring element is not rational: " + to_string());
    return coef_[0];
}

NumberRingElement& NumberRingElement::operator+=(const NumberRingElement& o)
{
    for (std::size_t i = 0; i < coef_.size(); ++i)
        if (sgn(o.coef_[i]) != 0) coef_[i] += o.coef_[i];
    return *this;
}

NumberRingElement& NumberRingElement::operator-=(const NumberRingElement& o)
{
    for (std::size_t i = 0; i < coef_.size(); ++i)
        if (sgn(o.coef_[i]) != 0) coef_[i] -= o.coef_[i];
    return *this;
}

NumberRingElement& NumberRingElement::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        for (auto& c : coef_) c = 0;
        return *this;
    }
    for (auto& c : coef_)
        if (sgn(c) != 0) c *= s;
    return *this;
}

NumberRingElement NumberRingElement::operator-() const
{
    NumberRingElement r = *this;
    for (auto& c : r.coef_) c = -c;
    return r;
}

NumberRingElement operator*(const NumberRingElement& x, const NumberRingElement& y)
{
    const RingSpec& R = *x.ring_;
    const int n = R.order();
    const int phi = R.phi();
    const int wa = 2 * phi - 1;
    const int wb = 2 * n - 1;

    std::vector<std::pair<int, int>> nx, ny;
    for (int a = 0; a < phi; ++a)
        for (int b = 0; b < n; ++b) {
            if (sgn(x.coef_[a * n + b]) != 0) nx.emplace_back(a, b);
            if (sgn(y.coef_[a * n + b]) != 0) ny.emplace_back(a, b);
        }
    if (nx.empty() || ny.empty()) return R.zero();

    std::vector<Rational> tmp(static_cast<std::size_t>(wa) * wb, 0);
    std::vector<char> used(tmp.size(), 0);
    Rational prod;
    for (auto [a1, b1] : nx) {
        const Rational& cx = x.coef_[a1 * n + b1];
        for (auto [a2, b2] : ny) {
            mpq_mul(prod.get_mpq_t(), cx.get_mpq_t(), y.coef_[a2 * n + b2].get_mpq_t());
            const std::size_t idx = static_cast<std::size_t>(a1 + a2) * wb + (b1 + b2);
            tmp[idx] += prod;
            used[idx] = 1;
        }
    }

    const Rational inv_n = Rational(1, n);
    std::vector<Rational> out(static_cast<std::size_t>(R.dim()), 0);
    const auto& red = R.omega_reduction();
    for (int a = 0; a < wa; ++a)
        for (int b = 0; b < wb; ++b) {
            const std::size_t idx = static_cast<std::size_t>(a) * wb + b;
            if (!used[idx] || sgn(tmp[idx]) == 0) continue;
            Rational v = tmp[idx];
            int bb = b;
            if (bb >= n) {
                bb -= n;
                v *= inv_n;
            }
            if (a < phi) {
                out[a * n + bb] += v;
            } else {
                const auto& row = red[a];
                for (int j = 0; j < phi; ++j)
                    if (sgn(row[j]) != 0) out[j * n + bb] += v * row[j];
            }
        }
    return NumberRingElement(x.ring_, std::move(out));
}

bool operator==(const NumberRingElement& a, const NumberRingElement& b) { return a.coef_ == b.coef_; }

std::string NumberRingElement::to_string() const
{
    std::ostringstream os;
    bool first = true;
    const int n = ring_->order();
    for (int a = 0; a < ring_->phi(); ++a)
        for (int b = 0; b < n; ++b) {
            const Rational& c = coef_[a * n + b];
            if (sgn(c) == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c.get_str() << ")";
            if (a) os << "*w^" << a;
            if (b) os << "*c^" << b;
        }
    if (first) os << "0";
    return os.str();
}

NumberRingElement ring_inv(const NumberRingElement& a)
{
    if (a.is_zero()) throw ZeroInverseError("ring_inv: zero has no inverse");
    const RingSpec& R = *a.ring();
    const int d = R.dim();

    // Column j of M is a * e_j.
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, 0));
    for (int j = 0; j < d; ++j) {
        std::vector<Rational> e(d, 0);
        e[j] = 1;
        NumberRingElement col = a * NumberRingElement(a.ring(), std::move(e));
        for (int i = 0; i < d; ++i) m[i][j] = col.coefficients()[i];
    }
    m[0][d] = 1;

    for (int col = 0, row = 0; col < d; ++col, ++row) {
        int piv = -1;
        for (int i = row; i < d; ++i)
            if (sgn(m[i][col]) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw ZeroDivisorError("ring_inv: element is a zero divisor: " + a.to_string());
        std::swap(m[piv], m[row]);
        Rational inv = 1 / m[row][col];
        for (int j = col; j <= d; ++j) m[row][j] *= inv;
        for (int i = 0; i < d; ++i) {
            if (i == row || sgn(m[i][col]) == 0) continue;
            Rational f = m[i][col];
            for (int j = col; j <= d; ++j)
                if (sgn(m[row][j]) != 0) m[i][j] -= f * m[row][j];
        }
    }
    std::vector<Rational> sol(d);
    for (int i = 0; i < d; ++i) sol[i] = m[i][d];
    return NumberRingElement(a.ring(), std::move(sol));
}

NumberRingElement pow(const NumberRingElement& a, long e)
{
    if (e < 0) return pow(ring_inv(a), -e);
    NumberRingElement result = a.ring()->one();
    NumberRingElement base = a;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

} // namespace spinhurwitz
