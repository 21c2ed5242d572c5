#include "spinhurwitz/toprec.hpp"

#include "spinhurwitz/fock.hpp"
#include "spinhurwitz/partition.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace spinhurwitz {

LocalLaurent::LocalLaurent(RingPtr ring, int point, int low, std::vector<NumberRingElement> coef)
    : ring_(std::move(ring)), point_(point), low_(low), coef_(std::move(coef))
{
}

LocalLaurent LocalLaurent::monomial(const NumberRingElement& c, int point, int e, int rel)
{
    std::vector<NumberRingElement> coef(rel, c.ring()->zero());
    if (rel > 0) coef[0] = c;
    return LocalLaurent(c.ring(), point, e, std::move(coef));
}

LocalLaurent LocalLaurent::zero(RingPtr ring, int point, int low, int high)
{
    std::vector<NumberRingElement> coef(std::max(0, high - low), ring->zero());
    return LocalLaurent(std::move(ring), point, low, std::move(coef));
}

NumberRingElement LocalLaurent::coeff(int e) const
{
    if (e >= high())
        throw PrecisionError("coefficient of u^" + std::to_string(e) + " requested, series known below u^" +
                             std::to_string(high()));
    if (e < low_) return ring_->zero();
    return coef_[e - low_];
}

int LocalLaurent::valuation() const
{
    for (std::size_t k = 0; k < coef_.size(); ++k)
        if (!coef_[k].is_zero()) return low_ + static_cast<int>(k);
    return high();
}

bool LocalLaurent::holomorphic() const
{
    if (high() < 0) throw PrecisionError("principal part not fully known");
    return valuation() >= 0;
}

LocalLaurent LocalLaurent::truncated(int h) const
{
    if (h >= high()) return *this;
    LocalLaurent out = *this;
    out.coef_.resize(std::max(0, h - low_), ring_->zero());
    return out;
}

LocalLaurent& LocalLaurent::operator+=(const LocalLaurent& o)
{
    if (!o.ring_) return *this;
    if (!ring_) return *this = o;
    const int lo = std::min(low_, o.low_);
    const int hi = std::min(high(), o.high());
    std::vector<NumberRingElement> coef(std::max(0, hi - lo), ring_->zero());
    for (int e = lo; e < hi; ++e) {
        if (e >= low_) coef[e - lo] += coef_[e - low_];
        if (e >= o.low_) coef[e - lo] += o.coef_[e - o.low_];
    }
    low_ = lo;
    coef_ = std::move(coef);
    return *this;
}

LocalLaurent& LocalLaurent::operator-=(const LocalLaurent& o)
{
    if (!o.ring_) return *this;
    LocalLaurent neg = o;
    for (auto& c : neg.coef_) c = -c;
    return *this += neg;
}

LocalLaurent& LocalLaurent::operator*=(const NumberRingElement& s)
{
    for (auto& c : coef_)
        if (!c.is_zero()) c = c * s;
    return *this;
}

LocalLaurent operator*(const LocalLaurent& a, const LocalLaurent& b)
{
    if (!a.ring_ || !b.ring_) return LocalLaurent();
    const std::size_t n = std::min(a.coef_.size(), b.coef_.size());
    std::vector<NumberRingElement> coef(n, a.ring_->zero());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coef_[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (b.coef_[j].is_zero()) continue;
            coef[i + j] += a.coef_[i] * b.coef_[j];
        }
    }
    return LocalLaurent(a.ring_, a.point_, a.low_ + b.low_, std::move(coef));
}

std::string LocalLaurent::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coef_.size(); ++k) {
        if (coef_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coef_[k].to_string() << ")*u^" << (low_ + static_cast<int>(k));
    }
    if (first) os << "0";
    os << " + O(u^" << high() << ")";
    return os.str();
}

LocalLaurent inverse(const LocalLaurent& a)
{
    const int v = a.valuation();
    if (v >= a.high()) throw PrecisionError("inverse of a series with no known nonzero term");
    const auto& c = a.coefficients();
    const int off = v - a.low();
    const int n = a.high() - v;
    const NumberRingElement lead_inv = ring_inv(c[off]);
    std::vector<NumberRingElement> d(n, a.ring()->zero());
    d[0] = lead_inv;
    for (int k = 1; k < n; ++k) {
        NumberRingElement acc = a.ring()->zero();
        for (int j = 1; j <= k; ++j)
            if (!c[off + j].is_zero() && !d[k - j].is_zero()) acc += c[off + j] * d[k - j];
        d[k] = -(acc * lead_inv);
    }
    return LocalLaurent(a.ring(), a.point(), -v, std::move(d));
}

LocalLaurent pow(const LocalLaurent& a, int e)
{
    if (e < 0) return pow(inverse(a), -e);
    LocalLaurent result = LocalLaurent::monomial(a.ring()->one(), a.point(), 0, a.high() - a.low());
    LocalLaurent base = a;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

LocalLaurent derivative(const LocalLaurent& a)
{
    std::vector<NumberRingElement> coef = a.coefficients();
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] *= Rational(a.low() + static_cast<int>(k));
    return LocalLaurent(a.ring(), a.point(), a.low() - 1, std::move(coef));
}

LocalLaurent compose(const LocalLaurent& f, const LocalLaurent& s)
{
    if (f.low() < 0) throw Error("compose: outer series must be a power series");
    if (s.valuation() < 1) throw Error("compose: inner series must vanish at 0");
    // f is known below v^{f.high()}, hence f(s) below u^{f.high()}.
    const int hi = std::min(f.high(), f.high() - 1 + s.high());
    LocalLaurent acc = LocalLaurent::zero(f.ring(), s.point(), 0, hi);
    LocalLaurent sp = LocalLaurent::monomial(f.ring()->one(), s.point(), 0, hi);
    for (int k = 0; k < f.high(); ++k) {
        if (k > 0) sp = (sp * s).truncated(hi);
        if (sp.low() >= hi) break;
        if (k < f.low()) continue;
        const NumberRingElement& c = f.coefficients()[k - f.low()];
        if (c.is_zero()) continue;
        LocalLaurent term = sp * c;
        // sp may carry fewer known terms than hi; the sum keeps the minimum.
        acc += term;
    }
    return acc;
}

void PoleForm::add(const PoleKey& key, const NumberRingElement& c)
{
    if (c.is_zero()) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

int PoleForm::max_order() const
{
    int m = 0;
    for (const auto& [key, c] : terms)
        for (const Pole& p : key) m = std::max(m, p.order);
    return m;
}

bool PoleForm::operator==(const PoleForm& o) const
{
    return slots == o.slots && terms == o.terms;
}

std::string PoleForm::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (std::size_t j = 0; j < key.size(); ++j)
            os << "/(z" << j << "-rho" << key[j].point << ")^" << key[j].order;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

int pole_bound(int g, int n)
{
    return 2 * (3 * g - 3 + n) + 2;
}

bool stable(int g, int n)
{
    return 2 * g - 2 + n > 0;
}

// Image of x under the ring automorphism c -> c w^i, w -> w.
NumberRingElement galois(const NumberRingElement& x, int i)
{
    const RingSpec& R = *x.ring();
    const int n = R.order();
    const int phi = R.phi();
    std::vector<Rational> out(R.dim(), 0);
    for (int a = 0; a < phi; ++a)
        for (int b = 0; b < n; ++b) {
            const Rational& c = x.coeff(a, b);
            if (sgn(c) == 0) continue;
            const NumberRingElement w = R.omega_pow(static_cast<long>(a) + static_cast<long>(i) * b);
            for (int a2 = 0; a2 < phi; ++a2) {
                const Rational& wc = w.coeff(a2, 0);
                if (sgn(wc) != 0) out[a2 * n + b] += c * wc;
            }
        }
    return NumberRingElement(x.ring(), std::move(out));
}

LocalLaurent galois(const LocalLaurent& s, int i, int qr)
{
    std::vector<NumberRingElement> coef;
    coef.reserve(s.coefficients().size());
    for (const auto& c : s.coefficients()) coef.push_back(galois(c, i));
    return LocalLaurent(s.ring(), (s.point() + i) % qr, s.low(), std::move(coef));
}

void add_into(LocalForm& form, const PoleKey& key, const LocalLaurent& s)
{
    auto it = form.find(key);
    if (it == form.end())
        form.emplace(key, s);
    else
        it->second += s;
}

std::string principal_part(const LocalLaurent& s)
{
    std::ostringstream os;
    bool first = true;
    for (int e = s.low(); e < 0 && e < s.high(); ++e) {
        const NumberRingElement c = s.coeff(e);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")*u^" << e;
    }
    return os.str();
}

std::string key_string(const PoleKey& key)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t j = 0; j < key.size(); ++j) {
        if (j) os << ",";
        os << "(" << key[j].point << "," << key[j].order << ")";
    }
    os << "]";
    return os.str();
}

CheckResult check_holomorphic(const LocalForm& form, int order, const std::string& what)
{
    CheckResult res;
    for (const auto& [key, s] : form) {
        if (s.high() <= order)
            throw PrecisionError(what + ": series known only below u^" + std::to_string(s.high()));
        if (!s.holomorphic()) {
            res.ok = false;
            res.detail = what + " key " + key_string(key) + " principal part " + principal_part(s);
            return res;
        }
    }
    return res;
}

} // namespace

TopRec::TopRec(int q, int r, int margin) : q_(q), r_(r), qr_(q * r), margin_(margin)
{
    if (q < 1 || r < 1) throw Error("TopRec needs q, r >= 1");
    ring_ = RingSpec::make(q, r);
    const NumberRingElement c = ring_->radical();
    const NumberRingElement c_inv = ring_inv(c);
    for (int i = 0; i < qr_; ++i) {
        rho_.push_back(c * ring_->omega_pow(i));
        rho_inv_.push_back(c_inv * ring_->omega_pow(-i));
    }
}

LocalLaurent TopRec::deck(int i, int order) const
{
    if (order < 2) throw Error("deck needs order >= 2");
    std::lock_guard<std::mutex> lock(deck_mutex_);
    auto it = deck_.lower_bound(order);
    if (it == deck_.end()) {
        // Matching log x along the fibre: L(v) = log(1 + v/rho) - ((rho + v)^{qr} - rho^{qr}).
        const NumberRingElement& rho = rho_[0];
        const NumberRingElement& rinv = rho_inv_[0];
        const int len = order + 2;
        std::vector<NumberRingElement> lam(len, ring_->zero());
        NumberRingElement rp = ring_->one();
        for (int m = 1; m < len; ++m) {
            rp = rp * rinv;
            lam[m] = rp * make_rational(m % 2 == 1 ? 1 : -1, m);
        }
        for (int m = 1; m <= qr_ && m < len; ++m)
            lam[m] -= pow(rho, qr_ - m) * Rational(binomial(qr_, m));
        if (!lam[1].is_zero()) throw NoSolutionError("rho is not a critical point of x");
        const NumberRingElement two_l2_inv = ring_inv(lam[2] * Rational(2));
        const LocalLaurent lamser(ring_, 0, 0, lam);
        const LocalLaurent u = LocalLaurent::monomial(ring_->one(), 0, 1, len);
        const LocalLaurent lam_u = compose(lamser, u);

        std::vector<NumberRingElement> s{-ring_->one()};
        for (int k = 2; k < order; ++k) {
            std::vector<NumberRingElement> ext = s;
            ext.push_back(ring_->zero());
            ext.push_back(ring_->zero());
            const LocalLaurent cur(ring_, 0, 1, ext);
            const LocalLaurent lam_s = compose(lamser.truncated(k + 2), cur);
            const NumberRingElement diff = lam_s.coeff(k + 1) - lam_u.coeff(k + 1);
            s.push_back(diff * two_l2_inv);
        }
        LocalLaurent sol(ring_, 0, 1, s);
        const LocalLaurent check = compose(lamser.truncated(order + 1), sol) - lam_u.truncated(order + 1);
        if (check.valuation() < check.high()) throw NoSolutionError("deck transformation matching failed");
        it = deck_.emplace(order, sol).first;
    }
    LocalLaurent base = it->second.truncated(order);
    return i == 0 ? base : galois(base, i, qr_);
}

LocalLaurent TopRec::y_local(int i, bool sigma, int rel) const
{
    std::vector<NumberRingElement> coef(rel, ring_->zero());
    for (int m = 0; m <= q_ && m < rel; ++m)
        coef[m] = pow(rho_[i], q_ - m) * Rational(binomial(q_, m));
    LocalLaurent y(ring_, i, 0, std::move(coef));
    if (!sigma) return y;
    return compose(y, deck(i, rel + 2));
}

LocalLaurent TopRec::dlogx_local(int i, int rel) const
{
    std::vector<NumberRingElement> coef(rel, ring_->zero());
    NumberRingElement rp = rho_inv_[i];
    for (int m = 0; m < rel; ++m) {
        coef[m] = m % 2 == 0 ? rp : -rp;
        rp = rp * rho_inv_[i];
    }
    for (int m = 0; m < qr_ && m < rel; ++m)
        coef[m] -= pow(rho_[i], qr_ - 1 - m) * Rational(Integer(qr_) * binomial(qr_ - 1, m));
    return LocalLaurent(ring_, i, 0, std::move(coef));
}

const LocalLaurent& TopRec::basis(int i, bool sigma, int point, int order, int rel)
{
    const auto key = std::make_tuple(i, sigma, point, order, rel);
    auto it = basis_.find(key);
    if (it != basis_.end()) return it->second;

    LocalLaurent out;
    if (point == i) {
        out = LocalLaurent::monomial(ring_->one(), i, -order, rel);
    } else {
        // (d + v)^{-k} with d = rho_i - rho_point.
        const NumberRingElement dinv = ring_inv(rho_[i] - rho_[point]);
        std::vector<NumberRingElement> coef(rel + 1, ring_->zero());
        NumberRingElement dp = pow(dinv, order);
        for (int m = 0; m <= rel; ++m) {
            Rational b(binomial(order + m - 1, m));
            if (m % 2 == 1) b = -b;
            coef[m] = dp * b;
            dp = dp * dinv;
        }
        out = LocalLaurent(ring_, i, 0, std::move(coef));
    }
    if (sigma) {
        const LocalLaurent s = deck(i, rel + 2);
        const LocalLaurent sp = derivative(s);
        if (point == i)
            out = pow(s, -order) * sp;
        else
            out = compose(out, s) * sp;
        out = out.truncated(out.low() + rel);
    } else {
        out = out.truncated(out.low() + rel);
    }
    return basis_.emplace(key, std::move(out)).first->second;
}

LocalForm TopRec::local(const PoleForm& w, int i, bool sigma, int rel)
{
    LocalForm form;
    for (const auto& [key, c] : w.terms) {
        LocalLaurent s = basis(i, sigma, key[0].point, key[0].order, rel) * c;
        add_into(form, PoleKey(key.begin() + 1, key.end()), s);
    }
    return form;
}

LocalForm TopRec::local_bergman(int i, bool sigma, int kmax, int rel)
{
    // dz dz_1/(z - z_1)^2 = sum_a (a+1) u^a dz_1/(z_1 - rho_i)^{a+2}.
    LocalForm form;
    const LocalLaurent s = sigma ? deck(i, rel + 2) : LocalLaurent();
    const LocalLaurent sp = sigma ? derivative(s) : LocalLaurent();
    LocalLaurent sa = sigma ? LocalLaurent::monomial(ring_->one(), i, 0, rel) : LocalLaurent();
    for (int k = 2; k <= kmax; ++k) {
        const NumberRingElement c = ring_->constant(Rational(k - 1));
        LocalLaurent term;
        if (sigma) {
            term = (sa * sp) * c;
            sa = (sa * s).truncated(sa.low() + 1 + rel);
        } else {
            term = LocalLaurent::monomial(c, i, k - 2, rel);
        }
        form.emplace(PoleKey{Pole{i, k}}, term.truncated(term.low() + rel));
    }
    return form;
}

LocalForm TopRec::local_pair(const PoleForm& w, int i, int rel)
{
    LocalForm form;
    for (const auto& [key, c] : w.terms) {
        LocalLaurent s = basis(i, false, key[0].point, key[0].order, rel) *
                         basis(i, true, key[1].point, key[1].order, rel) * c;
        add_into(form, PoleKey(key.begin() + 2, key.end()), s);
    }
    return form;
}

LocalForm TopRec::combination(int g, int n, int i, int rel, bool with_one)
{
    const int m = n - 1;
    int kmax = 2;
    for (int g1 = 0; g1 <= g; ++g1)
        for (int n1 = 1; n1 <= n + 1; ++n1)
            if (stable(g1, n1)) kmax = std::max(kmax, pole_bound(g1, n1) + 3);

    LocalForm form;
    if (g >= 1) {
        if (g == 1 && n == 1) {
            const LocalLaurent s = deck(i, rel + 2);
            const LocalLaurent u = LocalLaurent::monomial(ring_->one(), i, 1, rel + 2);
            add_into(form, {}, derivative(s) * pow(u - s, -2));
        } else {
            for (const auto& [key, s] : local_pair(omega(g - 1, n + 1), i, rel)) add_into(form, key, s);
        }
    }

    auto factor = [&](int gf, int nf, bool sigma) -> LocalForm {
        if (gf == 0 && nf == 1) {
            LocalLaurent v = y_local(i, sigma, rel) * dlogx_local(i, rel);
            return LocalForm{{PoleKey{}, v}};
        }
        if (gf == 0 && nf == 2) return local_bergman(i, sigma, kmax, rel);
        return local(omega(gf, nf), i, sigma, rel);
    };

    for (int g1 = 0; g1 <= g; ++g1) {
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> I, J;
            for (int j = 0; j < m; ++j) (mask >> j & 1u ? I : J).push_back(j);
            const int nA = 1 + static_cast<int>(I.size());
            const int nB = 1 + static_cast<int>(J.size());
            const int g2 = g - g1;
            const bool oneA = g1 == 0 && nA == 1;
            const bool oneB = g2 == 0 && nB == 1;
            if (!with_one && (oneA || oneB)) continue;
            const LocalForm A = factor(g1, nA, false);
            const LocalForm B = factor(g2, nB, true);
            for (const auto& [ka, sa] : A)
                for (const auto& [kb, sb] : B) {
                    PoleKey key(m);
                    for (std::size_t t = 0; t < I.size(); ++t) key[I[t]] = ka[t];
                    for (std::size_t t = 0; t < J.size(); ++t) key[J[t]] = kb[t];
                    add_into(form, key, sa * sb);
                }
        }
    }
    return form;
}

int TopRec::working_order(int g, int n) const
{
    return 2 * pole_bound(g, n) + margin_;
}

void TopRec::set_omega(int g, int n, PoleForm w)
{
    store_[{g, n}] = std::move(w);
}

PoleForm TopRec::residue(int g, int n, int i)
{
    if (!stable(g, n)) throw Error("residue needs 2g - 2 + n > 0");
    const int bound = pole_bound(g, n);
    const int kmax = bound + 2;
    const int rel = working_order(g, n);

    const LocalForm rec = combination(g, n, i, rel, false);
    const LocalLaurent s = deck(i, rel + 2);
    const LocalLaurent u = LocalLaurent::monomial(ring_->one(), i, 1, rel + 2);
    const LocalLaurent den = (y_local(i, false, rel) - y_local(i, true, rel)) * dlogx_local(i, rel) *
                             ring_->constant(Rational(2));
    const LocalLaurent kappa = inverse(den);

    // 1/(z0 - z) - 1/(z0 - sigma z) = sum_a (u^a - s^a)/(z0 - rho_i)^{a+1}.
    std::vector<LocalLaurent> diffs;
    LocalLaurent ua = LocalLaurent::monomial(ring_->one(), i, 0, rel + 2);
    LocalLaurent sa = ua;
    for (int a = 1; a < kmax; ++a) {
        ua = ua * u;
        sa = sa * s;
        diffs.push_back(ua - sa);
    }

    PoleForm out;
    out.slots = n;
    for (const auto& [key, series] : rec) {
        const LocalLaurent w = kappa * series;
        for (int a = 1; a < kmax; ++a) {
            const LocalLaurent& d = diffs[a - 1];
            NumberRingElement res = ring_->zero();
            for (int e = d.low(); e <= -1 - w.low(); ++e) {
                const NumberRingElement dc = d.coeff(e);
                if (dc.is_zero()) continue;
                res += dc * w.coeff(-1 - e);
            }
            PoleKey full{Pole{i, a + 1}};
            full.insert(full.end(), key.begin(), key.end());
            out.add(full, res);
        }
    }
    return out;
}

PoleForm TopRec::compute(int g, int n)
{
    PoleForm out = galois_sum(residue(g, n, 0));
    out.slots = n;
    const int bound = pole_bound(g, n);
    for (const auto& [key, c] : out.terms)
        for (const Pole& p : key)
            if (p.order > bound || p.order < 1)
                throw Error("omega_{" + std::to_string(g) + "," + std::to_string(n) + "} has a pole of order " +
                            std::to_string(p.order) + " outside the expected range");
    return out;
}

PoleForm TopRec::galois_sum(const PoleForm& base) const
{
    PoleForm out;
    out.slots = base.slots;
    for (int i = 0; i < qr_; ++i)
        for (const auto& [key, c] : base.terms) {
            PoleKey k = key;
            for (Pole& p : k) p.point = (p.point + i) % qr_;
            out.add(k, i == 0 ? c : galois(c, i));
        }
    return out;
}

const PoleForm& TopRec::omega(int g, int n)
{
    auto it = store_.find({g, n});
    if (it != store_.end()) return it->second;
    PoleForm w = compute(g, n);
    return store_.emplace(std::make_pair(g, n), std::move(w)).first->second;
}

MultiSeries TopRec::expand(const PoleForm& w, int dmax) const
{
    // e[point][order][mu] = [z^{mu-1}] e^{mu z^{qr}} (z - rho)^{-order}, the
    // coefficient of x^mu dx/x in dz/(z - rho)^order.
    int kmax = std::max(1, w.max_order());
    std::vector<std::vector<std::vector<NumberRingElement>>> e(
        qr_, std::vector<std::vector<NumberRingElement>>(kmax + 1,
                                                         std::vector<NumberRingElement>(dmax + 1, ring_->zero())));
    for (int a = 0; a < qr_; ++a)
        for (int k = 1; k <= kmax; ++k)
            for (int mu = 1; mu <= dmax; ++mu) {
                NumberRingElement acc = ring_->zero();
                Rational mut = 1;
                for (int t = 0; qr_ * t <= mu - 1; ++t) {
                    if (t > 0) mut *= make_rational(mu, t);
                    const int m = mu - 1 - qr_ * t;
                    Rational b(binomial(m + k - 1, k - 1));
                    if (k % 2 == 1) b = -b;
                    acc += pow(rho_inv_[a], k + m) * (b * mut);
                }
                e[a][k][mu] = acc;
            }

    const int n = w.slots;
    std::map<Exponents, NumberRingElement> acc;
    Exponents mu(n, 0);
    for (const auto& [key, c] : w.terms) {
        std::function<void(int, int, const NumberRingElement&)> rec = [&](int j, int left,
                                                                         const NumberRingElement& val) {
            if (j == n) {
                auto it = acc.find(mu);
                if (it == acc.end())
                    acc.emplace(mu, val);
                else
                    it->second += val;
                return;
            }
            const int reserve = n - j - 1;
            for (int m = 1; m <= left - reserve; ++m) {
                const NumberRingElement& f = e[key[j].point][key[j].order][m];
                if (f.is_zero()) continue;
                mu[j] = m;
                rec(j + 1, left - m, val * f);
            }
        };
        rec(0, dmax, c);
    }

    MultiSeries out(n, dmax);
    for (const auto& [ex, v] : acc) {
        if (v.is_zero()) continue;
        if (!v.is_rational()) {
            std::ostringstream os;
            os << "coefficient at x^(";
            for (std::size_t j = 0; j < ex.size(); ++j) os << (j ? "," : "") << ex[j];
            os << ") is " << v.to_string();
            throw NonRationalCoefficientError(os.str());
        }
        out.add_term(ex, v.to_rational());
    }
    return out;
}

CheckResult TopRec::check_linear_loop(int g, int n, int i, int order)
{
    if (g == 0 && n == 2) {
        const int rel = order + 2 + margin_;
        const LocalLaurent linv = inverse(dlogx_local(i, rel));
        LocalForm sum;
        for (const auto& [k, s] : local_bergman(i, false, order + 4, rel)) add_into(sum, k, s);
        for (const auto& [k, s] : local_bergman(i, true, order + 4, rel)) add_into(sum, k, s);
        for (auto& [k, s] : sum) s = s * linv;
        return check_holomorphic(sum, order, "linear loop");
    }
    return check_linear_loop(omega(g, n), i, order);
}

CheckResult TopRec::check_linear_loop(const PoleForm& w, int i, int order)
{
    const int rel = order + 2 * w.max_order() + margin_;
    const LocalLaurent linv = inverse(dlogx_local(i, rel));
    LocalForm sum;
    for (const auto& [k, s] : local(w, i, false, rel)) add_into(sum, k, s);
    for (const auto& [k, s] : local(w, i, true, rel)) add_into(sum, k, s);
    for (auto& [k, s] : sum) s = s * linv;
    return check_holomorphic(sum, order, "linear loop");
}

CheckResult TopRec::check_quadratic_loop(int g, int n, int i, int order)
{
    const int rel = order + 2 * (stable(g, n) ? pole_bound(g, n) : 2) + margin_;
    const LocalLaurent linv = inverse(dlogx_local(i, rel));
    const LocalLaurent linv2 = linv * linv;
    LocalForm form = combination(g, n, i, rel, true);
    for (auto& [k, s] : form) s = s * linv2;
    return check_holomorphic(form, order, "quadratic loop");
}

CheckResult TopRec::check_quadratic_delta(int g, int n, int i, int order)
{
    if (g == 1 && n == 1) return {true, "not applicable: diagonal Bergman kernel"};
    const int m = n - 1;
    const int rel = order + 2 * (stable(g, n) ? pole_bound(g, n) : 2) + margin_;
    const LocalLaurent linv = inverse(dlogx_local(i, rel));
    int kmax = 2;
    for (int g1 = 0; g1 <= g; ++g1)
        for (int n1 = 1; n1 <= n + 1; ++n1)
            if (stable(g1, n1)) kmax = std::max(kmax, pole_bound(g1, n1) + 3);

    // Delta of F(z) = omega(z, ...)/dlog x(z): F(z) - F(sigma z).
    auto delta = [&](int gf, int nf) -> LocalForm {
        if (gf == 0 && nf == 1) return LocalForm{{PoleKey{}, y_local(i, false, rel) - y_local(i, true, rel)}};
        LocalForm at, sg;
        if (gf == 0 && nf == 2) {
            at = local_bergman(i, false, kmax, rel);
            sg = local_bergman(i, true, kmax, rel);
        } else {
            at = local(omega(gf, nf), i, false, rel);
            sg = local(omega(gf, nf), i, true, rel);
        }
        for (const auto& [k, s] : sg) {
            LocalLaurent neg = LocalLaurent::zero(ring_, i, s.low(), s.high()) - s;
            add_into(at, k, neg);
        }
        for (auto& [k, s] : at) s = s * linv;
        return at;
    };

    LocalForm form;
    if (g >= 1) {
        for (const auto& [key, c] : omega(g - 1, n + 1).terms) {
            const LocalLaurent a = (basis(i, false, key[0].point, key[0].order, rel) -
                                    basis(i, true, key[0].point, key[0].order, rel)) * linv;
            const LocalLaurent b = (basis(i, false, key[1].point, key[1].order, rel) -
                                    basis(i, true, key[1].point, key[1].order, rel)) * linv;
            add_into(form, PoleKey(key.begin() + 2, key.end()), a * b * c);
        }
    }
    for (int g1 = 0; g1 <= g; ++g1)
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> I, J;
            for (int j = 0; j < m; ++j) (mask >> j & 1u ? I : J).push_back(j);
            const LocalForm A = delta(g1, 1 + static_cast<int>(I.size()));
            const LocalForm B = delta(g - g1, 1 + static_cast<int>(J.size()));
            for (const auto& [ka, sa] : A)
                for (const auto& [kb, sb] : B) {
                    PoleKey key(m);
                    for (std::size_t t = 0; t < I.size(); ++t) key[I[t]] = ka[t];
                    for (std::size_t t = 0; t < J.size(); ++t) key[J[t]] = kb[t];
                    add_into(form, key, sa * sb);
                }
        }
    return check_holomorphic(form, order, "quadratic loop (second difference)");
}

CheckResult TopRec::check_projection(int g, int n)
{
    return check_projection(omega(g, n));
}

CheckResult TopRec::check_projection(const PoleForm& w)
{
    const int n = w.slots;
    const int rel = 2 * w.max_order() + margin_;
    CheckResult res;
    for (int slot = 0; slot < n; ++slot) {
        // Bring `slot` to the front, project, and compare.
        PoleForm rot;
        rot.slots = n;
        for (const auto& [key, c] : w.terms) {
            PoleKey k = key;
            std::swap(k[0], k[slot]);
            rot.add(k, c);
        }
        PoleForm proj;
        proj.slots = n;
        for (int i = 0; i < qr_; ++i) {
            // int_{rho_i}^{z} omega_{0,2}(., z0) = sum_{a >= 1} u^a/(z0 - rho_i)^{a+1}.
            for (const auto& [key, s] : local(rot, i, false, rel)) {
                for (int e = s.low(); e <= -2; ++e) {
                    const NumberRingElement c = s.coeff(e);
                    if (c.is_zero()) continue;
                    PoleKey full{Pole{i, -e}};
                    full.insert(full.end(), key.begin(), key.end());
                    proj.add(full, c);
                }
            }
        }
        if (!(proj == rot)) {
            res.ok = false;
            res.detail = "projection differs in slot " + std::to_string(slot);
            return res;
        }
    }
    return res;
}

CheckResult TopRec::check_sy(int i)
{
    const int rel = 4;
    const LocalLaurent sy = y_local(i, false, rel) + y_local(i, true, rel);
    CheckResult res;
    const NumberRingElement c0 = sy.coeff(0);
    const NumberRingElement half = c0 * make_rational(1, 2);
    if (!(pow(half, r_) == ring_->constant(make_rational(1, qr_)))) {
        res.ok = false;
        res.detail = "constant term of S y is " + c0.to_string();
    } else if (!sy.coeff(1).is_zero()) {
        res.ok = false;
        res.detail = "linear term of S y is " + sy.coeff(1).to_string();
    }
    return res;
}

bool ConjectureReport::all_equal() const
{
    return std::all_of(rows.begin(), rows.end(), [](const ConjectureRow& r) { return r.equal; });
}

std::string ConjectureReport::to_json() const
{
    nlohmann::json j;
    j["q"] = q;
    j["r"] = r;
    j["all_equal"] = all_equal();
    j["rows"] = nlohmann::json::array();
    nlohmann::json first_mismatch = nullptr;
    for (const auto& row : rows) {
        nlohmann::json e{{"g", row.g},
                         {"mu", row.mu},
                         {"tr", row.tr_value.get_str()},
                         {"hurwitz", row.hurwitz_value.get_str()},
                         {"equal", row.equal}};
        if (!row.equal && first_mismatch.is_null()) first_mismatch = e;
        j["rows"].push_back(std::move(e));
    }
    j["first_mismatch"] = first_mismatch;
    return j.dump(2);
}

void append_conjecture_rows(TopRec& tr, int g, int n, int dmax, ConjectureReport& report)
{
    const int q = tr.q();
    const int r = tr.r();
    const MultiSeries ex = tr.expand(tr.omega(g, n), dmax);
    std::vector<int> mu(n, 1);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == n) {
            Rational tv = ex.coeff(mu);
            int size = 0;
            for (int m : mu) {
                tv /= m;
                size += m;
            }
            Rational hv = 0;
            long b = 0;
            if (try_branch_count(q, r, g, n, size, b))
                hv = connected_hurwitz(q, r, g, Partition(mu)) / Rational(factorial(b));
            report.rows.push_back({g, mu, tv, hv, tv == hv});
            return;
        }
        for (int m = 1; m <= left - (n - j - 1); ++m) {
            mu[j] = m;
            rec(j + 1, left - m);
        }
    };
    rec(0, dmax);
}

ConjectureReport verify_conjecture(int q, int r, int gmax, int nmax, int dmax, int chimax)
{
    ConjectureReport report;
    report.q = q;
    report.r = r;
    TopRec tr(q, r);
    for (int g = 0; g <= gmax; ++g)
        for (int n = 1; n <= nmax; ++n)
            if (stable(g, n) && 2 * g - 2 + n <= chimax) append_conjecture_rows(tr, g, n, dmax, report);
    return report;
}

} // namespace spinhurwitz
