#include "spinhurwitz/series.hpp"

#include "spinhurwitz/bernoulli.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace spinhurwitz {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

MultiSeries::MultiSeries(int nvars, int total_cap)
    : total_cap_(total_cap), floors_(nvars, 0), caps_(nvars, std::numeric_limits<int>::max())
{
}

void MultiSeries::set_floor(int var, int floor) { floors_.at(var) = floor; }
void MultiSeries::set_cap(int var, int cap) { caps_.at(var) = cap; }

void MultiSeries::set_window(const MultiSeries& like)
{
    if (like.nvars() != nvars()) throw Error("MultiSeries::set_window: roster mismatch");
    total_cap_ = like.total_cap_;
    floors_ = like.floors_;
    caps_ = like.caps_;
}

bool MultiSeries::in_window(const Exponents& e) const
{
    if (total_degree(e) > total_cap_) return false;
    for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v] > caps_[v] || e[v] < floors_[v]) return false;
    return true;
}

void MultiSeries::add_term(const Exponents& e, const Rational& c)
{
    if (static_cast<int>(e.size()) != nvars()) throw Error("MultiSeries::add_term: wrong number of exponents");
    if (sgn(c) == 0) return;
    if (total_degree(e) > total_cap_) return;
    for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] > caps_[v]) return;
        if (e[v] < floors_[v])
            throw WindowOverflowError("exponent " + std::to_string(e[v]) + " of variable " + std::to_string(v) +
                                      " is below the floor " + std::to_string(floors_[v]));
    }
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Rational MultiSeries::coeff(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& o)
{
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& o)
{
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiSeries& MultiSeries::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [_, c] : terms_) c *= s;
    return *this;
}

int MultiSeries::min_total_degree() const
{
    if (terms_.empty()) return 0;
    int m = std::numeric_limits<int>::max();
    for (const auto& [e, _] : terms_) m = std::min(m, total_degree(e));
    return m;
}

std::string MultiSeries::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << c.get_str();
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] != 0) out << "*x" << v << "^" << e[v];
    }
    if (first) out << "0";
    return out.str();
}

namespace {

MultiSeries product_shell(const MultiSeries& a, const MultiSeries& b)
{
    if (a.nvars() != b.nvars()) throw Error("ms_mul: roster mismatch");
    MultiSeries tight(a.nvars(), std::min(a.total_cap(), b.total_cap()));
    for (int v = 0; v < a.nvars(); ++v) {
        tight.set_floor(v, a.floor(v));
        tight.set_cap(v, a.cap(v));
    }
    return tight;
}

} // namespace

MultiSeries ms_mul(const MultiSeries& a, const MultiSeries& b)
{
    MultiSeries out = product_shell(a, b);
    if (a.empty() || b.empty()) return out;
    if (a.min_total_degree() < 0 || b.min_total_degree() < 0)
        throw WindowOverflowError("ms_mul: factor with negative total degree makes truncation unsound");

    std::vector<std::pair<int, const std::pair<const Exponents, Rational>*>> bs;
    bs.reserve(b.size());
    for (const auto& t : b.terms()) bs.emplace_back(total_degree(t.first), &t);
    std::sort(bs.begin(), bs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    const int n = a.nvars();
    Exponents e(n);
    for (const auto& [ea, ca] : a.terms()) {
        const int da = total_degree(ea);
        for (const auto& [db, tb] : bs) {
            if (da + db > out.total_cap()) break;
            for (int v = 0; v < n; ++v) e[v] = ea[v] + tb->first[v];
            out.add_term(e, ca * tb->second);
        }
    }
    return out;
}

MultiSeries ms_mul_naive(const MultiSeries& a, const MultiSeries& b)
{
    std::map<Exponents, Rational> full;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            Exponents e(ea.size());
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
            full[e] += ca * cb;
        }
    MultiSeries out = product_shell(a, b);
    for (const auto& [e, c] : full)
        if (out.in_window(e)) out.add_term(e, c);
    return out;
}

MultiSeries ms_D(int var, const MultiSeries& a)
{
    if (var < 0 || var >= a.nvars()) throw Error("ms_D: variable out of range");
    MultiSeries out(a.nvars(), a.total_cap());
    out.set_window(a);
    for (const auto& [e, c] : a.terms()) out.add_term(e, c * e[var]);
    return out;
}

MultiSeries ms_rename(const MultiSeries& a, const std::vector<int>& target, const MultiSeries& like)
{
    if (static_cast<int>(target.size()) != a.nvars()) throw Error("ms_rename: target map has wrong length");
    MultiSeries out(like.nvars(), like.total_cap());
    out.set_window(like);
    Exponents e(like.nvars());
    for (const auto& [ea, c] : a.terms()) {
        std::fill(e.begin(), e.end(), 0);
        for (std::size_t v = 0; v < ea.size(); ++v) {
            if (target[v] < 0 || target[v] >= like.nvars()) {
                if (ea[v] != 0) throw Error("ms_rename: dropping a variable with nonzero exponent");
                continue;
            }
            e[target[v]] += ea[v];
        }
        out.add_term(e, c);
    }
    return out;
}

MultiSeries sing_kernel(int nvars, int i, int k, int N, int total_cap)
{
    if (i == k) throw Error("sing_kernel: i and k must differ");
    MultiSeries out(nvars, total_cap);
    out.set_floor(k, -N);
    Exponents e(nvars, 0);
    for (int j = 1; j <= N; ++j) {
        e[i] = j;
        e[k] = -j;
        out.add_term(e, 1);
    }
    return out;
}

ZPoly::ZPoly(int max_half, const Rational& constant) : c_(max_half + 1, Rational(0)) { c_[0] = constant; }

ZPoly& ZPoly::operator*=(const ZPoly& o)
{
    const int m = std::min(max_half(), o.max_half());
    std::vector<Rational> out(m + 1, Rational(0));
    for (int i = 0; i <= m; ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (int j = 0; i + j <= m; ++j) out[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(out);
    return *this;
}

ZPoly ZPoly::zeta_over_arg(int max_half, const Rational& l)
{
    ZPoly p(max_half, 0);
    Rational l2 = l * l, lp = 1;
    for (int j = 0; j <= max_half; ++j) {
        p.c_[j] = kernel_coeff(KernelKind::zeta_over_w, j) * lp;
        lp *= l2;
    }
    return p;
}

ZPoly ZPoly::zeta_over_z(int max_half, const Rational& l)
{
    ZPoly p = zeta_over_arg(max_half, l);
    for (auto& c : p.c_) c *= l;
    return p;
}

ZPoly ZPoly::z_over_zeta(int max_half)
{
    ZPoly p(max_half, 0);
    for (int j = 0; j <= max_half; ++j) p.c_[j] = kernel_coeff(KernelKind::z_over_zeta, j);
    return p;
}

MultiSeries q_operator(int d, int k, const MultiSeries& product, const std::vector<int>& xi_vars,
                       const std::vector<SlotKind>& kinds, const MultiSeries& like)
{
    if (xi_vars.size() != kinds.size()) throw Error("q_operator: slot kinds do not match xi variables");
    const int out_n = like.nvars();
    for (int v : xi_vars)
        if (v < out_n || v >= product.nvars()) throw Error("q_operator: xi variables must follow the output variables");
    if (k < 0 || k >= out_n) throw Error("q_operator: target variable out of range");

    MultiSeries out(out_n, like.total_cap());
    out.set_window(like);
    const ZPoly base = ZPoly::z_over_zeta(d);
    Exponents e(out_n);
    // caches for the single-slot kernels, keyed by exponent
    std::map<std::pair<int, int>, ZPoly> slot_cache;
    auto slot = [&](int l, SlotKind kind) -> const ZPoly& {
        auto key = std::make_pair(l, static_cast<int>(kind));
        auto it = slot_cache.find(key);
        if (it == slot_cache.end())
            it = slot_cache
                     .emplace(key, kind == SlotKind::plain ? ZPoly::zeta_over_z(d, l) : ZPoly::zeta_over_arg(d, l))
                     .first;
        return it->second;
    };

    for (const auto& [ep, c] : product.terms()) {
        std::copy(ep.begin(), ep.begin() + out_n, e.begin());
        ZPoly z = base;
        int merged = 0;
        bool zero = false;
        for (std::size_t s = 0; s < xi_vars.size(); ++s) {
            const int l = ep[xi_vars[s]];
            if (l == 0 && kinds[s] == SlotKind::plain) {
                zero = true;
                break;
            }
            z *= slot(l, kinds[s]);
            merged += l;
        }
        if (zero) continue;
        for (int v = out_n; v < product.nvars(); ++v)
            if (ep[v] != 0 && std::find(xi_vars.begin(), xi_vars.end(), v) == xi_vars.end())
                throw Error("q_operator: stray variable with nonzero exponent");
        e[k] += merged;
        z *= ZPoly::zeta_over_arg(d, e[k]);
        if (sgn(z[d]) != 0) out.add_term(e, c * z[d]);
    }
    return out;
}

} // namespace spinhurwitz
