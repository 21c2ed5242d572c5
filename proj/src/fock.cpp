#include "spinhurwitz/fock.hpp"

#include "spinhurwitz/bernoulli.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <tuple>

namespace spinhurwitz {

FockVector FockVector::vacuum()
{
    FockVector v(0);
    v.add(Partition{}, 1);
    return v;
}

void FockVector::add(const Partition& lambda, const Rational& c)
{
    if (lambda.weight() != weight_) throw Error("FockVector: weight mismatch");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(lambda, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Rational FockVector::coeff(const Partition& lambda) const
{
    auto it = terms_.find(lambda);
    return it == terms_.end() ? Rational(0) : it->second;
}

FockVector& FockVector::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [_, c] : terms_) c *= s;
    return *this;
}

namespace {

// Maya positions lambda_i - i for i = 1..len, padded with `pad` zero parts.
std::vector<int> maya(const Partition& lambda, int pad)
{
    const int len = lambda.length() + pad;
    std::vector<int> pos(len);
    for (int i = 0; i < len; ++i) pos[i] = (i < lambda.length() ? lambda[i] : 0) - (i + 1);
    return pos;
}

Partition from_maya(std::vector<int> pos)
{
    std::sort(pos.begin(), pos.end(), std::greater<>());
    std::vector<int> parts;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        int p = pos[i] + static_cast<int>(i) + 1;
        if (p > 0) parts.push_back(p);
    }
    return Partition(std::move(parts));
}

// Signed ribbon moves of size k (delta = +k adds, -k removes).
std::vector<std::pair<Partition, int>> ribbon_moves(const Partition& lambda, int delta)
{
    const int k = std::abs(delta);
    const std::vector<int> pos = maya(lambda, delta > 0 ? k : 0);
    const int floor = -static_cast<int>(pos.size());
    std::set<int> occupied(pos.begin(), pos.end());
    auto is_occupied = [&](int p) { return p < floor || occupied.count(p) > 0; };

    std::vector<std::pair<Partition, int>> out;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        const int from = pos[i];
        const int to = from + delta;
        if (is_occupied(to)) continue;
        int between = 0;
        for (int p = std::min(from, to) + 1; p < std::max(from, to); ++p)
            if (is_occupied(p)) ++between;
        std::vector<int> moved = pos;
        moved[i] = to;
        out.emplace_back(from_maya(std::move(moved)), between % 2 ? -1 : 1);
    }
    return out;
}

FockVector apply_moves(int delta, const FockVector& v)
{
    FockVector out(v.weight() + delta);
    if (out.weight() < 0) return out;
    for (const auto& [lambda, c] : v.terms())
        for (const auto& [mu, sign] : ribbon_moves(lambda, delta)) out.add(mu, sign > 0 ? c : Rational(-c));
    return out;
}

} // namespace

FockVector alpha_lower(int k, const FockVector& v)
{
    if (k < 1) throw Error("alpha_lower: k must be positive");
    return apply_moves(k, v);
}

FockVector alpha_raise(int k, const FockVector& v)
{
    if (k < 1) throw Error("alpha_raise: k must be positive");
    return apply_moves(-k, v);
}

Rational pairing(const FockVector& a, const FockVector& b)
{
    Rational s = 0;
    if (a.weight() != b.weight()) return s;
    for (const auto& [lambda, c] : a.terms()) s += c * b.coeff(lambda);
    return s;
}

std::string CycleConvention::to_string() const
{
    std::string s;
    switch (scale) {
    case Scale::unit: s = "f"; break;
    case Scale::r_factorial: s = "r!*f"; break;
    case Scale::rp1_factorial: s = "(r+1)!*f"; break;
    case Scale::inv_rp1: s = "f/(r+1)"; break;
    }
    return s + (constant_term ? " with constant" : " without constant");
}

std::vector<CycleConvention> candidate_conventions()
{
    using S = CycleConvention::Scale;
    std::vector<CycleConvention> out;
    for (S s : {S::unit, S::r_factorial, S::rp1_factorial, S::inv_rp1})
        for (bool c : {true, false}) out.push_back({s, c});
    return out;
}

CycleConvention default_convention() { return {CycleConvention::Scale::r_factorial, false}; }

Rational completed_eigenvalue(const Partition& lambda, int k, bool constant_term)
{
    if (k < 1) throw Error("completed_eigenvalue: k must be positive");
    Rational sum = 0;
    const Rational half(1, 2);
    for (int i = 1; i <= lambda.length(); ++i) {
        Rational a = Rational(lambda[i - 1] - i) + half;
        Rational b = Rational(-i) + half;
        sum += pow(a, k) - pow(b, k);
    }
    if (constant_term) {
        // (1 - 2^{-k}) zeta(-k), zeta(-k) = -B_{k+1}/(k+1)
        Rational zeta = -bernoulli(k + 1) / Rational(k + 1);
        sum += (1 - pow(Rational(2), -k)) * zeta;
    }
    Rational out = sum / Rational(factorial(k));
    return out;
}

Rational branch_weight(const Partition& lambda, int r, const CycleConvention& conv)
{
    Rational f = completed_eigenvalue(lambda, r + 1, conv.constant_term);
    switch (conv.scale) {
    case CycleConvention::Scale::unit: return f;
    case CycleConvention::Scale::r_factorial: return f * Rational(factorial(r));
    case CycleConvention::Scale::rp1_factorial: return f * Rational(factorial(r + 1));
    case CycleConvention::Scale::inv_rp1: return f / Rational(r + 1);
    }
    return f;
}

bool try_branch_count(int q, int r, int g, int n, int size, long& b)
{
    if (q < 1 || r < 1 || size % q != 0) return false;
    const long num = static_cast<long>(2 * g - 2 + n) * q + size;
    if (num < 0 || num % (static_cast<long>(q) * r) != 0) return false;
    b = num / (static_cast<long>(q) * r);
    return true;
}

long branch_count(int q, int r, int g, const Partition& mu)
{
    if (q < 1 || r < 1) throw Error("branch_count: q and r must be positive");
    if (mu.weight() % q != 0)
        throw DivisibilityError("q = " + std::to_string(q) + " does not divide |mu| = " + std::to_string(mu.weight()));
    long b = 0;
    if (!try_branch_count(q, r, g, mu.length(), mu.weight(), b))
        throw NonIntegralBError("b is not a nonnegative integer for q=" + std::to_string(q) + " r=" +
                                std::to_string(r) + " g=" + std::to_string(g) + " mu=" + mu.to_string());
    return b;
}

namespace {

struct FockCaches {
    std::mutex mutex;
    std::map<Partition, FockVector> mu_states;
    std::map<std::pair<int, int>, FockVector> orbifold_states;
    std::map<std::tuple<Partition, int, int, bool>, Rational> weights;
};

FockCaches& caches()
{
    static FockCaches c;
    return c;
}

FockVector mu_state(const Partition& mu)
{
    {
        std::lock_guard<std::mutex> lock(caches().mutex);
        auto it = caches().mu_states.find(mu);
        if (it != caches().mu_states.end()) return it->second;
    }
    FockVector v = FockVector::vacuum();
    for (int part : mu.parts()) {
        v = alpha_lower(part, v);
        v *= Rational(1, part);
    }
    std::lock_guard<std::mutex> lock(caches().mutex);
    return caches().mu_states.emplace(mu, v).first->second;
}

FockVector orbifold_state(int q, int d)
{
    {
        std::lock_guard<std::mutex> lock(caches().mutex);
        auto it = caches().orbifold_states.find({q, d});
        if (it != caches().orbifold_states.end()) return it->second;
    }
    const int copies = d / q;
    FockVector v = FockVector::vacuum();
    for (int i = 0; i < copies; ++i) v = alpha_lower(q, v);
    v *= Rational(1) / (pow(Rational(q), copies) * Rational(factorial(copies)));
    std::lock_guard<std::mutex> lock(caches().mutex);
    return caches().orbifold_states.emplace(std::make_pair(q, d), v).first->second;
}

Rational cached_weight(const Partition& lambda, int r, const CycleConvention& conv)
{
    auto key = std::make_tuple(lambda, r, static_cast<int>(conv.scale), conv.constant_term);
    {
        std::lock_guard<std::mutex> lock(caches().mutex);
        auto it = caches().weights.find(key);
        if (it != caches().weights.end()) return it->second;
    }
    Rational w = branch_weight(lambda, r, conv);
    std::lock_guard<std::mutex> lock(caches().mutex);
    return caches().weights.emplace(key, w).first->second;
}

Rational vev_unchecked(int q, int r, long b, const Partition& mu, const CycleConvention& conv)
{
    const FockVector v = mu_state(mu);
    const FockVector w = orbifold_state(q, mu.weight());
    Rational s = 0;
    for (const auto& [lambda, c] : v.terms()) {
        Rational wc = w.coeff(lambda);
        if (sgn(wc) == 0) continue;
        s += c * wc * pow(cached_weight(lambda, r, conv), b);
    }
    return s;
}

// h^bullet / b!, zero whenever the data is not admissible.
Rational disconnected_over_bfact(int q, int r, int g, const std::vector<int>& mu, const CycleConvention& conv)
{
    int size = 0;
    for (int m : mu) size += m;
    long b = 0;
    if (!try_branch_count(q, r, g, static_cast<int>(mu.size()), size, b)) return 0;
    return vev_unchecked(q, r, b, Partition(mu), conv) / Rational(factorial(b));
}

struct ConnectedKey {
    int q, r, g;
    std::vector<int> mu;
    int scale;
    bool constant;
    auto operator<=>(const ConnectedKey&) const = default;
};

std::mutex& connected_mutex()
{
    static std::mutex m;
    return m;
}

std::map<ConnectedKey, Rational>& connected_memo()
{
    static std::map<ConnectedKey, Rational> m;
    return m;
}

// h^circ / b!, zero whenever the data is not admissible.
Rational connected_over_bfact(int q, int r, int g, std::vector<int> mu, const CycleConvention& conv)
{
    std::sort(mu.begin(), mu.end(), std::greater<>());
    int size = 0;
    for (int m : mu) size += m;
    long b = 0;
    if (g < 0 || !try_branch_count(q, r, g, static_cast<int>(mu.size()), size, b)) return 0;

    ConnectedKey key{q, r, g, mu, static_cast<int>(conv.scale), conv.constant_term};
    {
        std::lock_guard<std::mutex> lock(connected_mutex());
        auto it = connected_memo().find(key);
        if (it != connected_memo().end()) return it->second;
    }

    const int n = static_cast<int>(mu.size());
    Rational value = disconnected_over_bfact(q, r, g, mu, conv);
    // Subtract configurations where the component through point 0 is a proper subset.
    for (unsigned mask = 0; mask + 1 < (1u << (n - 1)); ++mask) {
        std::vector<int> block{mu[0]}, rest;
        for (int i = 1; i < n; ++i) (mask >> (i - 1) & 1u ? block : rest).push_back(mu[i]);
        int bsize = 0, rsize = 0;
        for (int m : block) bsize += m;
        for (int m : rest) rsize += m;
        if (bsize % q != 0 || rsize % q != 0) continue;
        for (int gb = 0;; ++gb) {
            const int grest = g + 1 - gb;
            const long num = static_cast<long>(2 * grest - 2 + static_cast<int>(rest.size())) * q + rsize;
            if (num < 0) break;
            Rational cb = connected_over_bfact(q, r, gb, block, conv);
            if (sgn(cb) == 0) continue;
            value -= cb * disconnected_over_bfact(q, r, grest, rest, conv);
        }
    }

    std::lock_guard<std::mutex> lock(connected_mutex());
    connected_memo().emplace(std::move(key), value);
    return value;
}

} // namespace

Rational vev_disconnected(int q, int r, int g, const Partition& mu, const CycleConvention& conv)
{
    const long b = branch_count(q, r, g, mu);
    return vev_unchecked(q, r, b, mu, conv);
}

Rational connected_hurwitz(int q, int r, int g, const Partition& mu, BPolicy policy, const CycleConvention& conv)
{
    long b = 0;
    if (policy == BPolicy::strict) {
        b = branch_count(q, r, g, mu);
        if (g < 0) throw Error("connected_hurwitz: genus must be nonnegative");
    } else if (g < 0 || !try_branch_count(q, r, g, mu.length(), mu.weight(), b)) {
        return 0;
    }
    return connected_over_bfact(q, r, g, mu.parts(), conv) * Rational(factorial(b));
}

Rational disconnected_from_connected(int q, int r, int g, const std::vector<int>& mu, const CycleConvention& conv)
{
    const int n = static_cast<int>(mu.size());
    int size = 0;
    for (int m : mu) size += m;
    long b = 0;
    if (!try_branch_count(q, r, g, n, size, b)) return 0;

    Rational total = 0;
    for (const auto& blocks : set_partitions(n)) {
        const int nb = static_cast<int>(blocks.size());
        const int genus_budget = g + nb - 1;
        if (genus_budget < 0) continue;
        std::vector<std::vector<int>> parts(nb);
        for (int j = 0; j < nb; ++j)
            for (int i : blocks[j]) parts[j].push_back(mu[i]);
        // Distribute genus_budget over the blocks.
        std::vector<int> genera(nb, 0);
        std::function<void(int, int)> rec = [&](int j, int left) {
            if (j == nb - 1) {
                genera[j] = left;
                Rational prod = 1;
                for (int t = 0; t < nb && sgn(prod) != 0; ++t)
                    prod *= connected_over_bfact(q, r, genera[t], parts[t], conv);
                total += prod;
                return;
            }
            for (int x = 0; x <= left; ++x) {
                genera[j] = x;
                rec(j + 1, left - x);
            }
        };
        rec(0, genus_budget);
    }
    return total * Rational(factorial(b));
}

} // namespace spinhurwitz
