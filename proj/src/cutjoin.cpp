#include "spinhurwitz/cutjoin.hpp"

#include "spinhurwitz/bernoulli.hpp"
#include "spinhurwitz/closed_forms.hpp"
#include "spinhurwitz/partition.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace spinhurwitz {

const char* to_string(CjMethod m)
{
    switch (m) {
    case CjMethod::general: return "general";
    case CjMethod::r2: return "r2";
    case CjMethod::g0: return "g0";
    }
    return "?";
}

MultiSeries ordered_pole_kernel(int nvars, int i, int k, int N, int total_cap)
{
    if (i < k) return sing_kernel(nvars, i, k, N, total_cap);
    MultiSeries out = sing_kernel(nvars, k, i, N, total_cap);
    out *= -1;
    out.add_term(Exponents(nvars, 0), -1);
    return out;
}

Rational c_const(int g, int n, int r)
{
    if (2 * g - 2 + n != r) return 0;
    return -kernel_coeff(KernelKind::z_over_zeta, g);
}

namespace {

Rational multinomial(int total, std::initializer_list<int> parts)
{
    int sum = 0;
    for (int p : parts) {
        if (p < 0) return 0;
        sum += p;
    }
    if (sum != total) return 0;
    Rational out(factorial(total));
    for (int p : parts) out /= Rational(factorial(p));
    return out;
}

// Every map from `items` to `blocks` labelled blocks, as lists per block.
void for_each_assignment(const std::vector<int>& items, int blocks,
                         const std::function<void(const std::vector<std::vector<int>>&)>& f)
{
    std::vector<std::vector<int>> parts(blocks);
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == items.size()) {
            f(parts);
            return;
        }
        for (int b = 0; b < blocks; ++b) {
            parts[b].push_back(items[idx]);
            rec(idx + 1);
            parts[b].pop_back();
        }
    };
    rec(0);
}

// Every way to write `total` as an ordered sum of `parts` nonnegative integers.
void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> out(parts, 0);
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == parts - 1) {
            out[idx] = left;
            f(out);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            out[idx] = x;
            rec(idx + 1, left - x);
        }
    };
    if (parts == 0) {
        if (total == 0) f(out);
        return;
    }
    rec(0, total);
}

bool is_stable(int g, int n) { return 2 * g - 2 + n > 0; }

} // namespace

bool topdelta_identity(int p, int l)
{
    if (p < 0 || l < 0) return false;
    Rational even = 0, odd = 0;
    for (int m = 0; m <= p + l; ++m) {
        even += multinomial(p + l, {p - m, l - m, 2 * m}) * pow(Rational(2), 2 * m);
        odd += multinomial(p + l, {p - m, l - m - 1, 2 * m + 1}) * pow(Rational(2), 2 * m + 1);
    }
    const bool even_ok = even == Rational(binomial(2 * p + 2 * l, 2 * p));
    const bool odd_ok = odd == Rational(binomial(2 * p + 2 * l, 2 * p + 1));
    return even_ok && odd_ok;
}

CutJoinSolver::CutJoinSolver(int q, int r, int N, CjMethod method) : q_(q), r_(r), N_(N), method_(method)
{
    if (q < 1 || r < 1) throw Error("CutJoinSolver: q and r must be positive");
    if (N < 1) throw Error("CutJoinSolver: N must be positive");
    if (method == CjMethod::r2 && r != 2) throw Error("CutJoinSolver: the explicit method needs r = 2");

    const CurveSpec spec{q, r};
    const H01Data h01 = h01_series(spec, N);
    y_ = useries_to_multi(h01.y);
    yr_ = useries_to_multi(useries_pow(h01.y, r));
    w02_ = useries_to_multi(w02_diag_closed(spec, N));
    store_.emplace(std::make_pair(0, 1), useries_to_multi(h01.h01));
    store_.emplace(std::make_pair(0, 2), h02_series(spec, N));
}

MultiSeries CutJoinSolver::output_window(int n) const
{
    MultiSeries w(n, N_);
    for (int v = 0; v < n; ++v) {
        w.set_floor(v, -(r_ + 1) * N_);
        w.set_cap(v, N_);
    }
    return w;
}

MultiSeries CutJoinSolver::work_window(int nvars, int n, int k) const
{
    // Variables other than x_k occur in a single factor, so capping them is sound;
    // x_k and the xi slots collect exponents from several factors and stay uncapped.
    MultiSeries w(nvars, N_);
    for (int v = 0; v < nvars; ++v) {
        w.set_floor(v, -(r_ + 1) * N_);
        if (v < n && v != k) w.set_cap(v, N_);
    }
    return w;
}

const MultiSeries& CutJoinSolver::correlator(int g, int n)
{
    if (g < 0 || n < 1) throw Error("correlator: invalid (g, n)");
    auto key = std::make_pair(g, n);
    auto it = store_.find(key);
    if (it != store_.end()) return it->second;
    if (method_ == CjMethod::g0 && g != 0) throw Error("correlator: the genus-zero method only reaches g = 0");
    MultiSeries h = solve(g, n);
    return store_.emplace(key, std::move(h)).first->second;
}

Rational CutJoinSolver::rhs_constant(int g, int n)
{
    correlator(g, n);
    auto it = constants_.find({g, n});
    return it == constants_.end() ? Rational(0) : it->second;
}

void CutJoinSolver::check_laurent(const MultiSeries& rhs, int g, int n)
{
    ++laurent_checks_;
    for (const auto& [e, c] : rhs.terms()) {
        // Below -N a variable other than the merge target needs kernel terms beyond
        // the truncation, so those monomials are not exact and are skipped.
        if (*std::min_element(e.begin(), e.end()) < -N_) continue;
        ++laurent_monomials_;
        bool all_zero = true, some_nonpositive = false;
        for (int x : e) {
            all_zero = all_zero && x == 0;
            some_nonpositive = some_nonpositive || x <= 0;
        }
        if (some_nonpositive && !all_zero) {
            std::string mono;
            for (int x : e) mono += (mono.empty() ? "" : ",") + std::to_string(x);
            throw LaurentCancellationError("cut-and-join (" + std::string(to_string(method_)) + ") q=" +
                                           std::to_string(q_) + " r=" + std::to_string(r_) + " (g,n)=(" +
                                           std::to_string(g) + "," + std::to_string(n) + "): monomial [" + mono +
                                           "] survives with coefficient " + c.get_str());
        }
    }
}

MultiSeries CutJoinSolver::solve(int g, int n)
{
    if (!is_stable(g, n)) throw Error("solve: 2g-2+n must be positive");

    // Bring every method to the normalisation B_{g,n}/r! * H = rhs.
    MultiSeries rhs;
    switch (method_) {
    case CjMethod::general: rhs = assemble_general(g, n); break;
    case CjMethod::r2:
        rhs = assemble_r2(g, n);
        rhs *= Rational(1, 2);
        break;
    case CjMethod::g0:
        rhs = assemble_g0(n);
        rhs *= Rational(1) / Rational(factorial(r_ + 1));
        break;
    }
    check_laurent(rhs, g, n);
    constants_[{g, n}] = rhs.coeff(Exponents(n, 0));

    if (sgn(yr_.coeff({0})) != 0) throw NonTriangularError("y^r has a constant term");
    const Rational rfact(factorial(r_));
    MultiSeries h(n, N_);
    for (int v = 0; v < n; ++v) h.set_cap(v, N_);

    // Ascending total degree: every monomial with exponents >= 1.
    for (int total = n; total <= N_; ++total) {
        Exponents e(n, 1);
        std::function<void(int, int)> rec = [&](int v, int left) {
            if (v == n - 1) {
                e[v] = 1 + left;
                Rational value = rhs.coeff(e);
                Rational self = 0;
                for (int k = 0; k < n; ++k)
                    for (const auto& [ey, cy] : yr_.terms()) {
                        const int s = ey[0];
                        if (e[k] - s < 1) continue;
                        Exponents lower = e;
                        lower[k] -= s;
                        self += cy * Rational(e[k] - s) * h.coeff(lower);
                    }
                value += self / rfact;
                const Rational denom = Rational(2 * g - 2 + n) + make_rational(total, q_);
                h.add_term(e, value * rfact * Rational(r_) / denom);
                return;
            }
            for (int x = 0; x <= left; ++x) {
                e[v] = 1 + x;
                rec(v + 1, left - x);
            }
        };
        rec(0, total - n);
    }
    return h;
}

MultiSeries CutJoinSolver::assemble_general(int g, int n)
{
    MultiSeries rhs = output_window(n);
    const MultiSeries like = output_window(n);

    for (int d = 0; 2 * d <= r_; ++d) {
        const int m = r_ + 1 - 2 * d;
        const int nv = n + m;
        const Rational inv_mfact = Rational(1) / Rational(factorial(m));
        std::vector<int> xi(m);
        for (int a = 0; a < m; ++a) xi[a] = n + a;
        const std::vector<SlotKind> kinds(m, SlotKind::differentiated);

        for (int k = 0; k < n; ++k) {
            const MultiSeries work = work_window(nv, n, k);
            std::vector<int> others;
            for (int i = 0; i < n; ++i)
                if (i != k) others.push_back(i);

            std::map<std::tuple<int, std::vector<int>, std::vector<int>>, MultiSeries> cache;
            auto factor = [&](int gj, const std::vector<int>& K, const std::vector<int>& M) -> const MultiSeries& {
                auto key = std::make_tuple(gj, K, M);
                auto it = cache.find(key);
                if (it != cache.end()) return it->second;
                const int nj = static_cast<int>(K.size() + M.size());
                MultiSeries f(nv, N_);
                f.set_window(work);
                Exponents e(nv, 0);
                if (gj == 0 && nj == 1) {
                    for (const auto& [ey, c] : y_.terms()) {
                        e[xi[M[0]]] = ey[0];
                        f.add_term(e, c);
                    }
                } else if (gj == 0 && nj == 2 && M.size() == 2) {
                    for (const auto& [eh, c] : store_.at({0, 2}).terms()) {
                        e[xi[M[0]]] = eh[0];
                        e[xi[M[1]]] = eh[1];
                        f.add_term(e, c * eh[0] * eh[1]);
                    }
                } else if (gj == 0 && nj == 2) {
                    const int i = K[0], s = xi[M[0]];
                    for (const auto& [eh, c] : store_.at({0, 2}).terms()) {
                        e[i] = eh[0];
                        e[s] = eh[1];
                        f.add_term(e, c * eh[1]);
                    }
                    // the xi slot merges into x_k, so the pole follows the ordering of i and k
                    if (i < k) {
                        f += sing_kernel(nv, i, s, N_, N_);
                    } else {
                        MultiSeries kern = sing_kernel(nv, s, i, N_, N_);
                        kern.add_term(Exponents(nv, 0), 1);
                        f -= kern;
                    }
                } else {
                    MultiSeries hj = correlator(gj, nj);
                    std::vector<int> target;
                    for (int i : K) target.push_back(i);
                    for (int a : M) target.push_back(xi[a]);
                    for (std::size_t pos = K.size(); pos < target.size(); ++pos) hj = ms_D(static_cast<int>(pos), hj);
                    f = ms_rename(hj, target, work);
                }
                return cache.emplace(key, std::move(f)).first->second;
            };

            for (const auto& blocks : set_partitions(m)) {
                const int ell = static_cast<int>(blocks.size());
                const int G = g - m + ell - d;
                if (G < 0) continue;
                for_each_assignment(others, ell, [&](const std::vector<std::vector<int>>& Ks) {
                    for_each_composition(G, ell, [&](const std::vector<int>& genera) {
                        for (int j = 0; j < ell; ++j) {
                            const int nj = static_cast<int>(Ks[j].size() + blocks[j].size());
                            if (genera[j] == g && nj == n) return; // self-term, solved for
                        }
                        MultiSeries prod(nv, N_);
                        prod.set_window(work);
                        prod.add_term(Exponents(nv, 0), 1);
                        for (int j = 0; j < ell && !prod.empty(); ++j) {
                            const MultiSeries& f = factor(genera[j], Ks[j], blocks[j]);
                            prod = ms_mul(prod, f);
                        }
                        if (prod.empty()) return;
                        MultiSeries term = q_operator(d, k, prod, xi, kinds, like);
                        term *= inv_mfact;
                        rhs += term;
                    });
                });
            }
        }
    }
    return rhs;
}

MultiSeries CutJoinSolver::dk_factor(int g, const std::vector<int>& K, int k, const MultiSeries& like)
{
    const int nv = like.nvars();
    const int nj = 1 + static_cast<int>(K.size());
    MultiSeries f(nv, N_);
    f.set_window(like);
    Exponents e(nv, 0);
    if (g == 0 && nj == 1) {
        for (const auto& [ey, c] : y_.terms()) {
            e[k] = ey[0];
            f.add_term(e, c);
        }
        return f;
    }
    if (g == 0 && nj == 2) {
        const int i = K[0];
        for (const auto& [eh, c] : store_.at({0, 2}).terms()) {
            e[k] = eh[0];
            e[i] = eh[1];
            f.add_term(e, c * eh[0]);
        }
        f += ordered_pole_kernel(nv, i, k, N_, N_);
        return f;
    }
    const MultiSeries h = ms_D(0, correlator(g, nj));
    std::vector<int> target{k};
    for (int i : K) target.push_back(i);
    return ms_rename(h, target, like);
}

MultiSeries CutJoinSolver::dk2_factor(int g, const std::vector<int>& K, int k, const MultiSeries& like)
{
    const int nv = like.nvars();
    const int nj = 2 + static_cast<int>(K.size());
    if (g == 0 && nj == 2) {
        MultiSeries f(nv, N_);
        f.set_window(like);
        Exponents e(nv, 0);
        for (const auto& [ew, c] : w02_.terms()) {
            e[k] = ew[0];
            f.add_term(e, c);
        }
        return f;
    }
    const MultiSeries h = ms_D(1, ms_D(0, correlator(g, nj)));
    std::vector<int> target{k, k};
    for (int i : K) target.push_back(i);
    return ms_rename(h, target, like);
}

MultiSeries CutJoinSolver::assemble_r2(int g, int n)
{
    MultiSeries rhs = output_window(n);
    for (int k = 0; k < n; ++k) {
        const MultiSeries work = work_window(n, n, k);
        std::vector<int> others;
        for (int i = 0; i < n; ++i)
            if (i != k) others.push_back(i);

        // (1/3) D_xi^3 H_{g-2,n+2}(xi, xi, xi, x_others)
        if (g >= 2) {
            MultiSeries h = correlator(g - 2, n + 2);
            for (int pos = 0; pos < 3; ++pos) h = ms_D(pos, h);
            std::vector<int> target{k, k, k};
            for (int i : others) target.push_back(i);
            MultiSeries term = ms_rename(h, target, work);
            term *= Rational(1, 3);
            rhs += term;
        }

        // D_{x_k} H_{g1,1+|K1|} * D_xi1 D_xi2 H_{g2,2+|K2|}, g1 + g2 = g - 1
        for (int g1 = 0; g1 <= g - 1; ++g1) {
            const int g2 = g - 1 - g1;
            for_each_assignment(others, 2, [&](const std::vector<std::vector<int>>& Ks) {
                rhs += ms_mul(dk_factor(g1, Ks[0], k, work), dk2_factor(g2, Ks[1], k, work));
            });
        }

        // (1/3) prod_{j=1}^3 D_{x_k} H_{gj,1+|Kj|}, g1 + g2 + g3 = g
        for_each_composition(g, 3, [&](const std::vector<int>& genera) {
            for_each_assignment(others, 3, [&](const std::vector<std::vector<int>>& Ks) {
                for (int j = 0; j < 3; ++j)
                    if (genera[j] == g && static_cast<int>(Ks[j].size()) == n - 1) return; // self-term
                MultiSeries prod = ms_mul(dk_factor(genera[0], Ks[0], k, work), dk_factor(genera[1], Ks[1], k, work));
                prod = ms_mul(prod, dk_factor(genera[2], Ks[2], k, work));
                prod *= Rational(1, 3);
                rhs += prod;
            });
        });

        // (1/12)(2 D_k^3 - D_k) H~_{g-1,n}
        if (g >= 1) {
            MultiSeries h = correlator(g - 1, n);
            h.set_window(output_window(n));
            if (g - 1 == 0 && n == 2) {
                // ln((x1-x2)/(x1 x2)) with x_1 small: -ln x_1 - sum_j (x_1/x_2)^j / j
                for (int j = 1; j <= N_; ++j) h.add_term({j, -j}, Rational(-1, j));
            }
            MultiSeries d1 = ms_D(k, h);
            MultiSeries d3 = ms_D(k, ms_D(k, d1));
            d3 *= 2;
            d3 -= d1;
            d3 *= Rational(1, 12);
            if (g - 1 == 0 && n == 2 && k == 0) d3.add_term({0, 0}, Rational(1, 12)); // -D_1 of -ln x_1
            rhs += ms_rename(d3, [&] {
                std::vector<int> id(n);
                for (int i = 0; i < n; ++i) id[i] = i;
                return id;
            }(), work);
        }
    }
    MultiSeries out = output_window(n);
    out += rhs;
    return out;
}

MultiSeries CutJoinSolver::assemble_g0(int n)
{
    MultiSeries rhs = output_window(n);
    for (int k = 0; k < n; ++k) {
        const MultiSeries work = work_window(n, n, k);
        std::vector<int> others;
        for (int i = 0; i < n; ++i)
            if (i != k) others.push_back(i);
        std::map<std::vector<int>, MultiSeries> cache;
        auto factor = [&](const std::vector<int>& K) -> const MultiSeries& {
            auto it = cache.find(K);
            if (it == cache.end()) it = cache.emplace(K, dk_factor(0, K, k, work)).first;
            return it->second;
        };
        for_each_assignment(others, r_ + 1, [&](const std::vector<std::vector<int>>& Ks) {
            for (const auto& K : Ks)
                if (static_cast<int>(K.size()) == n - 1) return; // self-term
            MultiSeries prod = factor(Ks[0]);
            for (int j = 1; j <= r_ && !prod.empty(); ++j) prod = ms_mul(prod, factor(Ks[j]));
            rhs += prod;
        });
    }
    MultiSeries out = output_window(n);
    out += rhs;
    return out;
}

MultiSeries cj_general(int q, int r, int g, int n, int N)
{
    CutJoinSolver s(q, r, N, CjMethod::general);
    return s.correlator(g, n);
}

MultiSeries cj_r2(int q, int g, int n, int N)
{
    CutJoinSolver s(q, 2, N, CjMethod::r2);
    return s.correlator(g, n);
}

MultiSeries cj_g0(int q, int r, int n, int N)
{
    CutJoinSolver s(q, r, N, CjMethod::g0);
    return s.correlator(0, n);
}

} // namespace spinhurwitz
