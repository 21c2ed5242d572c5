#include "spinhurwitz/suites.hpp"

#include "spinhurwitz/closed_forms.hpp"
#include "spinhurwitz/fock.hpp"
#include "spinhurwitz/partition.hpp"
#include "spinhurwitz/perm_oracle.hpp"
#include "spinhurwitz/toprec.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace spinhurwitz {

namespace {

std::string mu_string(const std::vector<int>& mu)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t j = 0; j < mu.size(); ++j) os << (j ? "," : "") << mu[j];
    os << ")";
    return os.str();
}

std::string topo(int q, int r, int g, int n)
{
    std::ostringstream os;
    os << "q=" << q << " r=" << r << " (g,n)=(" << g << "," << n << ")";
    return os.str();
}

// Calls f on every ordered tuple of n positive integers with sum <= dmax.
void for_each_tuple(int n, int dmax, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> mu(n, 1);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == n) {
            f(mu);
            return;
        }
        for (int m = 1; m <= left - (n - j - 1); ++m) {
            mu[j] = m;
            rec(j + 1, left - m);
        }
    };
    rec(0, dmax);
}

class FockTable {
public:
    FockTable(int q, int r, int g) : q_(q), r_(r), g_(g) {}
    // h/b! for the partition of mu, 0 when b is not integral.
    Rational scaled(const std::vector<int>& mu)
    {
        std::vector<int> key = mu;
        std::sort(key.begin(), key.end(), std::greater<int>());
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        int size = 0;
        for (int m : mu) size += m;
        long b = 0;
        Rational v = 0;
        if (try_branch_count(q_, r_, g_, static_cast<int>(mu.size()), size, b))
            v = connected_hurwitz(q_, r_, g_, Partition(key)) / Rational(factorial(b));
        cache_.emplace(key, v);
        return v;
    }

private:
    int q_, r_, g_;
    std::map<std::vector<int>, Rational> cache_;
};

} // namespace

const char* to_string(Method m)
{
    switch (m) {
    case Method::fock:
        return "fock";
    case Method::cutjoin:
        return "cutjoin";
    case Method::toprec:
        return "toprec";
    }
    return "?";
}

Method method_from_string(const std::string& s)
{
    if (s == "fock") return Method::fock;
    if (s == "cutjoin") return Method::cutjoin;
    if (s == "toprec") return Method::toprec;
    throw UsageError("unknown method '" + s + "'");
}

Engine::Engine() = default;
Engine::~Engine() = default;

HurwitzRecord compute_record(int q, int r, int g, const std::vector<int>& mu, Method m)
{
    Engine e;
    return e.compute(q, r, g, mu, m);
}

HurwitzRecord Engine::compute(int q, int r, int g, const std::vector<int>& mu, Method m)
{
    if (q < 1 || r < 1) throw UsageError("q and r must be positive");
    if (g < 0) throw UsageError("g must be nonnegative");
    if (mu.empty()) throw UsageError("mu must be nonempty");
    int size = 0;
    for (int part : mu) {
        if (part < 1) throw UsageError("parts of mu must be positive");
        size += part;
    }
    const int n = static_cast<int>(mu.size());
    long b = 0;
    if (size % q != 0) throw UsageError("q = " + std::to_string(q) + " does not divide |mu| = " + std::to_string(size));
    if (!try_branch_count(q, r, g, n, size, b))
        throw UsageError("b = ((2g-2+n)q + |mu|)/(qr) is not a nonnegative integer for q=" + std::to_string(q) +
                         " r=" + std::to_string(r) + " g=" + std::to_string(g) + " mu=" + mu_string(mu));

    HurwitzRecord rec;
    rec.q = q;
    rec.r = r;
    rec.g = g;
    rec.mu = mu;
    std::sort(rec.mu.begin(), rec.mu.end(), std::greater<int>());
    rec.b = b;
    rec.method = to_string(m);
    rec.connected = true;
    const Rational bfact(factorial(b));
    switch (m) {
    case Method::fock:
        rec.value = connected_hurwitz(q, r, g, Partition(mu));
        break;
    case Method::cutjoin: {
        auto& solver = cutjoin_[{q, r}];
        if (!solver || solver->N() < size) solver = std::make_unique<CutJoinSolver>(q, r, std::max(size, 8));
        rec.value = solver->correlator(g, n).coeff(mu) * bfact;
        break;
    }
    case Method::toprec: {
        if (2 * g - 2 + n <= 0) throw UsageError("toprec needs 2g - 2 + n > 0");
        auto& tr = toprec_[{q, r}];
        if (!tr) tr = std::make_unique<TopRec>(q, r);
        Rational v = tr->expand(tr->omega(g, n), size).coeff(mu);
        for (int part : mu) v /= part;
        rec.value = v * bfact;
        break;
    }
    }
    return rec;
}

void SuiteResult::fail(const std::string& what)
{
    if (ok) detail = what;
    ok = false;
}

CutJoinSolver& SolverPool::get(int q, int r, CjMethod m)
{
    auto key = std::make_tuple(q, r, m);
    auto it = solvers_.find(key);
    if (it == solvers_.end()) it = solvers_.emplace(key, std::make_unique<CutJoinSolver>(q, r, N_, m)).first;
    return *it->second;
}

long SolverPool::laurent_checks() const
{
    long s = 0;
    for (const auto& [k, v] : solvers_) s += v->laurent_checks();
    return s;
}

long SolverPool::laurent_monomials() const
{
    long s = 0;
    for (const auto& [k, v] : solvers_) s += v->laurent_monomials();
    return s;
}

std::vector<std::pair<int, int>> topologies(int chimax, bool include_unstable)
{
    std::vector<std::pair<int, int>> out;
    for (int g = 0; 2 * g - 1 <= chimax; ++g)
        for (int n = 1; 2 * g - 2 + n <= chimax; ++n) {
            if (!include_unstable && 2 * g - 2 + n <= 0) continue;
            out.emplace_back(g, n);
        }
    return out;
}

SuiteResult suite_oracle_equivalence(SolverPool& pool, const std::vector<std::pair<int, int>>& qr, int chimax)
{
    SuiteResult res{"oracle equivalence"};
    long vanishing = 0;
    for (auto [q, r] : qr)
        for (auto [g, n] : topologies(chimax, true)) {
            const MultiSeries* H = nullptr;
            try {
                H = &pool.get(q, r, CjMethod::general).correlator(g, n);
            } catch (const LaurentCancellationError& e) {
                pool.record_failure(e.what());
                res.fail(topo(q, r, g, n) + ": " + e.what());
                continue;
            }
            FockTable fock(q, r, g);
            for_each_tuple(n, pool.N(), [&](const std::vector<int>& mu) {
                const Rational c = H->coeff(mu);
                const Rational f = fock.scaled(mu);
                ++res.checked;
                if (sgn(f) == 0) ++vanishing;
                if (c != f)
                    res.fail(topo(q, r, g, n) + " mu=" + mu_string(mu) + ": cutjoin coefficient " + c.get_str() +
                             ", Fock h/b! " + f.get_str());
            });
        }
    if (res.ok)
        res.detail = std::to_string(res.checked) + " ordered coefficients, " + std::to_string(vanishing) +
                     " of them zero on both sides";
    return res;
}

SuiteResult suite_permutation(int qmax, int dmax, int gmax)
{
    SuiteResult res{"permutation oracle"};
    for (int q = 1; q <= qmax; ++q)
        for (int d = 1; d <= dmax; ++d)
            for (const Partition& mu : partitions_of(d))
                for (int g = 0; g <= gmax; ++g) {
                    long b = 0;
                    if (!try_branch_count(q, 1, g, mu.length(), d, b)) continue;
                    const Rational f = connected_hurwitz(q, 1, g, mu);
                    const Rational p = perm_oracle(q, g, mu);
                    ++res.checked;
                    if (f != p)
                        res.fail("q=" + std::to_string(q) + " g=" + std::to_string(g) + " mu=" + mu.to_string() +
                                 ": Fock " + f.get_str() + ", permutations " + p.get_str());
                }
    struct Named {
        int g;
        std::vector<int> mu;
        Rational value;
    };
    const std::vector<Named> named{{0, {2}, make_rational(1, 2)}, {0, {3}, 1}, {1, {2}, make_rational(1, 2)}};
    for (const auto& nv : named) {
        ++res.checked;
        const Rational p = perm_oracle(1, nv.g, Partition(nv.mu));
        const Rational f = connected_hurwitz(1, 1, nv.g, Partition(nv.mu));
        if (p != nv.value || f != nv.value)
            res.fail("h_{" + std::to_string(nv.g) + ";" + mu_string(nv.mu) + "} expected " + nv.value.get_str() +
                     ", permutations " + p.get_str() + ", Fock " + f.get_str());
    }
    if (res.ok) res.detail = std::to_string(res.checked) + " values equal";
    return res;
}

SuiteResult suite_closed_forms(int q, int r, int N)
{
    SuiteResult res{"closed forms q=" + std::to_string(q) + " r=" + std::to_string(r)};
    const CurveSpec spec{q, r};

    FockTable f0(q, r, 0);
    const USeries h01 = h01_series(spec, N).h01;
    for (int a = 1; a <= N; ++a) {
        ++res.checked;
        if (h01[a] != f0.scaled({a})) res.fail("H01 at x^" + std::to_string(a));
    }

    const MultiSeries h02 = h02_series(spec, N);
    for_each_tuple(2, N, [&](const std::vector<int>& mu) {
        ++res.checked;
        if (h02.coeff(mu) != f0.scaled(mu)) res.fail("H02 at " + mu_string(mu));
    });

    FockTable f1(q, r, 1);
    const USeries h11 = h11_series(spec, N);
    CutJoinSolver solver(q, r, N);
    const MultiSeries& cj11 = solver.correlator(1, 1);
    for (int a = 1; a <= N; ++a) {
        ++res.checked;
        const Rational c = cj11.coeff({a});
        if (h11[a] != f1.scaled({a}) || h11[a] != c)
            res.fail("H11 at x^" + std::to_string(a) + ": closed form " + h11[a].get_str() + ", recursion " +
                     c.get_str());
    }

    ++res.checked;
    if (w02_diag_closed(spec, N) != w02_diag_from_h02(spec, N)) res.fail("W02 diagonal closed form");

    ++res.checked;
    const MultiSeries eq = eq02_residual(spec, N);
    if (!eq.empty()) res.fail("(0,2) equation residual " + eq.to_string());

    for (int deg = 1; deg <= 4; ++deg) {
        std::vector<Rational> f(deg + 1, 0);
        f[deg] = 1;
        f[0] = 1;
        ++res.checked;
        for (const Rational& c : dtx_residual(spec, f, N))
            if (sgn(c) != 0) {
                res.fail("D_x chain rule for t^" + std::to_string(deg));
                break;
            }
    }
    if (res.ok) res.detail = std::to_string(res.checked) + " checks to degree " + std::to_string(N);
    return res;
}

SuiteResult suite_path_independence(SolverPool& pool, const std::vector<std::pair<int, int>>& qr, int chimax)
{
    SuiteResult res{"path independence"};
    long r2 = 0, g0 = 0;
    for (auto [q, r] : qr)
        for (auto [g, n] : topologies(chimax, false)) {
            std::vector<CjMethod> alt;
            if (r == 2) alt.push_back(CjMethod::r2);
            if (g == 0) alt.push_back(CjMethod::g0);
            for (CjMethod m : alt) {
                try {
                    const MultiSeries& a = pool.get(q, r, CjMethod::general).correlator(g, n);
                    const MultiSeries& b = pool.get(q, r, m).correlator(g, n);
                    ++res.checked;
                    (m == CjMethod::r2 ? r2 : g0) += 1;
                    if (!(a == b))
                        res.fail(topo(q, r, g, n) + ": " + to_string(m) + " differs from general");
                } catch (const LaurentCancellationError& e) {
                    pool.record_failure(e.what());
                    res.fail(topo(q, r, g, n) + ": " + e.what());
                }
            }
        }
    if (res.ok)
        res.detail = std::to_string(r2) + " r2 and " + std::to_string(g0) + " g0 correlators equal to general";
    return res;
}

SuiteResult suite_laurent(const SolverPool& pool)
{
    SuiteResult res{"Laurent cancellation"};
    res.checked = pool.laurent_checks();
    if (!pool.laurent_failures().empty())
        res.fail(pool.laurent_failures().front());
    else if (res.checked == 0)
        res.fail("no assemblies were checked");
    else
        res.detail = std::to_string(res.checked) + " assemblies, " + std::to_string(pool.laurent_monomials()) +
                     " non-positive monomials cancelled";
    return res;
}

SuiteResult suite_identities(int pmax, int nmax, unsigned seed)
{
    SuiteResult res{"identities"};
    for (int p = 0; p <= pmax; ++p)
        for (int l = 0; p + l <= pmax; ++l) {
            ++res.checked;
            if (!topdelta_identity(p, l)) res.fail("binomial identity at p=" + std::to_string(p) + " l=" + std::to_string(l));
        }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 20);
    for (int n = 1; n <= nmax; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            std::set<Rational> seen;
            std::vector<Rational> xs;
            while (static_cast<int>(xs.size()) < n) {
                const int a = num(rng);
                if (a == 0) continue;
                const Rational v = make_rational(a, den(rng));
                if (seen.insert(v).second) xs.push_back(v);
            }
            // -Res_{w=0} (1/w) prod x_i/(w - x_i)
            Rational oracle = -1;
            for (const Rational& x : xs) oracle *= x / (-x);
            const Rational v = residue_sum_check(xs);
            ++res.checked;
            if (v != oracle) res.fail("residue sum for n=" + std::to_string(n) + " gives " + v.get_str());
        }
    if (res.ok)
        res.detail = "binomial identities for p+l<=" + std::to_string(pmax) +
                     "; residue sums equal -Res_{w=0} = (-1)^{n+1} for n<=" + std::to_string(nmax) +
                     " (the stated -1 holds for even n; odd n give +1)";
    return res;
}

SuiteResult suite_conjecture(int q, int r, const std::vector<std::pair<int, int>>& gn, int dmax, long& coefficients,
                             bool& galois_ok)
{
    SuiteResult res{"conjecture q=" + std::to_string(q) + " r=" + std::to_string(r)};
    TopRec tr(q, r);
    for (auto [g, n] : gn) {
        ConjectureReport report;
        report.q = q;
        report.r = r;
        try {
            coefficients += static_cast<long>(tr.expand(tr.omega(g, n), dmax).size());
            append_conjecture_rows(tr, g, n, dmax, report);
        } catch (const NonRationalCoefficientError& e) {
            galois_ok = false;
            res.fail(topo(q, r, g, n) + ": " + e.what());
            continue;
        }
        for (const auto& row : report.rows) {
            ++res.checked;
            if (!row.equal)
                res.fail(topo(q, r, g, n) + " mu=" + mu_string(row.mu) + ": TR " + row.tr_value.get_str() +
                         ", h/b! " + row.hurwitz_value.get_str());
        }
    }
    if (res.ok) res.detail = std::to_string(res.checked) + " coefficients equal";
    return res;
}

SuiteResult suite_loops(int q, int r, const std::vector<std::pair<int, int>>& gn, int order)
{
    SuiteResult res{"loops q=" + std::to_string(q) + " r=" + std::to_string(r)};
    TopRec tr(q, r);
    auto take = [&](const CheckResult& c, const std::string& where) {
        ++res.checked;
        if (!c.ok) res.fail(where + ": " + c.detail);
    };
    for (int i = 0; i < q * r; ++i) {
        const std::string at = " at rho_" + std::to_string(i);
        take(tr.check_sy(i), "S y" + at);
        take(tr.check_quadratic_loop(0, 1, i, order), "quadratic (0,1)" + at);
        take(tr.check_quadratic_delta(0, 1, i, order), "second difference (0,1)" + at);
        take(tr.check_linear_loop(0, 2, i, order), "linear (0,2)" + at);
        take(tr.check_quadratic_loop(0, 2, i, order), "quadratic (0,2)" + at);
        take(tr.check_quadratic_delta(0, 2, i, order), "second difference (0,2)" + at);
        for (auto [g, n] : gn) {
            const std::string t = " " + topo(q, r, g, n) + at;
            take(tr.check_linear_loop(g, n, i, order), "linear" + t);
            take(tr.check_quadratic_loop(g, n, i, order), "quadratic" + t);
            if (!(g == 1 && n == 1)) take(tr.check_quadratic_delta(g, n, i, order), "second difference" + t);
        }
    }
    for (auto [g, n] : gn) take(tr.check_projection(g, n), "projection " + topo(q, r, g, n));
    if (res.ok) res.detail = std::to_string(res.checked) + " checks to order " + std::to_string(order);
    return res;
}

} // namespace spinhurwitz
