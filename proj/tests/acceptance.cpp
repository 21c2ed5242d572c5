#include "spinhurwitz/suites.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

using namespace spinhurwitz;

namespace {

int failures = 0;

void report(int criterion, const std::vector<SuiteResult>& parts, double seconds)
{
    bool ok = true;
    long checked = 0;
    std::string detail;
    for (const auto& p : parts) {
        checked += p.checked;
        if (!p.ok && ok) {
            ok = false;
            detail = p.name + ": " + p.detail;
        }
    }
    if (ok) {
        for (const auto& p : parts) {
            if (!detail.empty()) detail += "; ";
            detail += p.name + ": " + p.detail;
        }
    } else {
        ++failures;
    }
    std::printf("%s criterion %d (%ld checks, %.1fs): %s\n", ok ? "PASS" : "FAIL", criterion, checked, seconds,
                detail.c_str());
    std::fflush(stdout);
}

template <class F>
void run(int criterion, F f)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SuiteResult> parts;
    try {
        parts = f();
    } catch (const std::exception& e) {
        SuiteResult r{"exception"};
        r.fail(e.what());
        parts = {r};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(criterion, parts, s);
}

} // namespace

int main()
{
    std::vector<std::pair<int, int>> all_qr;
    for (int q = 1; q <= 3; ++q)
        for (int r = 1; r <= 3; ++r) all_qr.emplace_back(q, r);

    SolverPool pool(8);
    run(1, [&] { return std::vector<SuiteResult>{suite_oracle_equivalence(pool, all_qr, 3)}; });
    run(2, [] { return std::vector<SuiteResult>{suite_permutation(2, 6, 2)}; });
    run(3, [] {
        std::vector<SuiteResult> parts;
        for (int q = 1; q <= 2; ++q)
            for (int r = 1; r <= 2; ++r) parts.push_back(suite_closed_forms(q, r, 10));
        return parts;
    });
    run(4, [&] { return std::vector<SuiteResult>{suite_path_independence(pool, all_qr, 3)}; });
    run(5, [&] { return std::vector<SuiteResult>{suite_laurent(pool)}; });
    run(6, [] { return std::vector<SuiteResult>{suite_identities(12, 6)}; });

    // TR regimes: q = r = 1 and r = 2 with q in {1, 2} up to 2g-2+n = 2; g = 0, n = 3 for q, r <= 3.
    struct Regime {
        int q, r;
        std::vector<std::pair<int, int>> gn;
    };
    std::vector<Regime> regimes;
    const auto chi2 = topologies(2, false);
    regimes.push_back({1, 1, chi2});
    regimes.push_back({1, 2, chi2});
    regimes.push_back({2, 2, chi2});
    for (int q = 1; q <= 3; ++q)
        for (int r = 1; r <= 3; ++r) {
            if ((q == 1 && r == 1) || (r == 2 && q <= 2)) continue;
            regimes.push_back({q, r, {{0, 3}}});
        }

    long coefficients = 0;
    bool galois_ok = true;
    run(7, [&] {
        std::vector<SuiteResult> parts;
        for (const auto& rg : regimes) parts.push_back(suite_conjecture(rg.q, rg.r, rg.gn, 6, coefficients, galois_ok));
        return parts;
    });
    run(8, [&] {
        std::vector<SuiteResult> parts;
        for (const auto& rg : regimes) parts.push_back(suite_loops(rg.q, rg.r, rg.gn, 8));
        return parts;
    });
    run(9, [&] {
        SuiteResult r{"Galois rationality"};
        r.checked = coefficients;
        if (!galois_ok)
            r.fail("a non-rational expansion coefficient was produced");
        else if (coefficients == 0)
            r.fail("no coefficients were produced");
        else
            r.detail = std::to_string(coefficients) + " expansion coefficients, all rational";
        return std::vector<SuiteResult>{r};
    });

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
