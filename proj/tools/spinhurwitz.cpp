#include "spinhurwitz/fock.hpp"
#include "spinhurwitz/partition.hpp"
#include "spinhurwitz/records.hpp"
#include "spinhurwitz/suites.hpp"
#include "spinhurwitz/toprec.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

using namespace spinhurwitz;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct RunConfig {
    int q = 1;
    int r = 1;
    std::optional<int> g;
    std::vector<int> mu;
    std::optional<int> gmax;
    std::optional<int> nmax;
    std::optional<int> dmax;
    int N = 8;
    int order = 8;
    int topdelta = 12;
    std::string method = "fock";
    std::string cache;
    std::string format = "json";
    std::string merge;
};

std::string cache_path(const RunConfig& cfg)
{
    if (!cfg.cache.empty()) return cfg.cache;
    if (const char* env = std::getenv("SPINHURWITZ_CACHE")) return env;
    return {};
}

void validate_curve(const RunConfig& cfg)
{
    if (cfg.q < 1 || cfg.r < 1) throw UsageError("--q and --r must be positive");
}

void print_records(const std::vector<HurwitzRecord>& rows, const std::string& format)
{
    if (format == "csv") {
        std::cout << to_csv(rows);
        return;
    }
    for (const auto& rec : rows) std::cout << rec.to_json() << "\n";
}

int cmd_compute(const RunConfig& cfg)
{
    validate_curve(cfg);
    std::vector<Method> methods;
    if (cfg.method == "all")
        methods = {Method::fock, Method::cutjoin, Method::toprec};
    else
        methods = {method_from_string(cfg.method)};

    struct Key {
        int g;
        std::vector<int> mu;
    };
    std::vector<Key> keys;
    if (cfg.g && !cfg.mu.empty()) {
        keys.push_back({*cfg.g, cfg.mu});
    } else if (cfg.gmax && cfg.nmax && cfg.dmax) {
        if (*cfg.gmax < 0 || *cfg.nmax < 1 || *cfg.dmax < 1) throw UsageError("--gmax, --nmax, --dmax out of range");
        for (int g = 0; g <= *cfg.gmax; ++g)
            for (int d = 1; d <= *cfg.dmax; ++d)
                for (const Partition& p : partitions_of(d)) {
                    long b = 0;
                    if (p.length() > *cfg.nmax || !try_branch_count(cfg.q, cfg.r, g, p.length(), d, b)) continue;
                    keys.push_back({g, p.parts()});
                }
    } else {
        throw UsageError("compute needs --g and --mu, or --gmax, --nmax and --dmax");
    }

    Engine engine;
    std::vector<HurwitzRecord> rows;
    bool agree = true;
    for (const auto& key : keys) {
        std::optional<Rational> first;
        for (Method m : methods) {
            const int n = static_cast<int>(key.mu.size());
            if (m == Method::toprec && methods.size() > 1 && 2 * key.g - 2 + n <= 0) continue;
            HurwitzRecord rec = engine.compute(cfg.q, cfg.r, key.g, key.mu, m);
            if (first && *first != rec.value) {
                agree = false;
                std::cerr << "mismatch: " << rec.to_json() << " vs value " << first->get_str() << "\n";
            }
            if (!first) first = rec.value;
            rows.push_back(std::move(rec));
        }
    }

    const std::string path = cache_path(cfg);
    if (!path.empty()) {
        RecordCache cache = RecordCache::load(path);
        for (const auto& rec : rows) cache.merge(rec);
        cache.save(path);
    }
    print_records(rows, cfg.format);
    return agree ? exit_ok : exit_failure;
}

int cmd_export(const RunConfig& cfg)
{
    const std::string path = cache_path(cfg);
    if (path.empty()) throw UsageError("export needs --cache or SPINHURWITZ_CACHE");
    RecordCache cache = RecordCache::load(path);
    if (!cfg.merge.empty()) {
        cache.merge(RecordCache::load(cfg.merge));
        cache.save(path);
    }
    print_records(cache.rows(), cfg.format);
    return exit_ok;
}

int print_suites(const std::string& suite, const std::vector<SuiteResult>& parts)
{
    nlohmann::json j;
    j["command"] = "verify";
    j["suite"] = suite;
    j["results"] = nlohmann::json::array();
    bool ok = true;
    for (const auto& p : parts) {
        j["results"].push_back({{"name", p.name}, {"ok", p.ok}, {"checked", p.checked}, {"detail", p.detail}});
        ok = ok && p.ok;
    }
    j["ok"] = ok;
    std::cout << j.dump(2) << "\n";
    return ok ? exit_ok : exit_failure;
}

std::vector<std::pair<int, int>> stable_range(const RunConfig& cfg, int gdef, int ndef)
{
    const int gmax = cfg.gmax.value_or(gdef);
    const int nmax = cfg.nmax.value_or(ndef);
    if (gmax < 0 || nmax < 1) throw UsageError("--gmax/--nmax out of range");
    std::vector<std::pair<int, int>> out;
    for (int g = 0; g <= gmax; ++g)
        for (int n = 1; n <= nmax; ++n)
            if (2 * g - 2 + n > 0) out.emplace_back(g, n);
    return out;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg)
{
    if (suite == "identities") return print_suites(suite, {suite_identities(cfg.topdelta, 6)});
    validate_curve(cfg);
    if (suite == "closedforms") {
        if (cfg.N < 1) throw UsageError("--N must be positive");
        return print_suites(suite, {suite_closed_forms(cfg.q, cfg.r, cfg.N)});
    }
    if (suite == "oracles") {
        if (cfg.N < 1) throw UsageError("--N must be positive");
        SolverPool pool(cfg.N);
        std::vector<SuiteResult> parts;
        parts.push_back(suite_oracle_equivalence(pool, {{cfg.q, cfg.r}}, 3));
        parts.push_back(suite_path_independence(pool, {{cfg.q, cfg.r}}, 3));
        parts.push_back(suite_laurent(pool));
        if (cfg.r == 1) parts.push_back(suite_permutation(std::min(cfg.q, 2), std::min(cfg.N, 6), 2));
        return print_suites(suite, parts);
    }
    if (suite == "loops") return print_suites(suite, {suite_loops(cfg.q, cfg.r, stable_range(cfg, 1, 2), cfg.order)});
    if (suite == "conjecture") {
        const auto gn = stable_range(cfg, 1, 2);
        const int dmax = cfg.dmax.value_or(6);
        if (dmax < 1) throw UsageError("--dmax must be positive");
        TopRec tr(cfg.q, cfg.r);
        ConjectureReport report;
        report.q = cfg.q;
        report.r = cfg.r;
        try {
            for (auto [g, n] : gn) append_conjecture_rows(tr, g, n, dmax, report);
        } catch (const NonRationalCoefficientError& e) {
            std::cerr << "non-rational coefficient: " << e.what() << "\n";
            return exit_failure;
        }
        if (cfg.format == "csv") {
            std::cout << "q,r,g,mu,tr,hurwitz,equal\n";
            for (const auto& row : report.rows) {
                std::cout << cfg.q << "," << cfg.r << "," << row.g << ",\"";
                for (std::size_t j = 0; j < row.mu.size(); ++j) std::cout << (j ? "," : "") << row.mu[j];
                std::cout << "\"," << row.tr_value.get_str() << "," << row.hurwitz_value.get_str() << ","
                          << (row.equal ? "true" : "false") << "\n";
            }
        } else {
            std::cout << report.to_json() << "\n";
        }
        return report.all_equal() ? exit_ok : exit_failure;
    }
    throw UsageError("unknown verify suite '" + suite + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"q-orbifold r-spin Hurwitz numbers: Fock space, cut-and-join and topological recursion"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "orbifold order q");
        sub->add_option("--r", cfg.r, "spin parameter r");
        sub->add_option("--g", cfg.g, "genus");
        sub->add_option("--mu", cfg.mu, "ramification profile, e.g. 3,1,1")->delimiter(',');
        sub->add_option("--gmax", cfg.gmax, "largest genus");
        sub->add_option("--nmax", cfg.nmax, "largest number of marked points");
        sub->add_option("--dmax", cfg.dmax, "largest degree |mu|");
        sub->add_option("--N", cfg.N, "truncation degree");
        sub->add_option("--order", cfg.order, "local order for loop equations");
        sub->add_option("--topdelta", cfg.topdelta, "bound on p + l for the binomial identities");
        sub->add_option("--method", cfg.method, "fock, cutjoin, toprec or all")
            ->check(CLI::IsMember({"fock", "cutjoin", "toprec", "all"}));
        sub->add_option("--cache", cfg.cache, "NDJSON cache file (default: $SPINHURWITZ_CACHE)");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* compute = app.add_subcommand("compute", "compute Hurwitz numbers");
    add_common(compute);
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    std::string suite;
    for (const char* name : {"closedforms", "identities", "loops", "conjecture", "oracles"}) {
        auto* s = verify->add_subcommand(name);
        add_common(s);
        s->callback([&suite, name] { suite = name; });
    }
    auto* exp = app.add_subcommand("export", "print the cache");
    add_common(exp);
    exp->add_option("--merge", cfg.merge, "merge another cache file into the cache first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (compute->parsed()) return cmd_compute(cfg);
        if (verify->parsed()) return cmd_verify(suite, cfg);
        if (exp->parsed()) return cmd_export(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_usage;
    } catch (const CacheConflictError& e) {
        std::cerr << "cache conflict: " << e.what() << "\n";
        return exit_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}
