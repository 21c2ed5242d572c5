#pragma once

#include "spinhurwitz/cutjoin.hpp"
#include "spinhurwitz/records.hpp"

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace spinhurwitz {

class UsageError : public Error {
public:
    using Error::Error;
};

enum class Method { fock, cutjoin, toprec };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

class TopRec;

/// Computes records, reusing cut-and-join solvers and TR instances across
/// calls.
class Engine {
public:
    Engine();
    ~Engine();

    /// h^{circ}_{g;mu} by one method. Throws UsageError for invalid input
    /// (nonpositive parts, q not dividing |mu|, non-integral b, unstable
    /// (g, n) for toprec).
    HurwitzRecord compute(int q, int r, int g, const std::vector<int>& mu, Method m);

private:
    std::map<std::pair<int, int>, std::unique_ptr<CutJoinSolver>> cutjoin_;
    std::map<std::pair<int, int>, std::unique_ptr<TopRec>> toprec_;
};

HurwitzRecord compute_record(int q, int r, int g, const std::vector<int>& mu, Method m);

struct SuiteResult {
    SuiteResult() = default;
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    std::string name;
    bool ok = true;
    long checked = 0;
    std::string detail; ///< first failure, or a summary

    void fail(const std::string& what);
};

/// Shared cut-and-join solvers, so that several suites reuse one run, plus a
/// tally of Laurent-cancellation checks.
class SolverPool {
public:
    explicit SolverPool(int N) : N_(N) {}
    CutJoinSolver& get(int q, int r, CjMethod m);
    int N() const { return N_; }

    long laurent_checks() const;
    long laurent_monomials() const;
    const std::vector<std::string>& laurent_failures() const { return failures_; }
    void record_failure(const std::string& s) { failures_.push_back(s); }

private:
    int N_;
    std::map<std::tuple<int, int, CjMethod>, std::unique_ptr<CutJoinSolver>> solvers_;
    std::vector<std::string> failures_;
};

/// Stable and unstable (g, n), n >= 1, with 2g - 2 + n <= chimax.
std::vector<std::pair<int, int>> topologies(int chimax, bool include_unstable);

/// cutjoin coefficient * b! equals the Fock value for every ordered mu with
/// |mu| <= pool.N(); coefficients with non-integral b must vanish.
SuiteResult suite_oracle_equivalence(SolverPool& pool, const std::vector<std::pair<int, int>>& qr, int chimax);

/// Fock values against the permutation count for r = 1.
SuiteResult suite_permutation(int qmax, int dmax, int gmax);

/// Closed forms against Fock and the recursion, to degree N.
SuiteResult suite_closed_forms(int q, int r, int N);

/// cj_r2 and cj_g0 against cj_general on their domains.
SuiteResult suite_path_independence(SolverPool& pool, const std::vector<std::pair<int, int>>& qr, int chimax);

/// Summary of the Laurent-cancellation checks performed by the pool.
SuiteResult suite_laurent(const SolverPool& pool);

/// Binomial identities for p + l <= pmax and the residue sum for 2 <= n <=
/// nmax on seeded random inputs, compared with -Res_{w=0} = (-1)^{n+1}.
SuiteResult suite_identities(int pmax, int nmax, unsigned seed = 20240607u);

/// TR expansion against h/b! for the listed topologies. `coefficients`
/// receives the number of rational coefficients produced; a non-rational one
/// is reported through `galois_ok`.
SuiteResult suite_conjecture(int q, int r, const std::vector<std::pair<int, int>>& gn, int dmax, long& coefficients,
                             bool& galois_ok);

/// Linear, quadratic (both forms) and projection checks at every rho_i, and
/// the S y constant.
SuiteResult suite_loops(int q, int r, const std::vector<std::pair<int, int>>& gn, int order);

} // namespace spinhurwitz
