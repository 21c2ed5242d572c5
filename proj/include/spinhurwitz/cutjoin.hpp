#pragma once

#include "spinhurwitz/rational.hpp"
#include "spinhurwitz/series.hpp"

#include <map>
#include <utility>

namespace spinhurwitz {

class LaurentCancellationError : public Error {
public:
    using Error::Error;
};

class NonTriangularError : public Error {
public:
    using Error::Error;
};

enum class CjMethod {
    general, ///< resummed recursion with the zeta-kernel operators, any r
    r2,      ///< explicit four-term equation, r = 2 only
    g0       ///< genus-zero product form, g = 0 only
};

const char* to_string(CjMethod m);

/// Solves the cut-and-join recursion for the correlators H_{g,n} of one (q, r)
/// up to total degree N. Results are memoised per (g, n); every assembled
/// right-hand side passes the Laurent-cancellation check or the solver throws.
///
/// Stored series keep only monomials with all exponents >= 1: the additive
/// constants of the tilde functions are dropped (see c_const).
class CutJoinSolver {
public:
    CutJoinSolver(int q, int r, int N, CjMethod method = CjMethod::general);

    int q() const { return q_; }
    int r() const { return r_; }
    int N() const { return N_; }
    CjMethod method() const { return method_; }

    /// H_{g,n}; (0,1) and (0,2) come from the closed forms.
    const MultiSeries& correlator(int g, int n);

    /// Pure constant of the assembled right-hand side for (g, n), in the
    /// normalisation B_{g,n}/r! * H = RHS.
    Rational rhs_constant(int g, int n);

    /// Number of right-hand sides checked for Laurent cancellation so far and
    /// the number of non-positive-exponent monomials inspected.
    long laurent_checks() const { return laurent_checks_; }
    long laurent_monomials() const { return laurent_monomials_; }

private:
    MultiSeries solve(int g, int n);
    MultiSeries assemble_general(int g, int n);
    MultiSeries assemble_r2(int g, int n);
    MultiSeries assemble_g0(int n);
    void check_laurent(const MultiSeries& rhs, int g, int n);

    // window helpers
    MultiSeries output_window(int n) const;
    MultiSeries work_window(int nvars, int n, int k) const;

    // factors for the explicit paths: D_{x_k} H~_{g', 1+|K|}(x_k, x_K)
    MultiSeries dk_factor(int g, const std::vector<int>& K, int k, const MultiSeries& like);
    // D_{xi1} D_{xi2} H~_{g', 2+|K|}(xi, xi, x_K) at xi = x_k
    MultiSeries dk2_factor(int g, const std::vector<int>& K, int k, const MultiSeries& like);

    int q_, r_, N_;
    CjMethod method_;
    std::map<std::pair<int, int>, MultiSeries> store_;
    std::map<std::pair<int, int>, Rational> constants_;
    MultiSeries y_;   // y(x) in one variable
    MultiSeries yr_;  // y(x)^r in one variable
    MultiSeries w02_; // W_{0,2}(x, x) in one variable
    long laurent_checks_ = 0;
    long laurent_monomials_ = 0;
};

/// Convenience wrappers building a fresh solver.
MultiSeries cj_general(int q, int r, int g, int n, int N);
MultiSeries cj_r2(int q, int g, int n, int N);
MultiSeries cj_g0(int q, int r, int n, int N);

/// Expansion of x_i/(x_k - x_i) in the region where lower-indexed variables are
/// smaller: sing_kernel for i < k and -1 - sum_j x_k^j x_i^{-j} for i > k.
MultiSeries ordered_pole_kernel(int nvars, int i, int k, int N, int total_cap);

/// -delta_{2g-2+n, r} (2^{1-2g} - 1) B_{2g} / (2g)!.
Rational c_const(int g, int n, int r);

/// sum_m binom(p+l; p-m, l-m, 2m) 4^m == binom(2p+2l, 2p) and the odd companion
/// sum_m binom(p+l; p-m, l-m-1, 2m+1) 2^{2m+1} == binom(2p+2l, 2p+1).
bool topdelta_identity(int p, int l);

} // namespace spinhurwitz
