#pragma once

#include "spinhurwitz/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace spinhurwitz {

class WindowOverflowError : public Error {
public:
    using Error::Error;
};

using Exponents = std::vector<int>;

/// Truncated multivariate Laurent series over Q with positional variables.
///
/// Monomials of total degree above `total_cap` or with an exponent above the
/// variable's cap are dropped. Exponents below a variable's floor raise
/// WindowOverflowError. Products are exact inside the window as long as no
/// factor carries a term of negative total degree, which ms_mul checks.
class MultiSeries {
public:
    MultiSeries() = default;
    MultiSeries(int nvars, int total_cap);

    int nvars() const { return static_cast<int>(floors_.size()); }
    int total_cap() const { return total_cap_; }
    int floor(int var) const { return floors_.at(var); }
    int cap(int var) const { return caps_.at(var); }
    void set_floor(int var, int floor);
    void set_cap(int var, int cap);
    /// Copies floors and caps from another series with the same roster.
    void set_window(const MultiSeries& like);

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool in_window(const Exponents& e) const;
    /// Adds c * x^e; silently drops monomials above the caps.
    void add_term(const Exponents& e, const Rational& c);
    Rational coeff(const Exponents& e) const;

    MultiSeries& operator+=(const MultiSeries& o);
    MultiSeries& operator-=(const MultiSeries& o);
    MultiSeries& operator*=(const Rational& s);
    bool operator==(const MultiSeries& o) const { return terms_ == o.terms_; }

    /// Smallest total degree among stored monomials (0 when empty).
    int min_total_degree() const;
    std::string to_string() const;

private:
    int total_cap_ = 0;
    std::vector<int> floors_;
    std::vector<int> caps_;
    std::map<Exponents, Rational> terms_;
};

int total_degree(const Exponents& e);

/// Truncated product; the result takes the window of `a` with the tighter total cap.
MultiSeries ms_mul(const MultiSeries& a, const MultiSeries& b);
/// Reference double loop with truncation only at the end.
MultiSeries ms_mul_naive(const MultiSeries& a, const MultiSeries& b);
/// Euler operator x_v d/dx_v.
MultiSeries ms_D(int var, const MultiSeries& a);
/// Moves variable i to position target[i] in a series with `nvars` variables;
/// variables mapped to the same target have their exponents added.
/// The window of `like` is applied to the result.
MultiSeries ms_rename(const MultiSeries& a, const std::vector<int>& target, const MultiSeries& like);

/// sum_{j=1}^{N} x_i^j x_k^{-j}, the expansion of x_i/(x_k - x_i) for |x_i| < |x_k|.
MultiSeries sing_kernel(int nvars, int i, int k, int N, int total_cap);

/// Even polynomial in z, stored by coefficients of z^{2j}, truncated at z^{2 * max_half}.
class ZPoly {
public:
    explicit ZPoly(int max_half, const Rational& constant = 1);

    int max_half() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int j) const { return c_[j]; }
    Rational& operator[](int j) { return c_[j]; }
    ZPoly& operator*=(const ZPoly& o);

    /// zeta(l z)/(l z) (value 1 at l = 0), zeta(w) = e^{w/2} - e^{-w/2}.
    static ZPoly zeta_over_arg(int max_half, const Rational& l);
    /// zeta(l z)/z.
    static ZPoly zeta_over_z(int max_half, const Rational& l);
    /// z/zeta(z).
    static ZPoly z_over_zeta(int max_half);

private:
    std::vector<Rational> c_;
};

/// How a xi slot enters the operator: `plain` slots hold the function itself and
/// receive zeta(z l)/z, `differentiated` slots already carry one D_xi and receive
/// zeta(z l)/(z l).
enum class SlotKind { plain, differentiated };

/// For every monomial, attaches prod_j kernel(l_j) over the xi slots, merges the
/// slots into variable k (exponents add), attaches zeta(z a)/(z a) for the merged
/// exponent a, multiplies by z/zeta(z) and keeps [z^{2d}]. The xi variables are
/// removed (they must come after the `like.nvars()` output variables) and the
/// result gets the window of `like`.
MultiSeries q_operator(int d, int k, const MultiSeries& product, const std::vector<int>& xi_vars,
                       const std::vector<SlotKind>& kinds, const MultiSeries& like);

} // namespace spinhurwitz
