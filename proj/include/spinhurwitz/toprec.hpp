#pragma once

#include "spinhurwitz/number_ring.hpp"
#include "spinhurwitz/series.hpp"

#include <compare>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace spinhurwitz {

class NoSolutionError : public Error {
public:
    using Error::Error;
};

class NonRationalCoefficientError : public Error {
public:
    using Error::Error;
};

class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Truncated Laurent series in u = z - rho_i with NumberRingElement
/// coefficients. Holds the exponents low .. high()-1; everything from high()
/// on is unknown.
class LocalLaurent {
public:
    LocalLaurent() = default;
    LocalLaurent(RingPtr ring, int point, int low, std::vector<NumberRingElement> coef);
    /// c * u^e, known up to relative order `rel`.
    static LocalLaurent monomial(const NumberRingElement& c, int point, int e, int rel);
    static LocalLaurent zero(RingPtr ring, int point, int low, int high);

    const RingPtr& ring() const { return ring_; }
    int point() const { return point_; }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coef_.size()); }
    const std::vector<NumberRingElement>& coefficients() const { return coef_; }

    /// Coefficient of u^e; throws PrecisionError if e >= high().
    NumberRingElement coeff(int e) const;
    /// Lowest exponent with a nonzero coefficient, or high() if none.
    int valuation() const;
    /// True iff no negative exponent carries a nonzero coefficient.
    bool holomorphic() const;
    /// Drops known terms at or above `high`.
    LocalLaurent truncated(int high) const;

    LocalLaurent& operator+=(const LocalLaurent& o);
    LocalLaurent& operator-=(const LocalLaurent& o);
    LocalLaurent& operator*=(const NumberRingElement& s);
    friend LocalLaurent operator+(LocalLaurent a, const LocalLaurent& b) { return a += b; }
    friend LocalLaurent operator-(LocalLaurent a, const LocalLaurent& b) { return a -= b; }
    friend LocalLaurent operator*(const LocalLaurent& a, const LocalLaurent& b);
    friend LocalLaurent operator*(LocalLaurent a, const NumberRingElement& s) { return a *= s; }

    std::string to_string() const;

private:
    RingPtr ring_;
    int point_ = 0;
    int low_ = 0;
    std::vector<NumberRingElement> coef_;
};

/// Inverse of a series whose lowest nonzero coefficient is a unit.
LocalLaurent inverse(const LocalLaurent& a);
LocalLaurent pow(const LocalLaurent& a, int e);
LocalLaurent derivative(const LocalLaurent& a);
/// f(s(u)) for a power series f in v and s with s(0) = 0.
LocalLaurent compose(const LocalLaurent& f, const LocalLaurent& s);

struct Pole {
    int point = 0;
    int order = 0;
    auto operator<=>(const Pole&) const = default;
};

using PoleKey = std::vector<Pole>;

/// Sum of c * prod_j dz_j / (z_j - rho_{point_j})^{order_j}.
struct PoleForm {
    int slots = 0;
    std::map<PoleKey, NumberRingElement> terms;

    void add(const PoleKey& key, const NumberRingElement& c);
    int max_order() const;
    bool operator==(const PoleForm& o) const;
    std::string to_string() const;
};

/// Functions of the first variable near one ramification point, one series
/// per pole key of the remaining variables.
using LocalForm = std::map<PoleKey, LocalLaurent>;

struct CheckResult {
    bool ok = true;
    std::string detail;
};

/// Topological recursion on x = z exp(-z^{qr}), y = z^q.
class TopRec {
public:
    TopRec(int q, int r, int margin = 8);

    int q() const { return q_; }
    int r() const { return r_; }
    const RingPtr& ring() const { return ring_; }

    const std::vector<NumberRingElement>& ram_points() const { return rho_; }
    /// s(u) with sigma_i(rho_i + u) = rho_i + s(u), known to O(u^order).
    LocalLaurent deck(int i, int order) const;

    /// omega_{g,n} for 2g - 2 + n > 0.
    const PoleForm& omega(int g, int n);
    /// Replaces a stored form, e.g. to inject a fault before running checks.
    void set_omega(int g, int n, PoleForm w);
    /// Contribution of the residue at rho_i alone.
    PoleForm residue(int g, int n, int i);
    /// Sum of the images of a form under c -> c w^i, 0 <= i < qr.
    PoleForm galois_sum(const PoleForm& base) const;

    /// Expansion at z_j = 0 in the x_j; coefficient of prod x_j^{mu_j} dx_j/x_j
    /// for 1 <= mu_j and |mu| <= dmax.
    MultiSeries expand(const PoleForm& w, int dmax) const;

    /// omega_{g,n} / dlog x in the first slot, symmetrised by the deck
    /// transformation at rho_i, has no principal part.
    CheckResult check_linear_loop(int g, int n, int i, int order);
    CheckResult check_linear_loop(const PoleForm& w, int i, int order);
    /// The quadratic combination for omega_{g,n} divided by dlog x^2 is
    /// holomorphic at rho_i. Standard form, including the diagonal Bergman
    /// kernel term.
    CheckResult check_quadratic_loop(int g, int n, int i, int order);
    /// The second-difference form with z', z'' split before restriction to
    /// the diagonal; only defined when no diagonal Bergman kernel occurs.
    CheckResult check_quadratic_delta(int g, int n, int i, int order);
    /// omega equals the sum of its residue projections at the rho_i.
    CheckResult check_projection(int g, int n);
    CheckResult check_projection(const PoleForm& w);
    /// S_z y at rho_i: the constant term c0 satisfies (c0/2)^r = 1/(qr) and
    /// the linear term vanishes.
    CheckResult check_sy(int i);

    /// Local expansion of the first slot at rho_i (sigma = false) or at
    /// sigma_i(z) including the factor sigma_i'(z) (sigma = true).
    LocalForm local(const PoleForm& w, int i, bool sigma, int rel);

private:
    PoleForm compute(int g, int n);
    const LocalLaurent& basis(int i, bool sigma, int point, int order, int rel);
    LocalForm local_bergman(int i, bool sigma, int kmax, int rel);
    LocalForm local_pair(const PoleForm& w, int i, int rel);
    LocalForm combination(int g, int n, int i, int rel, bool with_one);
    LocalLaurent y_local(int i, bool sigma, int rel) const;
    LocalLaurent dlogx_local(int i, int rel) const;
    int working_order(int g, int n) const;

    int q_;
    int r_;
    int qr_;
    int margin_;
    RingPtr ring_;
    std::vector<NumberRingElement> rho_;
    std::vector<NumberRingElement> rho_inv_;
    mutable std::map<int, LocalLaurent> deck_;
    mutable std::mutex deck_mutex_;
    std::map<std::pair<int, int>, PoleForm> store_;
    std::map<std::tuple<int, bool, int, int, int>, LocalLaurent> basis_;
};

struct ConjectureRow {
    int g = 0;
    std::vector<int> mu;
    Rational tr_value;
    Rational hurwitz_value;
    bool equal = false;
};

struct ConjectureReport {
    int q = 0;
    int r = 0;
    std::vector<ConjectureRow> rows;
    bool all_equal() const;
    std::string to_json() const;
};

/// Appends the comparison rows of one (g, n) to the report. Throws
/// NonRationalCoefficientError from the expansion.
void append_conjecture_rows(TopRec& tr, int g, int n, int dmax, ConjectureReport& report);

/// TR expansion coefficient / prod mu_j against h / b! from the Fock oracle
/// for all stable (g, n) with g <= gmax, n <= nmax, 2g - 2 + n <= chimax.
ConjectureReport verify_conjecture(int q, int r, int gmax, int nmax, int dmax, int chimax = 1 << 20);

} // namespace spinhurwitz
