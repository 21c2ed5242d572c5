#pragma once

#include "spinhurwitz/partition.hpp"
#include "spinhurwitz/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace spinhurwitz {

class NonIntegralBError : public Error {
public:
    using Error::Error;
};

class DivisibilityError : public Error {
public:
    using Error::Error;
};

/// Finite linear combination of Schur basis vectors v_lambda, |lambda| = weight.
class FockVector {
public:
    FockVector() = default;
    explicit FockVector(int weight) : weight_(weight) {}

    static FockVector vacuum();

    int weight() const { return weight_; }
    const std::map<Partition, Rational>& terms() const { return terms_; }

    /// Adds c * v_lambda, dropping the entry if it cancels.
    void add(const Partition& lambda, const Rational& c);
    Rational coeff(const Partition& lambda) const;
    FockVector& operator*=(const Rational& s);
    bool operator==(const FockVector& o) const { return weight_ == o.weight_ && terms_ == o.terms_; }

private:
    int weight_ = 0;
    std::map<Partition, Rational> terms_;
};

/// alpha_{-k}: adds every border strip of size k with sign (-1)^{height}.
FockVector alpha_lower(int k, const FockVector& v);
/// alpha_{k}: removes every border strip of size k with sign (-1)^{height}.
FockVector alpha_raise(int k, const FockVector& v);

/// Orthonormal pairing of Schur basis vectors.
Rational pairing(const FockVector& a, const FockVector& b);

/// Normalisation of the per-branch-point weight F_{r+1}/(r+1) relative to
/// f_{r+1}(lambda) = [z^{r+1}] sum_i e^{z(lambda_i - i + 1/2)}.
struct CycleConvention {
    enum class Scale { unit, r_factorial, rp1_factorial, inv_rp1 };
    Scale scale = Scale::r_factorial;
    bool constant_term = false;

    bool operator==(const CycleConvention&) const = default;
    std::string to_string() const;
};

/// Every candidate normalisation considered by the calibration.
std::vector<CycleConvention> candidate_conventions();

/// The frozen convention; calibrate_convention() reproduces it.
CycleConvention default_convention();

/// f_k(lambda) = (1/k!) [sum_i ((lambda_i-i+1/2)^k - (-i+1/2)^k) + (1-2^{-k}) zeta(-k)],
/// the constant included when `constant_term` is set.
Rational completed_eigenvalue(const Partition& lambda, int k, bool constant_term = true);

/// Weight of one completed (r+1)-cycle branch point acting on v_lambda.
Rational branch_weight(const Partition& lambda, int r, const CycleConvention& conv);

/// b = ((2g-2+n) q + |mu|) / (q r). Throws DivisibilityError if q does not
/// divide |mu| and NonIntegralBError if b is not a nonnegative integer.
long branch_count(int q, int r, int g, const Partition& mu);
/// Same checks, returning false instead of throwing.
bool try_branch_count(int q, int r, int g, int n, int size, long& b);

/// Disconnected number h^{bullet,r,q}_{g;mu} via the vacuum expectation.
Rational vev_disconnected(int q, int r, int g, const Partition& mu,
                          const CycleConvention& conv = default_convention());

enum class BPolicy { strict, zero };

/// Connected number h^{circ,r,q}_{g;mu} by inclusion-exclusion over set
/// partitions of the marked points. With BPolicy::zero, invalid (q, r, g, mu)
/// yield 0 instead of an exception.
Rational connected_hurwitz(int q, int r, int g, const Partition& mu, BPolicy policy = BPolicy::strict,
                           const CycleConvention& conv = default_convention());

/// Forward exponential formula: disconnected number rebuilt from connected ones.
Rational disconnected_from_connected(int q, int r, int g, const std::vector<int>& mu,
                                     const CycleConvention& conv = default_convention());

} // namespace spinhurwitz
