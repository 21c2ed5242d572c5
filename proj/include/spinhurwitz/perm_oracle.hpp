#pragma once

#include "spinhurwitz/partition.hpp"
#include "spinhurwitz/rational.hpp"

namespace spinhurwitz {

class SizeLimitError : public Error {
public:
    using Error::Error;
};

inline constexpr int perm_oracle_max_degree = 7;

/// Brute-force r = 1 count of transitive factorizations sigma * tau_1..tau_b * pi = id
/// with sigma of type (q,..,q), tau_i transpositions and pi of type mu, divided by d!
/// and multiplied by |Aut(mu)| so that it matches the Fock normalisation.
Rational perm_oracle(int q, int g, const Partition& mu);

} // namespace spinhurwitz
