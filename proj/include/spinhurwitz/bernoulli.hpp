#pragma once

#include "spinhurwitz/rational.hpp"

namespace spinhurwitz {

/// Exact Bernoulli number B_k with B_1 = -1/2.
Rational bernoulli(long k);

enum class KernelKind {
    z_over_zeta, ///< [z^{2j}] z / (e^{z/2} - e^{-z/2})
    zeta_over_w, ///< [w^{2j}] (e^{w/2} - e^{-w/2}) / w
};

Rational kernel_coeff(KernelKind kind, long j);

} // namespace spinhurwitz
