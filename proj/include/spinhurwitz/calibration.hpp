#pragma once

#include "spinhurwitz/fock.hpp"

#include <vector>

namespace spinhurwitz {

struct CalibrationResult {
    std::vector<CycleConvention> matching;
    bool unique() const { return matching.size() == 1; }
};

/// Tries every candidate completed-cycle normalisation against the r = 1
/// permutation counts and the (0,1) and (1,1) closed forms for r in {1,2,3}.
CalibrationResult calibrate_convention();

} // namespace spinhurwitz
