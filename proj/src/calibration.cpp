#include "spinhurwitz/calibration.hpp"

#include "spinhurwitz/closed_forms.hpp"
#include "spinhurwitz/perm_oracle.hpp"

namespace spinhurwitz {

namespace {

bool matches_permutations(const CycleConvention& conv)
{
    for (int q = 1; q <= 2; ++q)
        for (int d = 1; d <= 5; ++d)
            for (const Partition& mu : partitions_of(d))
                for (int g = 0; g <= 1; ++g) {
                    long b = 0;
                    if (!try_branch_count(q, 1, g, mu.length(), d, b)) continue;
                    if (connected_hurwitz(q, 1, g, mu, BPolicy::strict, conv) != perm_oracle(q, g, mu)) return false;
                }
    return true;
}

bool matches_h01(const CycleConvention& conv)
{
    const int N = 7;
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 3; ++r) {
            const USeries h01 = h01_series({q, r}, N).h01;
            for (int a = 1; a <= N; ++a) {
                long b = 0;
                Rational fock = 0;
                if (try_branch_count(q, r, 0, 1, a, b))
                    fock = connected_hurwitz(q, r, 0, Partition({a}), BPolicy::strict, conv) / Rational(factorial(b));
                if (fock != h01[a]) return false;
            }
        }
    return true;
}

// A constant in the eigenvalue multiplies Z by e^{beta c}; that only becomes visible
// when a unit shift of b is a whole genus, e.g. r = 2 in the (1,1) sector.
bool matches_h11(const CycleConvention& conv)
{
    const int N = 7;
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 3; ++r) {
            const USeries h11 = h11_series({q, r}, N);
            for (int a = 1; a <= N; ++a) {
                long b = 0;
                Rational fock = 0;
                if (try_branch_count(q, r, 1, 1, a, b))
                    fock = connected_hurwitz(q, r, 1, Partition({a}), BPolicy::strict, conv) / Rational(factorial(b));
                if (fock != h11[a]) return false;
            }
        }
    return true;
}

} // namespace

CalibrationResult calibrate_convention()
{
    CalibrationResult out;
    for (const CycleConvention& conv : candidate_conventions())
        if (matches_permutations(conv) && matches_h01(conv) && matches_h11(conv)) out.matching.push_back(conv);
    return out;
}

} // namespace spinhurwitz
