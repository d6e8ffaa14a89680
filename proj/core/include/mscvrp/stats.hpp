#pragma once

#include <span>

#include "mscvrp/errors.hpp"

namespace mscvrp {

enum class WilcoxonMode { kAuto, kExact, kNormal };

struct WilcoxonResult {
    double statistic = 0;   // sum of ranks of positive differences (a - b)
    double p_value = 1;     // one-tailed, alternative "a < b"
    int n_effective = 0;    // pairs surviving zero-difference removal
    bool exact = false;     // exact distribution vs normal approximation
};

// One-tailed Wilcoxon signed-rank test of H1: a < b on paired samples.
// Zero differences are dropped; ties get average ranks. The exact null
// distribution is used up to n = 25 (kAuto), the tie-corrected normal
// approximation with continuity correction beyond. Throws
// InsufficientDataError below five effective pairs.
WilcoxonResult wilcoxon_one_tailed_less(std::span<const double> a,
                                        std::span<const double> b,
                                        WilcoxonMode mode = WilcoxonMode::kAuto);

// Lower-tail standard normal CDF.
double normal_cdf(double z);

// Median with the mean-of-middles convention for even sizes.
double median_of(std::span<const double> values);

}  // namespace mscvrp
