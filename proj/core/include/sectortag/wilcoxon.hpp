#pragma once

#include <cstddef>
#include <span>

namespace sectortag {

struct WilcoxonResult {
    double statistic = 0.0; // W = min(W+, W-)
    double p_value = 1.0;   // two-sided
    size_t n_nonzero = 0;   // pairs remaining after zero differences dropped
    bool exact = false;     // exact sign enumeration vs normal approximation
};

/// Two-sided Wilcoxon signed-rank test. Zero differences are dropped;
/// absolute differences are ranked with mid-ranks for ties. The p-value is
/// exact (full 2^n sign enumeration) for n <= 12 and a tie- and
/// continuity-corrected normal approximation otherwise. All differences zero
/// yields p = 1.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs);

} // namespace sectortag
