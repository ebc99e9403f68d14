#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sectortag/cv.hpp"

namespace sectortag {

/// One cell of the per-mode metric tables. Bold marks the best score per
/// column plus every score statistically indistinguishable from it
/// (Wilcoxon signed-rank p > 0.001 over the re-sampled cross-validations).
struct MetricCell {
    bool present = false;
    double auc = 0.0;
    double f = 0.0;
    bool auc_bold = false;
    bool f_bold = false;
};

struct MetricTable {
    FeatureMode mode = FeatureMode::full;
    std::vector<Algorithm> algorithms; // rows
    /// cells[row][sector]; columns follow the canonical sector order.
    std::vector<std::array<MetricCell, kSectorCount>> cells;
    std::vector<MetricCell> mean_col; // row mean across the six sectors
};

/// Markdown in the two-block layout (AUC block, then F-score block; rows =
/// algorithms, columns = six sectors + mean score).
std::string render_metric_tables_md(std::span<const MetricTable> tables);

struct CellSummary {
    Sector sector;
    Algorithm algorithm;
    FeatureMode mode;
    bool ok = false;
    std::string message; // failure reason when not ok
    double auc = 0.0;
    double f = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    size_t false_negatives = 0;
    size_t false_positives = 0;
    size_t grey_zone = 0;
    std::vector<uint32_t> skipped_folds;
    double selected_mean_size = 0.0;
};

std::string render_cells_csv(std::span<const CellSummary> cells);

std::string render_roc_csv(const RocCurve& roc);
std::string render_pooled_csv(const PooledScores& pooled);
std::string render_errors_csv(const ErrorBreakdown& errors);

struct CellTiming {
    Sector sector;
    Algorithm algorithm;
    FeatureMode mode;
    double vectorize_s = 0.0;
    double selection_s = 0.0;
    double train_s = 0.0;
    double score_s = 0.0;
};

std::string render_timings_csv(std::span<const CellTiming> timings);

/// Full-vs-selected vectorize+train comparison, one row per sector and
/// algorithm with both modes present.
std::string render_timing_comparison_csv(std::span<const CellTiming> timings);

} // namespace sectortag
