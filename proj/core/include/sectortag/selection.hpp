#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sectortag/dataset.hpp"
#include "sectortag/features.hpp"
#include "sectortag/forest.hpp"
#include "sectortag/logistic.hpp"
#include "sectortag/sector.hpp"

namespace sectortag {

/// The four importance measures whose top-ranking feature lists are merged
/// per sector: boosting with MDI and with prediction-change importance,
/// random-forest Gini MDI, and logistic |coefficient|.
enum class SelectionMeasure {
    gbm_mdi = 0,
    gbm_prediction_change,
    rf_mdi,
    lr_abs_coefficient,
};

inline constexpr int kSelectionMeasureCount = 4;
const std::vector<SelectionMeasure>& all_selection_measures();
std::string_view selection_measure_name(SelectionMeasure m);
std::optional<SelectionMeasure> selection_measure_from_name(std::string_view name);

/// One measure's full feature ranking, descending by importance score (ties
/// by lower column index). After threshold search, top_set holds the columns
/// with score strictly above chosen_threshold: equal-scored features are
/// always kept or dropped together, so the cut never falls inside a tie.
struct RankedFeatureList {
    SelectionMeasure measure;
    std::vector<std::pair<uint32_t, double>> ranking;
    bool threshold_set = false;
    double chosen_threshold = 0.0;
    double chosen_inner_auc = 0.0;
    std::vector<uint32_t> top_set; // ranking prefix order

    std::vector<uint32_t> top_above(double threshold) const;
};

struct SelectedFeatures {
    Sector sector = Sector::financial;
    std::vector<uint32_t> integrated; // ascending column index
    std::map<uint32_t, std::set<SelectionMeasure>> provenance;
    std::vector<RankedFeatureList> per_algorithm;
    /// Pairwise Jaccard overlap of top sets, percent, indexed like
    /// per_algorithm.
    std::vector<std::vector<double>> overlap_pct;
};

struct SelectionParams {
    std::vector<double> grid_quantiles = {0.5, 0.75, 0.9, 0.95, 0.99};
    size_t inner_folds = 3;
    RandomForestParams rf;
    GbmParams gbm;
    LogisticParams lr;
};

/// Fits the measure's learner on the (outer) training fold and emits the
/// sorted importance ranking; the threshold is left unset.
RankedFeatureList rank_features(SelectionMeasure measure, const DataMatrix& X,
                                std::span<const uint8_t> y, const SelectionParams& params,
                                uint64_t seed);

/// Candidate thresholds at the given quantiles of the ranking's positive
/// scores (nearest-rank, deduplicated, ascending).
std::vector<double> quantile_grid(const RankedFeatureList& ranked,
                                  std::span<const double> quantiles);

/// Tries every grid threshold: restricts X to the induced top set, runs
/// inner stratified CV with the measure's own learner, and keeps the
/// threshold with the best mean AUC (ties resolved toward the larger
/// threshold, i.e. fewer features). Thresholds inducing an empty set are
/// skipped; if every one is skipped a DataError is thrown.
RankedFeatureList find_optimal_threshold(RankedFeatureList ranked, const DataMatrix& X,
                                         std::span<const uint8_t> y,
                                         std::span<const double> grid, size_t inner_folds,
                                         const SelectionParams& params, uint64_t seed);

/// Unions the top sets; all lists must share one feature space (dimension).
SelectedFeatures integrate(Sector sector, std::vector<RankedFeatureList> lists,
                           uint32_t feature_dimension);

/// Algorithm 1 end to end for one sector on outer-training data. The two
/// boosting measures share a single fitted model.
SelectedFeatures run_feature_selection(Sector sector, const DataMatrix& X,
                                       std::span<const uint8_t> y,
                                       const SelectionParams& params, uint64_t seed);

/// JSON persistence; feature names resolved via the space the columns refer
/// to.
void save_selected_features(const SelectedFeatures& sel, const FeatureSpace& space,
                            const std::string& json_path);
std::string selected_features_to_json(const SelectedFeatures& sel, const FeatureSpace& space);

/// Companion CSV (feature, score, algorithms) for word-cloud style
/// reporting; scores are per-measure max-normalized so different units are
/// comparable. Derived purely from the JSON document so reports can be
/// regenerated without recomputation.
std::string selected_features_csv_from_json(const std::string& json_text);

/// Loads integrated feature names (stems/topic tags) from a selected-features
/// file and maps them onto `space`, returning column indices. Names missing
/// from the space raise DataError.
std::set<uint32_t> load_selected_columns(const std::string& json_path,
                                         const FeatureSpace& space);

} // namespace sectortag
