#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sectortag/evaluation.hpp"
#include "sectortag/model_io.hpp"
#include "sectortag/selection.hpp"
#include "sectortag/taxonomy.hpp"

namespace sectortag {

enum class Algorithm { lr, rf, gbm };
std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

enum class FeatureMode { full, selected };
std::string_view feature_mode_name(FeatureMode m);
std::optional<FeatureMode> feature_mode_from_name(std::string_view name);

struct AlgorithmParams {
    LogisticParams lr;
    RandomForestParams rf;
    GbmParams gbm;
};

struct CvParams {
    size_t k = 10;
    uint64_t seed = 1;
    Weighting weighting = Weighting::tf_idf;
    size_t min_df = 2;
    bool topic_ancestors = true;
    double decision_threshold = 0.5;
    std::pair<double, double> grey = {0.4, 0.6};
    AlgorithmParams algo;
    SelectionParams selection;
    bool collect_fold_model_digests = false;
};

struct FoldTiming {
    double vectorize_s = 0.0;
    double selection_s = 0.0;
    double train_s = 0.0;
    double score_s = 0.0;
};

struct CvReport {
    Sector sector = Sector::financial;
    Algorithm algorithm = Algorithm::lr;
    FeatureMode feature_mode = FeatureMode::full;
    double auc = 0.0;
    FScoreResult f;
    ErrorBreakdown errors;
    RocCurve roc;
    std::vector<FoldTiming> fold_times;       // indexed by fold
    std::vector<uint32_t> skipped_folds;      // training fold had no positives
    bool few_positives_warning = false;
    std::vector<size_t> selected_sizes;       // per fold, selected mode only
    std::vector<std::string> fold_model_digests; // optional, see CvParams
};

/// Per-fold selected features, typically a cache shared across algorithms.
/// When absent, run_cv computes Algorithm 1 per fold itself; the results are
/// identical because the same derived seeds drive both paths.
using SelectionProvider = std::function<const SelectedFeatures*(uint32_t fold)>;

/// Stratified k-fold CV for one (sector, algorithm, feature-mode) cell.
/// Per fold: the feature space is built from the nine training folds only;
/// in selected mode Algorithm 1 runs on training data only; the held-out
/// fold is scored by the fold's model and pooled. Folds whose training part
/// has no positives are skipped with a warning recorded in the report.
std::pair<PooledScores, CvReport> run_cv(const Corpus& corpus,
                                         const std::vector<TokenList>& tokens,
                                         const TopicTaxonomy& taxonomy, Sector sector,
                                         Algorithm algorithm, FeatureMode mode,
                                         const CvParams& params,
                                         const SelectionProvider& provider = {});

/// Fold assignment used by run_cv for this sector (shared so external
/// selection caches agree with the harness).
FoldAssignment cv_fold_assignment(const Corpus& corpus, Sector sector, const CvParams& params);

/// Seed fed to Algorithm 1 for one fold (shared with external caches).
uint64_t cv_selection_seed(const CvParams& params, uint32_t fold);

/// Algorithm 1 on one fold's training data; used by run_cv and by pipeline
/// pre-computation.
SelectedFeatures cv_fold_selection(const Corpus& corpus, const std::vector<TokenList>& tokens,
                                   const TopicTaxonomy& taxonomy, Sector sector, uint32_t fold,
                                   const FoldAssignment& folds, const CvParams& params);

struct FittedCell {
    SavedModel model;
    FeatureSpace space; // restricted space in selected mode
    std::optional<SelectedFeatures> selection;
};

/// Fits one final model on the whole training corpus (for cmd_predict);
/// selected mode runs Algorithm 1 on the full corpus first.
FittedCell fit_full_model(const Corpus& corpus, const std::vector<TokenList>& tokens,
                          const TopicTaxonomy& taxonomy, Sector sector, Algorithm algorithm,
                          FeatureMode mode, const CvParams& params);

struct ComparisonResult {
    std::vector<Algorithm> algorithms;
    std::vector<std::vector<double>> auc_samples; // [algorithm][resample]
    std::vector<std::vector<double>> f_samples;
    std::vector<double> mean_auc;
    std::vector<double> mean_f;
    std::vector<std::vector<double>> p_auc; // pairwise Wilcoxon signed-rank
    std::vector<std::vector<double>> p_f;
    /// True when the algorithm is the best or statistically indistinguishable
    /// from it (p > 0.001), per the report tables' bolding rule.
    std::vector<bool> auc_top_group;
    std::vector<bool> f_top_group;
};

/// Re-sampled cross-validations: resample r re-deals the folds with a seed
/// derived from (seed, r) and runs every algorithm on identical folds, so the
/// per-resample scores are paired for the Wilcoxon test.
ComparisonResult resampled_comparison(const Corpus& corpus,
                                      const std::vector<TokenList>& tokens,
                                      const TopicTaxonomy& taxonomy, Sector sector,
                                      const std::vector<Algorithm>& algorithms,
                                      FeatureMode mode, const CvParams& base_params,
                                      size_t n_resamples, uint64_t seed);

} // namespace sectortag
