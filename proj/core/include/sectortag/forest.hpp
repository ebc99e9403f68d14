#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sectortag/tree.hpp"

namespace sectortag {

enum class ForestKind { random_forest, gradient_boosting };

struct ForestModel {
    ForestKind kind = ForestKind::random_forest;
    std::vector<DecisionTree> trees;
    double learning_rate = 0.0; // boosting only
    double base_score = 0.0;    // boosting only: log-odds of the positive rate
    uint32_t feature_dimension = 0;
};

struct RandomForestParams {
    size_t n_trees = 25;
    size_t max_depth = 0;          // 0 = unlimited
    double min_samples_leaf = 1.0;
    bool bootstrap = true;         // test hook: false fits every tree on the full sample
};

struct GbmParams {
    size_t n_stages = 30;
    double learning_rate = 0.3;
    size_t max_depth = 4;
    double min_samples_leaf = 5.0;
    double leaf_clamp = 4.0; // Newton leaf steps are clamped to +-leaf_clamp
};

/// Bagged Gini trees with ceil(sqrt(p)) features drawn per node; prediction
/// is the mean leaf class proportion. Each tree owns a generator derived
/// from (seed, tree index), so the ensemble loop is order-independent.
ForestModel fit_random_forest(const DataMatrix& X, std::span<const uint8_t> y,
                              const RandomForestParams& params, uint64_t seed);

struct GbmDiagnostics {
    std::vector<double> train_log_loss; // after each stage
};

/// Stagewise additive logistic-loss boosting: squared-error trees on the
/// negative gradients, leaf values replaced by clamped Newton steps.
/// Throws DataError when y is single-class.
ForestModel fit_gbm(const DataMatrix& X, std::span<const uint8_t> y, const GbmParams& params,
                    GbmDiagnostics* diagnostics = nullptr);

/// Probability of the positive class. Random forest: mean leaf proportion;
/// boosting: sigmoid(base + lr * sum of tree values). Throws DataError when
/// x refers to columns outside the model's feature dimension.
double predict_score(const ForestModel& model, const FeatureVector& x);
double predict_score(const ForestModel& model, const DataMatrix& X, size_t row);

/// Raw additive score of a boosting model truncated to its first `stages`
/// trees; used by loss-curve diagnostics and tests.
double gbm_raw_score(const ForestModel& model, const FeatureVector& x, size_t stages);

double sigmoid(double z);

} // namespace sectortag
