#pragma once

#include <string_view>
#include <vector>

#include "sectortag/forest.hpp"
#include "sectortag/logistic.hpp"

namespace sectortag {

enum class ImportanceMethod { mdi, prediction_change, abs_coefficient };

std::string_view importance_method_name(ImportanceMethod m);

/// One non-negative score per feature column. Features that appear in no
/// split (or have zero coefficient) score exactly 0.
struct ImportanceVector {
    ImportanceMethod method;
    std::vector<double> scores;
};

/// Mean decrease impurity: per feature, the ensemble-averaged weighted
/// impurity reduction (N_t/n) * (imp(t) - (N_L/N_t) imp(L) - (N_R/N_t) imp(R))
/// summed over the nodes splitting on that feature. The impurity is whatever
/// the trees were fitted with (Gini for random forests, squared-error
/// variance for boosting stages).
ImportanceVector importance_mdi(const ForestModel& model);

/// Prediction-change importance: at every split on F, with left/right
/// subtree aggregate values v1, v2 (leaf-weight-averaged) and weights c1, c2,
/// adds (v1-avr)^2 c1 + (v2-avr)^2 c2 where avr = (v1 c1 + v2 c2)/(c1 + c2).
/// Scores are normalized to sum to 100.
ImportanceVector importance_prediction_change(const ForestModel& model);

/// Same accumulation without the sum-to-100 normalization.
std::vector<double> prediction_change_raw(const ForestModel& model);

/// |beta_j| per feature; the intercept is excluded.
ImportanceVector importance_abs_coefficient(const LogisticModel& model);

} // namespace sectortag
