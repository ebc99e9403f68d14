#pragma once

#include <string>
#include <variant>

#include "sectortag/forest.hpp"
#include "sectortag/logistic.hpp"

namespace sectortag {

/// A fitted classifier plus the metadata needed to score new articles.
/// JSON round-trips reproduce predictions bit-exactly.
struct SavedModel {
    std::variant<ForestModel, LogisticModel> model;
    std::string algorithm; // "lr", "rf" or "gbm"
    std::string sector;    // canonical sector id, may be empty

    uint32_t feature_dimension() const;
};

double predict_score(const SavedModel& model, const FeatureVector& x);

void save_model_json(const SavedModel& model, const std::string& path);
std::string model_to_json(const SavedModel& model);
SavedModel load_model_json(const std::string& path);

} // namespace sectortag
