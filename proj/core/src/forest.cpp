#include "sectortag/forest.hpp"

#include <algorithm>
#include <cmath>

#include "sectortag/errors.hpp"

namespace sectortag {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

void check_dimension(const ForestModel& model, const FeatureVector& x) {
    if (!x.entries.empty() && x.entries.back().first >= model.feature_dimension)
        throw DataError("feature vector does not match the model's feature dimension");
}

} // namespace

ForestModel fit_random_forest(const DataMatrix& X, std::span<const uint8_t> y,
                              const RandomForestParams& params, uint64_t seed) {
    if (X.rows() == 0) throw DataError("fit_random_forest: empty input");
    if (y.size() != X.rows()) throw DataError("fit_random_forest: label size mismatch");
    if (params.n_trees == 0) throw DataError("fit_random_forest: n_trees must be >= 1");

    size_t n = X.rows();
    std::vector<double> target(n);
    for (size_t i = 0; i < n; ++i) target[i] = static_cast<double>(y[i]);

    TreeParams tp;
    tp.max_depth = params.max_depth;
    tp.min_samples_leaf = params.min_samples_leaf;
    tp.feature_subsample = static_cast<uint32_t>(
        std::ceil(std::sqrt(static_cast<double>(X.n_features))));

    ForestModel model;
    model.kind = ForestKind::random_forest;
    model.feature_dimension = X.n_features;
    model.trees.reserve(params.n_trees);

    std::vector<double> w(n);
    for (size_t t = 0; t < params.n_trees; ++t) {
        Rng rng(derive_seed(seed, {0x8f, t}));
        if (params.bootstrap) {
            std::fill(w.begin(), w.end(), 0.0);
            for (size_t i = 0; i < n; ++i) w[rng.next_below(n)] += 1.0;
        } else {
            std::fill(w.begin(), w.end(), 1.0);
        }
        TreeFit fit = fit_tree(X, target, w, tp, SplitCriterion::gini, &rng);
        model.trees.push_back(std::move(fit.tree));
    }
    return model;
}

ForestModel fit_gbm(const DataMatrix& X, std::span<const uint8_t> y, const GbmParams& params,
                    GbmDiagnostics* diagnostics) {
    if (X.rows() == 0) throw DataError("fit_gbm: empty input");
    if (y.size() != X.rows()) throw DataError("fit_gbm: label size mismatch");

    size_t n = X.rows();
    size_t pos = 0;
    for (uint8_t v : y) pos += v;
    if (pos == 0 || pos == n)
        throw DataError("fit_gbm: both classes must be present in the labels");

    double prior = static_cast<double>(pos) / static_cast<double>(n);
    ForestModel model;
    model.kind = ForestKind::gradient_boosting;
    model.feature_dimension = X.n_features;
    model.learning_rate = params.learning_rate;
    model.base_score = std::log(prior / (1.0 - prior));
    model.trees.reserve(params.n_stages);

    TreeParams tp;
    tp.max_depth = params.max_depth;
    tp.min_samples_leaf = params.min_samples_leaf;
    tp.feature_subsample = 0;

    std::vector<double> score(n, model.base_score);
    std::vector<double> residual(n);

    for (size_t stage = 0; stage < params.n_stages; ++stage) {
        for (size_t i = 0; i < n; ++i)
            residual[i] = static_cast<double>(y[i]) - sigmoid(score[i]);

        TreeFit fit = fit_tree(X, residual, {}, tp, SplitCriterion::variance, nullptr);

        // Newton step per leaf: sum of residuals over sum of sigma(1-sigma)
        std::vector<double> num(fit.tree.nodes.size(), 0.0);
        std::vector<double> den(fit.tree.nodes.size(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            int32_t leaf = fit.leaf_of[i];
            double s = sigmoid(score[i]);
            num[static_cast<size_t>(leaf)] += residual[i];
            den[static_cast<size_t>(leaf)] += s * (1.0 - s);
        }
        for (size_t node = 0; node < fit.tree.nodes.size(); ++node) {
            if (!fit.tree.nodes[node].is_leaf()) continue;
            double v = den[node] > 1e-12 ? num[node] / den[node] : 0.0;
            v = std::clamp(v, -params.leaf_clamp, params.leaf_clamp);
            fit.tree.nodes[node].value = v;
        }
        for (size_t i = 0; i < n; ++i)
            score[i] += params.learning_rate *
                        fit.tree.nodes[static_cast<size_t>(fit.leaf_of[i])].value;

        model.trees.push_back(std::move(fit.tree));

        if (diagnostics) {
            double loss = 0.0;
            for (size_t i = 0; i < n; ++i) {
                double z = score[i];
                // -y z + log(1 + e^z), computed stably
                loss += std::max(z, 0.0) - static_cast<double>(y[i]) * z +
                        std::log1p(std::exp(-std::abs(z)));
            }
            diagnostics->train_log_loss.push_back(loss / static_cast<double>(n));
        }
    }
    return model;
}

double predict_score(const ForestModel& model, const FeatureVector& x) {
    check_dimension(model, x);
    if (model.kind == ForestKind::random_forest) {
        if (model.trees.empty()) throw DataError("predict: random forest has no trees");
        double sum = 0.0;
        for (const auto& t : model.trees) sum += t.evaluate(x);
        return sum / static_cast<double>(model.trees.size());
    }
    double raw = model.base_score;
    for (const auto& t : model.trees) raw += model.learning_rate * t.evaluate(x);
    return sigmoid(raw);
}

double predict_score(const ForestModel& model, const DataMatrix& X, size_t row) {
    if (X.n_features > model.feature_dimension)
        throw DataError("data matrix does not match the model's feature dimension");
    if (model.kind == ForestKind::random_forest) {
        if (model.trees.empty()) throw DataError("predict: random forest has no trees");
        double sum = 0.0;
        for (const auto& t : model.trees) sum += t.evaluate(X, row);
        return sum / static_cast<double>(model.trees.size());
    }
    double raw = model.base_score;
    for (const auto& t : model.trees) raw += model.learning_rate * t.evaluate(X, row);
    return sigmoid(raw);
}

double gbm_raw_score(const ForestModel& model, const FeatureVector& x, size_t stages) {
    check_dimension(model, x);
    double raw = model.base_score;
    size_t upto = std::min(stages, model.trees.size());
    for (size_t t = 0; t < upto; ++t) raw += model.learning_rate * model.trees[t].evaluate(x);
    return raw;
}

} // namespace sectortag
