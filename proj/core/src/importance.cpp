#include "sectortag/importance.hpp"

#include <algorithm>

#include "sectortag/errors.hpp"

namespace sectortag {

std::string_view importance_method_name(ImportanceMethod m) {
    switch (m) {
        case ImportanceMethod::mdi: return "mdi";
        case ImportanceMethod::prediction_change: return "prediction_change";
        case ImportanceMethod::abs_coefficient: return "abs_coefficient";
    }
    return "?";
}

ImportanceVector importance_mdi(const ForestModel& model) {
    if (model.trees.empty()) throw DataError("importance_mdi: model has no trees");

    ImportanceVector out{ImportanceMethod::mdi,
                         std::vector<double>(model.feature_dimension, 0.0)};
    for (const auto& tree : model.trees) {
        double n = tree.nodes[0].weight;
        for (const auto& node : tree.nodes) {
            if (node.is_leaf()) continue;
            const TreeNode& l = tree.nodes[static_cast<size_t>(node.left)];
            const TreeNode& r = tree.nodes[static_cast<size_t>(node.right)];
            double dec = (node.weight / n) *
                         (node.impurity - (l.weight / node.weight) * l.impurity -
                          (r.weight / node.weight) * r.impurity);
            if (dec > 0.0) out.scores[static_cast<size_t>(node.feature)] += dec;
        }
    }
    double inv_m = 1.0 / static_cast<double>(model.trees.size());
    for (double& s : out.scores) s *= inv_m;
    return out;
}

namespace {

struct SubtreeAgg {
    double weight;
    double value; // leaf-weight-averaged leaf value
};

SubtreeAgg accumulate_prediction_change(const DecisionTree& tree, int32_t node_id,
                                        std::vector<double>& raw) {
    const TreeNode& node = tree.nodes[static_cast<size_t>(node_id)];
    if (node.is_leaf()) return {node.weight, node.value};

    SubtreeAgg l = accumulate_prediction_change(tree, node.left, raw);
    SubtreeAgg r = accumulate_prediction_change(tree, node.right, raw);
    double c = l.weight + r.weight;
    double avr = (l.value * l.weight + r.value * r.weight) / c;
    raw[static_cast<size_t>(node.feature)] +=
        (l.value - avr) * (l.value - avr) * l.weight +
        (r.value - avr) * (r.value - avr) * r.weight;
    return {c, avr};
}

} // namespace

std::vector<double> prediction_change_raw(const ForestModel& model) {
    if (model.trees.empty())
        throw DataError("importance_prediction_change: model has no trees");
    std::vector<double> raw(model.feature_dimension, 0.0);
    for (const auto& tree : model.trees) accumulate_prediction_change(tree, 0, raw);
    return raw;
}

ImportanceVector importance_prediction_change(const ForestModel& model) {
    ImportanceVector out{ImportanceMethod::prediction_change, prediction_change_raw(model)};
    double total = 0.0;
    for (double s : out.scores) total += s;
    if (total > 0.0)
        for (double& s : out.scores) s *= 100.0 / total;
    return out;
}

ImportanceVector importance_abs_coefficient(const LogisticModel& model) {
    ImportanceVector out{ImportanceMethod::abs_coefficient,
                         std::vector<double>(model.beta.size(), 0.0)};
    for (size_t j = 0; j < model.beta.size(); ++j) out.scores[j] = std::abs(model.beta[j]);
    return out;
}

} // namespace sectortag
