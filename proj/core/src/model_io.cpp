#include "sectortag/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "sectortag/errors.hpp"
#include "sectortag/version.hpp"

namespace sectortag {

using nlohmann::json;

uint32_t SavedModel::feature_dimension() const {
    if (std::holds_alternative<ForestModel>(model))
        return std::get<ForestModel>(model).feature_dimension;
    return static_cast<uint32_t>(std::get<LogisticModel>(model).beta.size());
}

double predict_score(const SavedModel& saved, const FeatureVector& x) {
    if (std::holds_alternative<ForestModel>(saved.model))
        return predict_score(std::get<ForestModel>(saved.model), x);
    return predict_score(std::get<LogisticModel>(saved.model), x);
}

namespace {

json tree_to_json(const DecisionTree& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes)
        nodes.push_back(json::array(
            {n.feature, n.threshold, n.impurity, n.weight, n.value, n.left, n.right}));
    return nodes;
}

DecisionTree tree_from_json(const json& nodes) {
    DecisionTree tree;
    tree.nodes.reserve(nodes.size());
    for (const auto& n : nodes) {
        TreeNode node;
        node.feature = n.at(0).get<int32_t>();
        node.threshold = n.at(1).get<double>();
        node.impurity = n.at(2).get<double>();
        node.weight = n.at(3).get<double>();
        node.value = n.at(4).get<double>();
        node.left = n.at(5).get<int32_t>();
        node.right = n.at(6).get<int32_t>();
        tree.nodes.push_back(node);
    }
    return tree;
}

} // namespace

std::string model_to_json(const SavedModel& saved) {
    json j;
    j["format"] = "sectortag.model";
    j["version"] = kModelFormat;
    j["algorithm"] = saved.algorithm;
    j["sector"] = saved.sector;
    if (std::holds_alternative<ForestModel>(saved.model)) {
        const auto& m = std::get<ForestModel>(saved.model);
        j["kind"] = m.kind == ForestKind::random_forest ? "random_forest" : "gradient_boosting";
        j["feature_dimension"] = m.feature_dimension;
        j["learning_rate"] = m.learning_rate;
        j["base_score"] = m.base_score;
        json trees = json::array();
        for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
        j["trees"] = std::move(trees);
    } else {
        const auto& m = std::get<LogisticModel>(saved.model);
        j["kind"] = "logistic";
        j["beta"] = m.beta;
        j["intercept"] = m.intercept;
        j["converged"] = m.converged;
        j["iterations"] = m.iterations;
    }
    return j.dump();
}

void save_model_json(const SavedModel& saved, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    out << model_to_json(saved) << "\n";
}

SavedModel load_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("malformed model file " + path + ": " + e.what());
    }
    if (j.value("format", "") != "sectortag.model")
        throw DataError("not a model file: " + path);
    if (j.value("version", -1) != kModelFormat)
        throw DataError("unsupported model format version in " + path);

    SavedModel saved;
    saved.algorithm = j.value("algorithm", "");
    saved.sector = j.value("sector", "");
    std::string kind = j.value("kind", "");
    if (kind == "logistic") {
        LogisticModel m;
        m.beta = j.at("beta").get<std::vector<double>>();
        m.intercept = j.at("intercept").get<double>();
        m.converged = j.value("converged", false);
        m.iterations = j.value("iterations", size_t{0});
        saved.model = std::move(m);
    } else if (kind == "random_forest" || kind == "gradient_boosting") {
        ForestModel m;
        m.kind = kind == "random_forest" ? ForestKind::random_forest
                                         : ForestKind::gradient_boosting;
        m.feature_dimension = j.at("feature_dimension").get<uint32_t>();
        m.learning_rate = j.at("learning_rate").get<double>();
        m.base_score = j.at("base_score").get<double>();
        for (const auto& t : j.at("trees")) m.trees.push_back(tree_from_json(t));
        saved.model = std::move(m);
    } else {
        throw DataError("unknown model kind '" + kind + "' in " + path);
    }
    return saved;
}

} // namespace sectortag
