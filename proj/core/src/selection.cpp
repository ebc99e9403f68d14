#include "sectortag/selection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sectortag/errors.hpp"
#include "sectortag/evaluation.hpp"
#include "sectortag/importance.hpp"
#include "sectortag/rng.hpp"
#include "sectortag/version.hpp"

namespace sectortag {

using nlohmann::json;

const std::vector<SelectionMeasure>& all_selection_measures() {
    static const std::vector<SelectionMeasure> measures = {
        SelectionMeasure::gbm_mdi,
        SelectionMeasure::gbm_prediction_change,
        SelectionMeasure::rf_mdi,
        SelectionMeasure::lr_abs_coefficient,
    };
    return measures;
}

std::string_view selection_measure_name(SelectionMeasure m) {
    switch (m) {
        case SelectionMeasure::gbm_mdi: return "gbm-mdi";
        case SelectionMeasure::gbm_prediction_change: return "gbm-prediction-change";
        case SelectionMeasure::rf_mdi: return "random-forest-mdi";
        case SelectionMeasure::lr_abs_coefficient: return "logistic-abs-coef";
    }
    return "?";
}

std::optional<SelectionMeasure> selection_measure_from_name(std::string_view name) {
    for (SelectionMeasure m : all_selection_measures())
        if (selection_measure_name(m) == name) return m;
    return std::nullopt;
}

std::vector<uint32_t> RankedFeatureList::top_above(double threshold) const {
    std::vector<uint32_t> out;
    for (const auto& [col, score] : ranking) {
        if (score <= threshold) break; // ranking is sorted descending
        out.push_back(col);
    }
    return out;
}

namespace {

RankedFeatureList ranking_from_scores(SelectionMeasure measure,
                                      const std::vector<double>& scores) {
    RankedFeatureList out;
    out.measure = measure;
    out.ranking.reserve(scores.size());
    for (uint32_t c = 0; c < scores.size(); ++c) out.ranking.emplace_back(c, scores[c]);
    std::sort(out.ranking.begin(), out.ranking.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

/// Inner-CV evaluation of a feature subset with the measure's own learner.
/// Returns the mean of per-fold AUCs; folds whose test part is single-class
/// are skipped. Returns nullopt when no fold could be scored.
std::optional<double> inner_cv_auc(SelectionMeasure measure, const DataMatrix& X_masked,
                                   std::span<const uint8_t> y, size_t inner_folds,
                                   const SelectionParams& params, uint64_t seed) {
    FoldAssignment folds = stratified_folds(y, inner_folds, derive_seed(seed, {0x1CF}));

    double auc_sum = 0.0;
    size_t scored = 0;
    for (size_t f = 0; f < inner_folds; ++f) {
        std::vector<size_t> train_rows, test_rows;
        for (size_t i = 0; i < y.size(); ++i)
            (folds.fold_of[i] == f ? test_rows : train_rows).push_back(i);
        if (train_rows.empty() || test_rows.empty()) continue;

        std::vector<uint8_t> y_train, y_test;
        for (size_t i : train_rows) y_train.push_back(y[i]);
        for (size_t i : test_rows) y_test.push_back(y[i]);
        size_t train_pos = 0, test_pos = 0;
        for (uint8_t v : y_train) train_pos += v;
        for (uint8_t v : y_test) test_pos += v;
        if (train_pos == 0 || train_pos == y_train.size()) continue;
        if (test_pos == 0 || test_pos == y_test.size()) continue;

        DataMatrix X_train = X_masked.select_rows(train_rows);
        DataMatrix X_test = X_masked.select_rows(test_rows);
        uint64_t fit_seed = derive_seed(seed, {0xF17, f});

        std::vector<double> scores(test_rows.size());
        switch (measure) {
            case SelectionMeasure::gbm_mdi:
            case SelectionMeasure::gbm_prediction_change: {
                ForestModel m = fit_gbm(X_train, y_train, params.gbm);
                for (size_t i = 0; i < test_rows.size(); ++i)
                    scores[i] = predict_score(m, X_test, i);
                break;
            }
            case SelectionMeasure::rf_mdi: {
                ForestModel m = fit_random_forest(X_train, y_train, params.rf, fit_seed);
                for (size_t i = 0; i < test_rows.size(); ++i)
                    scores[i] = predict_score(m, X_test, i);
                break;
            }
            case SelectionMeasure::lr_abs_coefficient: {
                LogisticModel m = fit_logistic(X_train, y_train, params.lr);
                for (size_t i = 0; i < test_rows.size(); ++i) {
                    auto cols = X_test.row_cols(i);
                    auto vals = X_test.row_vals(i);
                    double z = m.intercept;
                    for (size_t e = 0; e < cols.size(); ++e) z += vals[e] * m.beta[cols[e]];
                    scores[i] = sigmoid(z);
                }
                break;
            }
        }
        auc_sum += auc_from_scores(y_test, scores);
        ++scored;
    }
    if (scored == 0) return std::nullopt;
    return auc_sum / static_cast<double>(scored);
}

} // namespace

RankedFeatureList rank_features(SelectionMeasure measure, const DataMatrix& X,
                                std::span<const uint8_t> y, const SelectionParams& params,
                                uint64_t seed) {
    switch (measure) {
        case SelectionMeasure::gbm_mdi: {
            ForestModel m = fit_gbm(X, y, params.gbm);
            return ranking_from_scores(measure, importance_mdi(m).scores);
        }
        case SelectionMeasure::gbm_prediction_change: {
            ForestModel m = fit_gbm(X, y, params.gbm);
            return ranking_from_scores(measure, importance_prediction_change(m).scores);
        }
        case SelectionMeasure::rf_mdi: {
            ForestModel m = fit_random_forest(X, y, params.rf, derive_seed(seed, {0x2F}));
            return ranking_from_scores(measure, importance_mdi(m).scores);
        }
        case SelectionMeasure::lr_abs_coefficient: {
            LogisticModel m = fit_logistic(X, y, params.lr);
            return ranking_from_scores(measure, importance_abs_coefficient(m).scores);
        }
    }
    throw UsageError("unknown selection measure");
}

std::vector<double> quantile_grid(const RankedFeatureList& ranked,
                                  std::span<const double> quantiles) {
    std::vector<double> positive;
    for (const auto& [col, score] : ranked.ranking)
        if (score > 0.0) positive.push_back(score);
    if (positive.empty()) return {};
    std::sort(positive.begin(), positive.end());

    std::vector<double> grid;
    for (double q : quantiles) {
        double rank = q * static_cast<double>(positive.size());
        size_t idx = rank <= 1.0 ? 0 : static_cast<size_t>(std::ceil(rank)) - 1;
        idx = std::min(idx, positive.size() - 1);
        grid.push_back(positive[idx]);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

RankedFeatureList find_optimal_threshold(RankedFeatureList ranked, const DataMatrix& X,
                                         std::span<const uint8_t> y,
                                         std::span<const double> grid, size_t inner_folds,
                                         const SelectionParams& params, uint64_t seed) {
    if (grid.empty()) throw DataError("find_optimal_threshold: empty threshold grid");

    bool any = false;
    double best_auc = 0.0, best_threshold = 0.0;

    for (size_t gi = 0; gi < grid.size(); ++gi) {
        double th = grid[gi];
        std::vector<uint32_t> top = ranked.top_above(th);
        if (top.empty()) continue;

        std::vector<bool> keep(X.n_features, false);
        for (uint32_t c : top) keep[c] = true;
        DataMatrix X_masked = X.masked(keep);

        auto auc = inner_cv_auc(ranked.measure, X_masked, y, inner_folds, params,
                                derive_seed(seed, {0x414, gi}));
        if (!auc) continue;
        // >= so that equal scores resolve toward the larger threshold
        // (grid is ascending), i.e. the sparser feature set
        if (!any || *auc >= best_auc) {
            any = true;
            best_auc = *auc;
            best_threshold = th;
        }
    }
    if (!any)
        throw DataError("find_optimal_threshold: every grid threshold was skipped");

    ranked.threshold_set = true;
    ranked.chosen_threshold = best_threshold;
    ranked.chosen_inner_auc = best_auc;
    ranked.top_set = ranked.top_above(best_threshold);
    return ranked;
}

SelectedFeatures integrate(Sector sector, std::vector<RankedFeatureList> lists,
                           uint32_t feature_dimension) {
    for (const auto& l : lists)
        if (l.ranking.size() != feature_dimension)
            throw DataError("integrate: ranked lists come from mismatched feature spaces");

    SelectedFeatures out;
    out.sector = sector;
    std::set<uint32_t> merged;
    for (const auto& l : lists) {
        for (uint32_t c : l.top_set) {
            merged.insert(c);
            out.provenance[c].insert(l.measure);
        }
    }
    out.integrated.assign(merged.begin(), merged.end());

    out.overlap_pct.assign(lists.size(), std::vector<double>(lists.size(), 0.0));
    for (size_t a = 0; a < lists.size(); ++a) {
        std::set<uint32_t> sa(lists[a].top_set.begin(), lists[a].top_set.end());
        for (size_t b = 0; b < lists.size(); ++b) {
            std::set<uint32_t> sb(lists[b].top_set.begin(), lists[b].top_set.end());
            size_t inter = 0;
            for (uint32_t c : sa) inter += sb.count(c);
            size_t uni = sa.size() + sb.size() - inter;
            out.overlap_pct[a][b] =
                uni == 0 ? 0.0 : 100.0 * static_cast<double>(inter) / static_cast<double>(uni);
        }
    }
    out.per_algorithm = std::move(lists);
    return out;
}

SelectedFeatures run_feature_selection(Sector sector, const DataMatrix& X,
                                       std::span<const uint8_t> y,
                                       const SelectionParams& params, uint64_t seed) {
    // the two boosting measures share one fitted model
    ForestModel gbm = fit_gbm(X, y, params.gbm);
    std::vector<RankedFeatureList> lists;
    lists.push_back(ranking_from_scores(SelectionMeasure::gbm_mdi, importance_mdi(gbm).scores));
    lists.push_back(ranking_from_scores(SelectionMeasure::gbm_prediction_change,
                                        importance_prediction_change(gbm).scores));
    lists.push_back(rank_features(SelectionMeasure::rf_mdi, X, y, params,
                                  derive_seed(seed, {0x3A, 2})));
    lists.push_back(rank_features(SelectionMeasure::lr_abs_coefficient, X, y, params,
                                  derive_seed(seed, {0x3A, 3})));

    for (size_t i = 0; i < lists.size(); ++i) {
        std::vector<double> grid = quantile_grid(lists[i], params.grid_quantiles);
        if (grid.empty())
            throw DataError(std::string("feature selection: measure ") +
                            std::string(selection_measure_name(lists[i].measure)) +
                            " produced no positive importance scores");
        lists[i] = find_optimal_threshold(std::move(lists[i]), X, y, grid,
                                          params.inner_folds, params,
                                          derive_seed(seed, {0x7E, i}));
    }
    return integrate(sector, std::move(lists), X.n_features);
}

std::string selected_features_to_json(const SelectedFeatures& sel, const FeatureSpace& space) {
    json j;
    j["format"] = "sectortag.selected_features";
    j["version"] = kSelectedFeaturesFormat;
    j["sector"] = std::string(sector_name(sel.sector));

    json integrated = json::array();
    for (uint32_t c : sel.integrated) integrated.push_back(space.column_name(c));
    j["integrated"] = std::move(integrated);

    json prov = json::object();
    for (const auto& [col, measures] : sel.provenance) {
        json names = json::array();
        for (SelectionMeasure m : measures) names.push_back(std::string(selection_measure_name(m)));
        prov[space.column_name(col)] = std::move(names);
    }
    j["provenance"] = std::move(prov);

    json per_algo = json::array();
    for (const auto& l : sel.per_algorithm) {
        json entry;
        entry["algorithm"] = std::string(selection_measure_name(l.measure));
        entry["threshold"] = l.chosen_threshold;
        entry["inner_auc"] = l.chosen_inner_auc;
        json top = json::array();
        for (const auto& [col, score] : l.ranking) {
            if (score <= l.chosen_threshold) break; // top_set is this prefix
            top.push_back(json::array({space.column_name(col), score}));
        }
        entry["top"] = std::move(top);
        per_algo.push_back(std::move(entry));
    }
    j["per_algorithm"] = std::move(per_algo);
    j["overlap_pct"] = sel.overlap_pct;
    return j.dump();
}

void save_selected_features(const SelectedFeatures& sel, const FeatureSpace& space,
                            const std::string& json_path) {
    std::ofstream out(json_path);
    if (!out) throw DataError("cannot write selected-features file: " + json_path);
    out << selected_features_to_json(sel, space) << "\n";
}

std::string selected_features_csv_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed selected-features document: ") + e.what());
    }

    std::map<std::string, double> best;
    for (const auto& entry : j.at("per_algorithm")) {
        const auto& top = entry.at("top");
        if (top.empty()) continue;
        double max_score = top.at(0).at(1).get<double>();
        if (max_score <= 0.0) continue;
        for (const auto& pair : top) {
            std::string name = pair.at(0).get<std::string>();
            double norm = pair.at(1).get<double>() / max_score;
            auto it = best.find(name);
            if (it == best.end() || norm > it->second) best[name] = norm;
        }
    }

    std::ostringstream out;
    out << "feature,score,algorithms\n";
    for (const auto& name_json : j.at("integrated")) {
        std::string name = name_json.get<std::string>();
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", best.count(name) ? best[name] : 0.0);
        out << name << "," << buf << ",";
        bool first = true;
        if (j.at("provenance").contains(name)) {
            for (const auto& m : j.at("provenance").at(name)) {
                if (!first) out << ";";
                out << m.get<std::string>();
                first = false;
            }
        }
        out << "\n";
    }
    return out.str();
}

std::set<uint32_t> load_selected_columns(const std::string& json_path,
                                         const FeatureSpace& space) {
    std::ifstream in(json_path);
    if (!in) throw DataError("cannot open selected-features file: " + json_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("malformed selected-features file " + json_path + ": " + e.what());
    }
    if (j.value("format", "") != "sectortag.selected_features")
        throw DataError("not a selected-features file: " + json_path);
    if (j.value("version", -1) != kSelectedFeaturesFormat)
        throw DataError("unsupported selected-features format version in " + json_path);

    std::set<uint32_t> cols;
    for (const auto& name : j.at("integrated")) {
        std::string n = name.get<std::string>();
        if (auto c = space.word_column(n)) {
            cols.insert(*c);
        } else if (auto t = space.topic_column(n)) {
            cols.insert(*t);
        } else {
            throw DataError("selected feature '" + n + "' is not present in the feature space");
        }
    }
    return cols;
}

} // namespace sectortag
