#include "sectortag/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "sectortag/corpus_io.hpp"
#include "sectortag/errors.hpp"
#include "sectortag/reports.hpp"
#include "sectortag/rng.hpp"
#include "sectortag/sha256.hpp"
#include "sectortag/stats.hpp"
#include "sectortag/version.hpp"
#include "sectortag/wilcoxon.hpp"

namespace sectortag {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("missing artifact: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void run_parallel(size_t workers, std::vector<std::function<void()>>& tasks) {
    if (workers <= 1 || tasks.size() <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<size_t> next{0};
    size_t nthreads = std::min(workers, tasks.size());
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t w = 0; w < nthreads; ++w) {
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                tasks[i]();
            }
        });
    }
    for (auto& th : pool) th.join();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json algorithm_params_json(const RunConfig& cfg) {
    json algos = json::array();
    for (Algorithm a : cfg.algorithms) {
        json e;
        e["name"] = std::string(algorithm_name(a));
        switch (a) {
            case Algorithm::lr:
                e["l2_lambda"] = cfg.algo.lr.l2_lambda;
                e["max_iter"] = cfg.algo.lr.max_iter;
                e["tol"] = cfg.algo.lr.tol;
                break;
            case Algorithm::rf:
                e["n_trees"] = cfg.algo.rf.n_trees;
                e["max_depth"] = cfg.algo.rf.max_depth;
                e["min_samples_leaf"] = cfg.algo.rf.min_samples_leaf;
                e["bootstrap"] = cfg.algo.rf.bootstrap;
                break;
            case Algorithm::gbm:
                e["n_stages"] = cfg.algo.gbm.n_stages;
                e["learning_rate"] = cfg.algo.gbm.learning_rate;
                e["max_depth"] = cfg.algo.gbm.max_depth;
                e["min_samples_leaf"] = cfg.algo.gbm.min_samples_leaf;
                break;
        }
        algos.push_back(std::move(e));
    }
    return algos;
}

} // namespace

const std::map<std::string, std::string>& env_override_table() {
    static const std::map<std::string, std::string> table = {
        {"SECTOR_TAGGER_SEED", "/seed"},
        {"SECTOR_TAGGER_OUTPUT_DIR", "/output_dir"},
        {"SECTOR_TAGGER_EMIT_MODELS", "/emit_models"},
        {"SECTOR_TAGGER_CORPUS_PATH", "/corpus/path"},
        {"SECTOR_TAGGER_CORPUS_TAXONOMY", "/corpus/taxonomy"},
        {"SECTOR_TAGGER_CORPUS_MERGE_MAP", "/corpus/merge_map"},
        {"SECTOR_TAGGER_CORPUS_STOPWORDS", "/corpus/stopwords"},
        {"SECTOR_TAGGER_CV_FOLDS", "/cv/folds"},
        {"SECTOR_TAGGER_CV_DECISION_THRESHOLD", "/cv/decision_threshold"},
        {"SECTOR_TAGGER_FEATURES_MIN_DF", "/features/min_df"},
        {"SECTOR_TAGGER_FEATURES_WEIGHTING", "/features/weighting"},
        {"SECTOR_TAGGER_COMPARISON_RESAMPLES", "/comparison/resamples"},
    };
    return table;
}

RunConfig parse_run_config(const std::string& json_text, const std::string& source_name) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw UsageError("malformed config " + source_name + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config must be a JSON object: " + source_name);

    RunConfig cfg;
    try {
        if (j.contains("corpus")) {
            const json& c = j["corpus"];
            cfg.corpus_path = c.value("path", "");
            cfg.taxonomy_path = c.value("taxonomy", "");
            cfg.merge_map_path = c.value("merge_map", "");
            cfg.stopwords_path = c.value("stopwords", "");
            if (c.contains("synth")) {
                const json& s = c["synth"];
                SynthSpec spec;
                spec.docs = s.value("docs", spec.docs);
                spec.vocab_per_sector = s.value("vocab_per_sector", spec.vocab_per_sector);
                spec.background_vocab = s.value("background_vocab", spec.background_vocab);
                spec.multi_label_fraction =
                    s.value("multi_label_fraction", spec.multi_label_fraction);
                spec.label_noise = s.value("label_noise", spec.label_noise);
                spec.signal_fraction = s.value("signal_fraction", spec.signal_fraction);
                spec.tokens_per_doc = s.value("tokens_per_doc", spec.tokens_per_doc);
                spec.seed = s.contains("seed") ? s["seed"].get<uint64_t>()
                                               : j.value("seed", uint64_t{42});
                cfg.synth = spec;
            }
        }

        cfg.sector_names = j.value("sectors", std::vector<std::string>{});
        if (cfg.sector_names.empty())
            for (Sector s : all_sectors()) cfg.sector_names.emplace_back(sector_name(s));

        if (j.contains("algorithms")) {
            for (const auto& e : j["algorithms"]) {
                std::string name = e.is_string() ? e.get<std::string>() : e.value("name", "");
                cfg.algorithm_names.push_back(name);
                if (!e.is_object()) continue;
                if (name == "lr") {
                    cfg.algo.lr.l2_lambda = e.value("l2_lambda", cfg.algo.lr.l2_lambda);
                    cfg.algo.lr.max_iter = e.value("max_iter", cfg.algo.lr.max_iter);
                    cfg.algo.lr.tol = e.value("tol", cfg.algo.lr.tol);
                } else if (name == "rf") {
                    cfg.algo.rf.n_trees = e.value("n_trees", cfg.algo.rf.n_trees);
                    cfg.algo.rf.max_depth = e.value("max_depth", cfg.algo.rf.max_depth);
                    cfg.algo.rf.min_samples_leaf =
                        e.value("min_samples_leaf", cfg.algo.rf.min_samples_leaf);
                    cfg.algo.rf.bootstrap = e.value("bootstrap", cfg.algo.rf.bootstrap);
                } else if (name == "gbm") {
                    cfg.algo.gbm.n_stages = e.value("n_stages", cfg.algo.gbm.n_stages);
                    cfg.algo.gbm.learning_rate =
                        e.value("learning_rate", cfg.algo.gbm.learning_rate);
                    cfg.algo.gbm.max_depth = e.value("max_depth", cfg.algo.gbm.max_depth);
                    cfg.algo.gbm.min_samples_leaf =
                        e.value("min_samples_leaf", cfg.algo.gbm.min_samples_leaf);
                }
            }
        } else {
            cfg.algorithm_names = {"lr", "rf", "gbm"};
        }

        if (j.contains("features")) {
            const json& f = j["features"];
            cfg.weighting_name_raw = f.value("weighting", cfg.weighting_name_raw);
            cfg.min_df = f.value("min_df", cfg.min_df);
            cfg.topic_ancestors = f.value("topic_ancestors", cfg.topic_ancestors);
        }

        cfg.feature_mode_names = j.value("feature_modes", std::vector<std::string>{"full"});

        if (j.contains("cv")) {
            const json& c = j["cv"];
            cfg.folds = c.value("folds", cfg.folds);
            cfg.decision_threshold = c.value("decision_threshold", cfg.decision_threshold);
            if (c.contains("grey")) {
                cfg.grey.first = c["grey"].at(0).get<double>();
                cfg.grey.second = c["grey"].at(1).get<double>();
            }
        }
        if (j.contains("selection")) {
            const json& s = j["selection"];
            cfg.grid_quantiles = s.value("grid_quantiles", cfg.grid_quantiles);
            cfg.inner_folds = s.value("inner_folds", cfg.inner_folds);
        }
        if (j.contains("comparison")) cfg.resamples = j["comparison"].value("resamples", size_t{0});
        cfg.emit_models = j.value("emit_models", cfg.emit_models);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.output_dir = j.value("output_dir", "");
    } catch (const json::exception& e) {
        throw UsageError("malformed config " + source_name + ": " + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError("malformed config " + path + ": " + e.what());
    }
    for (const auto& [env_name, pointer] : env_override_table()) {
        const char* v = std::getenv(env_name.c_str());
        if (!v) continue;
        json value;
        try {
            value = json::parse(v);
        } catch (const json::exception&) {
            value = std::string(v);
        }
        j[json::json_pointer(pointer)] = value;
    }
    return parse_run_config(j.dump(), path);
}

std::vector<std::string> validate_run_config(RunConfig& cfg) {
    std::vector<std::string> errs;
    auto err = [&](const std::string& field, const std::string& msg) {
        errs.push_back(field + ": " + msg);
    };

    size_t corpus_size = 0;
    bool has_path = !cfg.corpus_path.empty();
    if (has_path == cfg.synth.has_value()) {
        err("corpus", "exactly one of corpus.path and corpus.synth must be given");
    } else if (has_path) {
        if (!fs::exists(cfg.corpus_path)) {
            err("corpus.path", "file not found: " + cfg.corpus_path);
        } else {
            std::ifstream in(cfg.corpus_path);
            std::string line;
            while (std::getline(in, line))
                if (!line.empty()) ++corpus_size;
        }
        if (cfg.taxonomy_path.empty())
            err("corpus.taxonomy", "required when corpus.path is used");
        else if (!fs::exists(cfg.taxonomy_path))
            err("corpus.taxonomy", "file not found: " + cfg.taxonomy_path);
        if (!cfg.merge_map_path.empty() && !fs::exists(cfg.merge_map_path))
            err("corpus.merge_map", "file not found: " + cfg.merge_map_path);
    } else {
        const SynthSpec& s = *cfg.synth;
        if (s.docs == 0) err("corpus.synth.docs", "must be positive");
        if (s.vocab_per_sector == 0) err("corpus.synth.vocab_per_sector", "must be positive");
        if (s.background_vocab == 0) err("corpus.synth.background_vocab", "must be positive");
        auto ratio = [&](double v, const char* field) {
            if (v < 0.0 || v > 1.0) err(field, "must be in [0,1]");
        };
        ratio(s.multi_label_fraction, "corpus.synth.multi_label_fraction");
        ratio(s.label_noise, "corpus.synth.label_noise");
        ratio(s.signal_fraction, "corpus.synth.signal_fraction");
        corpus_size = s.docs;
    }
    if (!cfg.stopwords_path.empty() && !fs::exists(cfg.stopwords_path))
        err("corpus.stopwords", "file not found: " + cfg.stopwords_path);

    cfg.sectors.clear();
    if (cfg.sector_names.empty()) err("sectors", "must not be empty");
    std::set<std::string> seen_sector;
    for (const auto& name : cfg.sector_names) {
        if (!seen_sector.insert(name).second) {
            err("sectors", "duplicate sector '" + name + "'");
            continue;
        }
        if (auto s = sector_from_name(name)) {
            cfg.sectors.push_back(*s);
        } else {
            std::string valid;
            for (Sector s2 : all_sectors()) {
                if (!valid.empty()) valid += ", ";
                valid += sector_name(s2);
            }
            err("sectors", "unknown sector '" + name + "'; valid: " + valid);
        }
    }

    cfg.algorithms.clear();
    if (cfg.algorithm_names.empty()) err("algorithms", "must not be empty");
    std::set<std::string> seen_algo;
    for (const auto& name : cfg.algorithm_names) {
        if (!seen_algo.insert(name).second) {
            err("algorithms", "duplicate algorithm '" + name + "'");
            continue;
        }
        if (auto a = algorithm_from_name(name))
            cfg.algorithms.push_back(*a);
        else
            err("algorithms", "unknown algorithm '" + name + "'; valid: lr, rf, gbm");
    }

    cfg.feature_modes.clear();
    if (cfg.feature_mode_names.empty()) err("feature_modes", "must not be empty");
    std::set<std::string> seen_mode;
    for (const auto& name : cfg.feature_mode_names) {
        if (!seen_mode.insert(name).second) {
            err("feature_modes", "duplicate mode '" + name + "'");
            continue;
        }
        if (auto m = feature_mode_from_name(name))
            cfg.feature_modes.push_back(*m);
        else
            err("feature_modes", "unknown mode '" + name + "'; valid: full, selected");
    }

    if (auto w = weighting_from_name(cfg.weighting_name_raw))
        cfg.weighting = *w;
    else
        err("features.weighting", "unknown weighting '" + cfg.weighting_name_raw +
                                      "'; valid: one_hot, tf_idf");
    if (cfg.min_df == 0) err("features.min_df", "must be >= 1");

    if (cfg.folds < 2) err("cv.folds", "must be >= 2");
    if (corpus_size > 0 && cfg.folds > corpus_size)
        err("cv.folds", "exceeds the corpus size (" + std::to_string(corpus_size) + ")");
    if (cfg.decision_threshold <= 0.0 || cfg.decision_threshold >= 1.0)
        err("cv.decision_threshold", "must be in (0,1)");
    if (cfg.grey.first < 0.0 || cfg.grey.second > 1.0 || cfg.grey.first > cfg.grey.second)
        err("cv.grey", "must be an interval within [0,1]");

    bool selected_active = false;
    for (FeatureMode m : cfg.feature_modes)
        if (m == FeatureMode::selected) selected_active = true;
    if (selected_active) {
        if (cfg.grid_quantiles.empty()) err("selection.grid_quantiles", "must not be empty");
        for (double q : cfg.grid_quantiles)
            if (q <= 0.0 || q > 1.0) {
                err("selection.grid_quantiles", "quantiles must be in (0,1]");
                break;
            }
        if (cfg.inner_folds < 2) err("selection.inner_folds", "must be >= 2");
    }

    if (cfg.resamples == 1) err("comparison.resamples", "must be 0 or >= 2");
    if (cfg.resamples >= 2 && cfg.algorithms.size() < 2)
        err("comparison.resamples", "statistical comparison requires >= 2 algorithms");

    if (cfg.algo.rf.n_trees == 0) err("algorithms.rf.n_trees", "must be >= 1");
    if (cfg.algo.gbm.learning_rate <= 0.0)
        err("algorithms.gbm.learning_rate", "must be positive");
    if (cfg.algo.lr.max_iter == 0) err("algorithms.lr.max_iter", "must be >= 1");

    if (cfg.output_dir.empty()) err("output_dir", "must not be empty");
    return errs;
}

std::string run_config_to_json(const RunConfig& cfg) {
    json j;
    json corpus;
    corpus["path"] = cfg.corpus_path;
    corpus["taxonomy"] = cfg.taxonomy_path;
    corpus["merge_map"] = cfg.merge_map_path;
    corpus["stopwords"] = cfg.stopwords_path;
    if (cfg.synth) {
        json s;
        s["docs"] = cfg.synth->docs;
        s["vocab_per_sector"] = cfg.synth->vocab_per_sector;
        s["background_vocab"] = cfg.synth->background_vocab;
        s["multi_label_fraction"] = cfg.synth->multi_label_fraction;
        s["label_noise"] = cfg.synth->label_noise;
        s["signal_fraction"] = cfg.synth->signal_fraction;
        s["tokens_per_doc"] = cfg.synth->tokens_per_doc;
        s["seed"] = cfg.synth->seed;
        corpus["synth"] = std::move(s);
    }
    j["corpus"] = std::move(corpus);

    json sectors = json::array();
    for (Sector s : cfg.sectors) sectors.push_back(std::string(sector_name(s)));
    j["sectors"] = std::move(sectors);
    j["algorithms"] = algorithm_params_json(cfg);

    json features;
    features["weighting"] = std::string(weighting_name(cfg.weighting));
    features["min_df"] = cfg.min_df;
    features["topic_ancestors"] = cfg.topic_ancestors;
    j["features"] = std::move(features);

    json modes = json::array();
    for (FeatureMode m : cfg.feature_modes) modes.push_back(std::string(feature_mode_name(m)));
    j["feature_modes"] = std::move(modes);

    json cv;
    cv["folds"] = cfg.folds;
    cv["decision_threshold"] = cfg.decision_threshold;
    cv["grey"] = json::array({cfg.grey.first, cfg.grey.second});
    j["cv"] = std::move(cv);

    json selection;
    selection["grid_quantiles"] = cfg.grid_quantiles;
    selection["inner_folds"] = cfg.inner_folds;
    j["selection"] = std::move(selection);

    j["comparison"] = json{{"resamples", cfg.resamples}};
    j["emit_models"] = cfg.emit_models;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    return j.dump(2);
}

CvParams cv_params_from_config(const RunConfig& cfg) {
    CvParams p;
    p.k = cfg.folds;
    p.seed = cfg.seed;
    p.weighting = cfg.weighting;
    p.min_df = cfg.min_df;
    p.topic_ancestors = cfg.topic_ancestors;
    p.decision_threshold = cfg.decision_threshold;
    p.grey = cfg.grey;
    p.algo = cfg.algo;
    p.selection.grid_quantiles = cfg.grid_quantiles;
    p.selection.inner_folds = cfg.inner_folds;
    p.selection.rf = cfg.algo.rf;
    p.selection.gbm = cfg.algo.gbm;
    p.selection.lr = cfg.algo.lr;
    return p;
}

std::string RunManifest::to_json() const {
    json j;
    j["format"] = "sectortag.manifest";
    j["version"] = kManifestFormat;
    j["toolkit_version"] = toolkit_version;
    j["config"] = json::parse(config_echo);
    j["all_ok"] = all_ok;

    json stage_arr = json::array();
    for (const auto& s : stages)
        stage_arr.push_back(json{{"name", s.name}, {"seconds", s.seconds}});
    j["stages"] = std::move(stage_arr);

    json cell_arr = json::array();
    for (const auto& c : cells) {
        json e;
        e["sector"] = std::string(sector_name(c.sector));
        e["algorithm"] = std::string(algorithm_name(c.algorithm));
        e["mode"] = std::string(feature_mode_name(c.mode));
        e["ok"] = c.ok;
        e["message"] = c.message;
        e["auc"] = c.auc;
        e["f"] = c.f;
        json times = json::array();
        for (const auto& t : c.fold_times)
            times.push_back(json{{"vectorize_s", t.vectorize_s},
                                 {"selection_s", t.selection_s},
                                 {"train_s", t.train_s},
                                 {"score_s", t.score_s}});
        e["fold_times"] = std::move(times);
        cell_arr.push_back(std::move(e));
    }
    j["cells"] = std::move(cell_arr);
    j["artifacts"] = artifacts;
    return j.dump(2);
}

namespace {

struct CellData {
    CellStatus status;
    CvReport report;
    bool have_report = false;
};

struct ComparisonData {
    bool ok = false;
    ComparisonResult result;
};

fs::path cell_dir(const fs::path& out, Sector s, Algorithm a, FeatureMode m) {
    return out / "cells" / std::string(sector_name(s)) / std::string(algorithm_name(a)) /
           std::string(feature_mode_name(m));
}

std::string report_to_json(const CvReport& r) {
    json j;
    j["sector"] = std::string(sector_name(r.sector));
    j["algorithm"] = std::string(algorithm_name(r.algorithm));
    j["mode"] = std::string(feature_mode_name(r.feature_mode));
    j["auc"] = r.auc;
    j["f"] = r.f.value;
    j["precision"] = r.f.precision;
    j["recall"] = r.f.recall;
    j["f_degenerate"] = r.f.degenerate;
    j["false_negatives"] = r.errors.false_negatives;
    j["false_positives"] = r.errors.false_positives;
    j["grey_zone"] = r.errors.grey_zone_count;
    j["skipped_folds"] = r.skipped_folds;
    j["few_positives_warning"] = r.few_positives_warning;
    j["selected_sizes"] = r.selected_sizes;
    return j.dump(2);
}

std::string comparison_to_json(const ComparisonResult& c) {
    json j;
    json names = json::array();
    for (Algorithm a : c.algorithms) names.push_back(std::string(algorithm_name(a)));
    j["algorithms"] = std::move(names);
    j["auc_samples"] = c.auc_samples;
    j["f_samples"] = c.f_samples;
    j["mean_auc"] = c.mean_auc;
    j["mean_f"] = c.mean_f;
    j["p_auc"] = c.p_auc;
    j["p_f"] = c.p_f;
    j["auc_top_group"] = c.auc_top_group;
    j["f_top_group"] = c.f_top_group;
    return j.dump(2);
}

ComparisonResult comparison_from_json(const std::string& text) {
    json j = json::parse(text);
    ComparisonResult c;
    for (const auto& n : j.at("algorithms")) {
        auto a = algorithm_from_name(n.get<std::string>());
        if (!a) throw DataError("comparison file names unknown algorithm");
        c.algorithms.push_back(*a);
    }
    c.auc_samples = j.at("auc_samples").get<std::vector<std::vector<double>>>();
    c.f_samples = j.at("f_samples").get<std::vector<std::vector<double>>>();
    c.mean_auc = j.at("mean_auc").get<std::vector<double>>();
    c.mean_f = j.at("mean_f").get<std::vector<double>>();
    c.p_auc = j.at("p_auc").get<std::vector<std::vector<double>>>();
    c.p_f = j.at("p_f").get<std::vector<std::vector<double>>>();
    c.auc_top_group = j.at("auc_top_group").get<std::vector<bool>>();
    c.f_top_group = j.at("f_top_group").get<std::vector<bool>>();
    return c;
}

/// Metric tables from per-cell values plus (optionally) per-sector
/// comparison results. With comparison data the cell value is the mean over
/// re-sampled CVs and bolding follows the indistinguishable-from-best rule;
/// otherwise single-run values with best-only bolding.
std::vector<MetricTable> build_tables(
    const RunConfig& cfg,
    const std::function<const CellData*(Sector, Algorithm, FeatureMode)>& cell_of,
    const std::function<const ComparisonData*(FeatureMode, Sector)>& comparison_of);

std::vector<MetricTable> build_tables(
    const RunConfig& cfg,
    const std::function<const CellData*(Sector, Algorithm, FeatureMode)>& cell_of,
    const std::function<const ComparisonData*(FeatureMode, Sector)>& comparison_of) {
    std::vector<MetricTable> tables;
    for (FeatureMode mode : cfg.feature_modes) {
        MetricTable t;
        t.mode = mode;
        t.algorithms = cfg.algorithms;
        t.cells.assign(cfg.algorithms.size(), {});
        t.mean_col.assign(cfg.algorithms.size(), {});

        std::set<int> active_sectors;
        for (Sector s : cfg.sectors) active_sectors.insert(static_cast<int>(s));

        for (size_t r = 0; r < cfg.algorithms.size(); ++r) {
            for (Sector s : all_sectors()) {
                if (!active_sectors.count(static_cast<int>(s))) continue;
                const CellData* cd = cell_of(s, cfg.algorithms[r], mode);
                if (!cd || !cd->status.ok) continue;
                MetricCell& cell = t.cells[r][static_cast<size_t>(s)];
                cell.present = true;
                const ComparisonData* cmp = comparison_of(mode, s);
                if (cmp && cmp->ok) {
                    cell.auc = cmp->result.mean_auc[r];
                    cell.f = cmp->result.mean_f[r];
                    cell.auc_bold = cmp->result.auc_top_group[r];
                    cell.f_bold = cmp->result.f_top_group[r];
                } else {
                    cell.auc = cd->status.auc;
                    cell.f = cd->status.f;
                }
            }
        }

        // best-only bolding for columns without comparison data
        for (Sector s : all_sectors()) {
            size_t col = static_cast<size_t>(s);
            const ComparisonData* cmp = comparison_of(mode, s);
            if (cmp && cmp->ok) continue;
            double best_auc = -1.0, best_f = -1.0;
            for (size_t r = 0; r < cfg.algorithms.size(); ++r) {
                if (!t.cells[r][col].present) continue;
                best_auc = std::max(best_auc, t.cells[r][col].auc);
                best_f = std::max(best_f, t.cells[r][col].f);
            }
            for (size_t r = 0; r < cfg.algorithms.size(); ++r) {
                if (!t.cells[r][col].present) continue;
                t.cells[r][col].auc_bold = t.cells[r][col].auc == best_auc;
                t.cells[r][col].f_bold = t.cells[r][col].f == best_f;
            }
        }

        // mean column: row mean across present sectors; bolding via row-mean
        // samples when every present sector has comparison data
        bool all_cmp = true;
        size_t n_resamples = 0;
        for (size_t r = 0; r < cfg.algorithms.size(); ++r) {
            double auc_sum = 0.0, f_sum = 0.0;
            size_t count = 0;
            for (Sector s : all_sectors()) {
                const MetricCell& c = t.cells[r][static_cast<size_t>(s)];
                if (!c.present) continue;
                auc_sum += c.auc;
                f_sum += c.f;
                ++count;
            }
            if (count > 0) {
                t.mean_col[r].present = true;
                t.mean_col[r].auc = auc_sum / static_cast<double>(count);
                t.mean_col[r].f = f_sum / static_cast<double>(count);
            }
        }
        for (Sector s : all_sectors()) {
            bool any_present = false;
            for (size_t r = 0; r < cfg.algorithms.size(); ++r)
                any_present |= t.cells[r][static_cast<size_t>(s)].present;
            if (!any_present) continue;
            const ComparisonData* cmp = comparison_of(mode, s);
            if (!cmp || !cmp->ok) {
                all_cmp = false;
            } else if (!cmp->result.auc_samples.empty()) {
                n_resamples = cmp->result.auc_samples[0].size();
            }
        }

        if (all_cmp && n_resamples >= 2) {
            // paired row-mean samples across sectors
            auto flags_for = [&](bool auc_metric) {
                std::vector<std::vector<double>> row_means(
                    cfg.algorithms.size(), std::vector<double>(n_resamples, 0.0));
                for (size_t r = 0; r < cfg.algorithms.size(); ++r) {
                    size_t count = 0;
                    for (Sector s : all_sectors()) {
                        const ComparisonData* cmp = comparison_of(mode, s);
                        if (!cmp || !cmp->ok) continue;
                        const auto& samples = auc_metric ? cmp->result.auc_samples[r]
                                                         : cmp->result.f_samples[r];
                        for (size_t i = 0; i < n_resamples; ++i) row_means[r][i] += samples[i];
                        ++count;
                    }
                    if (count > 0)
                        for (double& v : row_means[r]) v /= static_cast<double>(count);
                }
                size_t best = 0;
                auto mean_of = [&](size_t r) {
                    double s = 0.0;
                    for (double v : row_means[r]) s += v;
                    return s / static_cast<double>(n_resamples);
                };
                for (size_t r = 1; r < cfg.algorithms.size(); ++r)
                    if (mean_of(r) > mean_of(best)) best = r;
                std::vector<bool> flags(cfg.algorithms.size(), false);
                flags[best] = true;
                for (size_t r = 0; r < cfg.algorithms.size(); ++r) {
                    if (r == best) continue;
                    std::vector<double> diffs(n_resamples);
                    for (size_t i = 0; i < n_resamples; ++i)
                        diffs[i] = row_means[r][i] - row_means[best][i];
                    if (wilcoxon_signed_rank(diffs).p_value > 0.001) flags[r] = true;
                }
                return flags;
            };
            auto auc_flags = flags_for(true);
            auto f_flags = flags_for(false);
            for (size_t r = 0; r < cfg.algorithms.size(); ++r) {
                t.mean_col[r].auc_bold = t.mean_col[r].present && auc_flags[r];
                t.mean_col[r].f_bold = t.mean_col[r].present && f_flags[r];
            }
        } else {
            double best_auc = -1.0, best_f = -1.0;
            for (const auto& c : t.mean_col) {
                if (!c.present) continue;
                best_auc = std::max(best_auc, c.auc);
                best_f = std::max(best_f, c.f);
            }
            for (auto& c : t.mean_col) {
                if (!c.present) continue;
                c.auc_bold = c.auc == best_auc;
                c.f_bold = c.f == best_f;
            }
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

std::vector<CellSummary> build_cell_summaries(const RunConfig& cfg,
                                              const std::vector<CellData>& cells) {
    std::vector<CellSummary> out;
    for (const auto& cd : cells) {
        CellSummary s;
        s.sector = cd.status.sector;
        s.algorithm = cd.status.algorithm;
        s.mode = cd.status.mode;
        s.ok = cd.status.ok;
        s.message = cd.status.message;
        if (cd.have_report) {
            s.auc = cd.report.auc;
            s.f = cd.report.f.value;
            s.precision = cd.report.f.precision;
            s.recall = cd.report.f.recall;
            s.false_negatives = cd.report.errors.false_negatives;
            s.false_positives = cd.report.errors.false_positives;
            s.grey_zone = cd.report.errors.grey_zone_count;
            s.skipped_folds = cd.report.skipped_folds;
            if (!cd.report.selected_sizes.empty()) {
                double sum = 0.0;
                for (size_t v : cd.report.selected_sizes) sum += static_cast<double>(v);
                s.selected_mean_size = sum / static_cast<double>(cd.report.selected_sizes.size());
            }
        }
        out.push_back(std::move(s));
    }
    (void)cfg;
    return out;
}

std::vector<CellTiming> build_cell_timings(const std::vector<CellData>& cells) {
    std::vector<CellTiming> out;
    for (const auto& cd : cells) {
        if (!cd.status.ok) continue;
        CellTiming t;
        t.sector = cd.status.sector;
        t.algorithm = cd.status.algorithm;
        t.mode = cd.status.mode;
        for (const auto& ft : cd.status.fold_times) {
            t.vectorize_s += ft.vectorize_s;
            t.selection_s += ft.selection_s;
            t.train_s += ft.train_s;
            t.score_s += ft.score_s;
        }
        out.push_back(t);
    }
    return out;
}

PooledScores pooled_from_csv(const std::string& text) {
    PooledScores pooled;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ScoredEntry e;
        size_t p1 = line.find(',');
        size_t p2 = line.find(',', p1 + 1);
        size_t p3 = line.find(',', p2 + 1);
        e.article_id = line.substr(0, p1);
        e.fold = static_cast<uint32_t>(std::stoul(line.substr(p1 + 1, p2 - p1 - 1)));
        e.label = static_cast<uint8_t>(std::stoi(line.substr(p2 + 1, p3 - p2 - 1)));
        e.score = std::strtod(line.c_str() + p3 + 1, nullptr);
        pooled.add(std::move(e));
    }
    return pooled;
}

} // namespace

RunManifest run_experiment(const RunConfig& cfg_in, size_t workers,
                           std::string* tables_md_out) {
    RunConfig cfg = cfg_in;
    {
        auto errs = validate_run_config(cfg);
        if (!errs.empty()) {
            std::string joined;
            for (const auto& e : errs) {
                if (!joined.empty()) joined += "\n";
                joined += e;
            }
            throw UsageError(joined);
        }
    }
    if (workers == 0) workers = 1;
    fs::path out(cfg.output_dir);
    fs::create_directories(out);

    RunManifest manifest;
    manifest.toolkit_version = kVersion;
    manifest.config_echo = run_config_to_json(cfg);

    auto stage = [&](const std::string& name, auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        manifest.stages.push_back({name, seconds_since(t0)});
    };

    // ---- corpus ----
    Corpus corpus;
    TopicTaxonomy taxonomy;
    SectorMergeMap merge;
    StopWordList stops = StopWordList::builtin();
    stage("corpus", [&] {
        Corpus loaded;
        if (cfg.synth) {
            SyntheticCorpus sc = generate_synthetic(*cfg.synth);
            save_synthetic(sc, (out / "corpus").string());
            loaded = std::move(sc.articles);
            taxonomy = std::move(sc.taxonomy);
            merge = std::move(sc.merge_map);
        } else {
            taxonomy = TopicTaxonomy::from_json_file(cfg.taxonomy_path);
            merge = cfg.merge_map_path.empty() ? SectorMergeMap::builtin()
                                               : SectorMergeMap::from_json_file(cfg.merge_map_path);
            loaded = load_corpus(cfg.corpus_path, taxonomy, merge);
        }
        if (!cfg.stopwords_path.empty()) stops = StopWordList::from_file(cfg.stopwords_path);
        CorpusStats stats = compute_stats(loaded);
        write_file(out / "stats.json", stats_to_json(stats) + "\n");
        write_file(out / "stats.csv", render_stats_csv(stats));
        corpus = filter_for_training(loaded);
        if (corpus.empty()) throw DataError("no labelled articles remain after filtering");
    });

    // ---- preprocess ----
    std::vector<TokenList> tokens(corpus.size());
    stage("preprocess", [&] {
        std::vector<std::function<void()>> tasks;
        size_t chunk = std::max<size_t>(1, corpus.size() / (workers * 4) + 1);
        for (size_t start = 0; start < corpus.size(); start += chunk) {
            size_t end = std::min(corpus.size(), start + chunk);
            tasks.push_back([&, start, end] {
                for (size_t i = start; i < end; ++i) tokens[i] = preprocess(corpus[i], stops);
            });
        }
        run_parallel(workers, tasks);
    });

    CvParams base_params = cv_params_from_config(cfg);

    bool selected_active = false;
    for (FeatureMode m : cfg.feature_modes)
        if (m == FeatureMode::selected) selected_active = true;

    // ---- per-fold selection cache (selected mode) ----
    // keyed [sector][fold]; shared read-only by every algorithm cell
    std::map<int, std::vector<std::optional<SelectedFeatures>>> selection_cache;
    std::map<int, std::string> full_selection_errors;
    std::mutex selection_error_mutex;
    if (selected_active) {
        stage("selection", [&] {
            for (Sector s : cfg.sectors) {
                selection_cache[static_cast<int>(s)].resize(cfg.folds);
                full_selection_errors[static_cast<int>(s)] = "";
            }

            std::vector<std::function<void()>> tasks;
            for (Sector s : cfg.sectors) {
                FoldAssignment folds = cv_fold_assignment(corpus, s, base_params);
                for (uint32_t f = 0; f < cfg.folds; ++f) {
                    tasks.push_back([&, s, f, folds] {
                        // folds whose training part has no positives are
                        // skipped by run_cv; leave the slot empty
                        size_t train_pos = 0;
                        for (size_t i = 0; i < corpus.size(); ++i)
                            if (folds.fold_of[i] != f && corpus[i].has_sector(s)) ++train_pos;
                        if (train_pos == 0) return;
                        try {
                            SelectedFeatures sel = cv_fold_selection(
                                corpus, tokens, taxonomy, s, f, folds, base_params);
                            selection_cache[static_cast<int>(s)][f] = std::move(sel);
                        } catch (const std::exception&) {
                            // dependent cells will surface the error
                        }
                    });
                }
                // canonical full-corpus selection per sector (feeds predict,
                // recovery checks and the word-cloud CSV)
                tasks.push_back([&, s] {
                    try {
                        FeatureSpace space =
                            build_feature_space(corpus, tokens, taxonomy, cfg.weighting,
                                                cfg.min_df, cfg.topic_ancestors);
                        DataMatrix X = vectorize_all(corpus, tokens, space);
                        std::vector<uint8_t> y(corpus.size());
                        for (size_t i = 0; i < corpus.size(); ++i)
                            y[i] = corpus[i].has_sector(s) ? 1 : 0;
                        SelectedFeatures sel = run_feature_selection(
                            s, X, y, base_params.selection,
                            derive_seed(base_params.seed, {0x5E1EC7, 0xFFFF}));
                        fs::path dir = out / "selection" / std::string(sector_name(s));
                        std::string json_text = selected_features_to_json(sel, space);
                        write_file(dir / "selected_features.json", json_text + "\n");
                        write_file(dir / "selected_features.csv",
                                   selected_features_csv_from_json(json_text));
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lock(selection_error_mutex);
                        full_selection_errors[static_cast<int>(s)] = e.what();
                    }
                });
            }
            run_parallel(workers, tasks);

            // per-fold artifacts, written serially for a deterministic walk
            for (Sector s : cfg.sectors) {
                FoldAssignment folds = cv_fold_assignment(corpus, s, base_params);
                for (uint32_t f = 0; f < cfg.folds; ++f) {
                    const auto& slot = selection_cache[static_cast<int>(s)][f];
                    if (!slot) continue;
                    // names resolved against the fold's own training space
                    Corpus train;
                    std::vector<TokenList> train_tokens;
                    for (size_t i = 0; i < corpus.size(); ++i) {
                        if (folds.fold_of[i] == f) continue;
                        train.push_back(corpus[i]);
                        train_tokens.push_back(tokens[i]);
                    }
                    FeatureSpace space =
                        build_feature_space(train, train_tokens, taxonomy, cfg.weighting,
                                            cfg.min_df, cfg.topic_ancestors);
                    fs::path dir = out / "selection" / std::string(sector_name(s));
                    write_file(dir / ("fold_" + std::to_string(f) + ".json"),
                               selected_features_to_json(*slot, space) + "\n");
                }
            }
        });
    }

    // ---- cells ----
    std::vector<CellData> cells;
    for (Sector s : cfg.sectors)
        for (Algorithm a : cfg.algorithms)
            for (FeatureMode m : cfg.feature_modes) {
                CellData cd;
                cd.status.sector = s;
                cd.status.algorithm = a;
                cd.status.mode = m;
                cells.push_back(std::move(cd));
            }

    stage("cells", [&] {
        std::vector<std::function<void()>> tasks;
        for (size_t i = 0; i < cells.size(); ++i) {
            tasks.push_back([&, i] {
                CellData& cd = cells[i];
                Sector s = cd.status.sector;
                try {
                    SelectionProvider provider;
                    if (cd.status.mode == FeatureMode::selected) {
                        auto& cache = selection_cache[static_cast<int>(s)];
                        provider = [&cache](uint32_t fold) -> const SelectedFeatures* {
                            return cache[fold] ? &*cache[fold] : nullptr;
                        };
                    }
                    auto [pooled, report] =
                        run_cv(corpus, tokens, taxonomy, s, cd.status.algorithm,
                               cd.status.mode, base_params, provider);
                    fs::path dir = cell_dir(out, s, cd.status.algorithm, cd.status.mode);
                    write_file(dir / "pooled_scores.csv", render_pooled_csv(pooled));
                    write_file(dir / "roc.csv", render_roc_csv(report.roc));
                    write_file(dir / "errors.csv", render_errors_csv(report.errors));
                    write_file(dir / "report.json", report_to_json(report) + "\n");
                    cd.status.ok = true;
                    cd.status.auc = report.auc;
                    cd.status.f = report.f.value;
                    cd.status.fold_times = report.fold_times;
                    cd.report = std::move(report);
                    cd.have_report = true;
                } catch (const std::exception& e) {
                    cd.status.ok = false;
                    cd.status.message = e.what();
                }
            });
        }
        run_parallel(workers, tasks);
    });

    // ---- statistical comparison ----
    std::map<std::pair<int, int>, ComparisonData> comparisons; // (mode, sector)
    if (cfg.resamples >= 2) {
        stage("comparison", [&] {
            std::vector<std::function<void()>> tasks;
            for (FeatureMode m : cfg.feature_modes) {
                for (Sector s : cfg.sectors) {
                    tasks.push_back([&, m, s] {
                        auto key = std::make_pair(static_cast<int>(m), static_cast<int>(s));
                        try {
                            ComparisonResult r = resampled_comparison(
                                corpus, tokens, taxonomy, s, cfg.algorithms, m, base_params,
                                cfg.resamples, derive_seed(cfg.seed, {0xC0DA, static_cast<uint64_t>(s)}));
                            comparisons[key] = ComparisonData{true, std::move(r)};
                        } catch (const std::exception&) {
                            comparisons[key] = ComparisonData{};
                        }
                    });
                }
            }
            // pre-create map slots so parallel tasks never rehash concurrently
            for (FeatureMode m : cfg.feature_modes)
                for (Sector s : cfg.sectors)
                    comparisons[std::make_pair(static_cast<int>(m), static_cast<int>(s))] =
                        ComparisonData{};
            run_parallel(workers, tasks);

            for (FeatureMode m : cfg.feature_modes) {
                for (Sector s : cfg.sectors) {
                    auto key = std::make_pair(static_cast<int>(m), static_cast<int>(s));
                    if (!comparisons[key].ok) continue;
                    fs::path p = out / "comparison" /
                                 (std::string(feature_mode_name(m)) + "_" +
                                  std::string(sector_name(s)) + ".json");
                    write_file(p, comparison_to_json(comparisons[key].result) + "\n");
                }
            }
        });
    }

    // ---- final models ----
    if (cfg.emit_models) {
        stage("models", [&] {
            FeatureSpace full_space = build_feature_space(
                corpus, tokens, taxonomy, cfg.weighting, cfg.min_df, cfg.topic_ancestors);
            full_space.save_json((out / "models" / "feature_space_full.json").string());

            std::vector<std::function<void()>> tasks;
            for (Sector s : cfg.sectors) {
                for (Algorithm a : cfg.algorithms) {
                    for (FeatureMode m : cfg.feature_modes) {
                        tasks.push_back([&, s, a, m] {
                            try {
                                FeatureSpace space = full_space;
                                if (m == FeatureMode::selected) {
                                    fs::path sel_path = out / "selection" /
                                                        std::string(sector_name(s)) /
                                                        "selected_features.json";
                                    std::set<uint32_t> cols =
                                        load_selected_columns(sel_path.string(), full_space);
                                    space = full_space.restrict_to(cols);
                                }
                                DataMatrix X = vectorize_all(corpus, tokens, space);
                                std::vector<uint8_t> y(corpus.size());
                                for (size_t i = 0; i < corpus.size(); ++i)
                                    y[i] = corpus[i].has_sector(s) ? 1 : 0;
                                SavedModel model;
                                model.algorithm = std::string(algorithm_name(a));
                                model.sector = std::string(sector_name(s));
                                switch (a) {
                                    case Algorithm::lr:
                                        model.model = fit_logistic(X, y, cfg.algo.lr);
                                        break;
                                    case Algorithm::rf:
                                        model.model = fit_random_forest(
                                            X, y, cfg.algo.rf,
                                            derive_seed(cfg.seed, {0xF1A4, static_cast<uint64_t>(s)}));
                                        break;
                                    case Algorithm::gbm:
                                        model.model = fit_gbm(X, y, cfg.algo.gbm);
                                        break;
                                }
                                fs::path dir = out / "models" / std::string(sector_name(s));
                                save_model_json(model, (dir / (std::string(algorithm_name(a)) +
                                                               "_" +
                                                               std::string(feature_mode_name(m)) +
                                                               ".model.json"))
                                                           .string());
                                if (m == FeatureMode::selected)
                                    space.save_json(
                                        (dir / "feature_space_selected.json").string());
                            } catch (const std::exception&) {
                                // model emission failures mirror cell failures;
                                // the cell status already carries the cause
                            }
                        });
                    }
                }
            }
            run_parallel(workers, tasks);
        });
    }

    // ---- reports ----
    std::string tables_md;
    stage("reports", [&] {
        auto cell_of = [&](Sector s, Algorithm a, FeatureMode m) -> const CellData* {
            for (const auto& cd : cells)
                if (cd.status.sector == s && cd.status.algorithm == a && cd.status.mode == m)
                    return &cd;
            return nullptr;
        };
        auto comparison_of = [&](FeatureMode m, Sector s) -> const ComparisonData* {
            auto it = comparisons.find(std::make_pair(static_cast<int>(m), static_cast<int>(s)));
            if (it == comparisons.end()) return nullptr;
            return &it->second;
        };
        std::vector<MetricTable> tables = build_tables(cfg, cell_of, comparison_of);
        tables_md = render_metric_tables_md(tables);
        write_file(out / "tables.md", tables_md);
        write_file(out / "cells.csv", render_cells_csv(build_cell_summaries(cfg, cells)));
        std::vector<CellTiming> timings = build_cell_timings(cells);
        write_file(out / "timings.csv", render_timings_csv(timings));
        write_file(out / "timing_comparison.csv", render_timing_comparison_csv(timings));
    });

    for (const auto& cd : cells) {
        manifest.cells.push_back(cd.status);
        if (!cd.status.ok) manifest.all_ok = false;
    }

    // ---- digests ----
    // timing-bearing files are excluded so reruns are digest-identical
    static const std::set<std::string> kExcluded = {"manifest.json", "timings.csv",
                                                    "timing_comparison.csv"};
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(out))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::string rel = fs::relative(p, out).generic_string();
        if (kExcluded.count(rel)) continue;
        manifest.artifacts[rel] = sha256_file(p.string());
    }

    write_file(out / "manifest.json", manifest.to_json() + "\n");
    if (tables_md_out) *tables_md_out = tables_md;
    return manifest;
}

void regenerate_reports(const std::string& run_dir) {
    fs::path out(run_dir);
    json manifest = json::parse(read_file(out / "manifest.json"));
    RunConfig cfg = parse_run_config(manifest.at("config").dump(), "manifest config");
    // enums were validated before the manifest was written; remap them
    for (const auto& n : cfg.sector_names) cfg.sectors.push_back(*sector_from_name(n));
    for (const auto& n : cfg.algorithm_names) cfg.algorithms.push_back(*algorithm_from_name(n));
    for (const auto& n : cfg.feature_mode_names)
        cfg.feature_modes.push_back(*feature_mode_from_name(n));
    cfg.weighting = *weighting_from_name(cfg.weighting_name_raw);

    // stats
    CorpusStats stats = stats_from_json_text(read_file(out / "stats.json"));
    write_file(out / "stats.csv", render_stats_csv(stats));

    // cells
    std::vector<CellData> cells;
    std::map<std::pair<int, int>, ComparisonData> comparisons;
    for (const auto& cell : manifest.at("cells")) {
        CellData cd;
        cd.status.sector = *sector_from_name(cell.at("sector").get<std::string>());
        cd.status.algorithm = *algorithm_from_name(cell.at("algorithm").get<std::string>());
        cd.status.mode = *feature_mode_from_name(cell.at("mode").get<std::string>());
        cd.status.ok = cell.at("ok").get<bool>();
        cd.status.message = cell.value("message", "");
        cd.status.auc = cell.value("auc", 0.0);
        cd.status.f = cell.value("f", 0.0);
        for (const auto& t : cell.at("fold_times")) {
            FoldTiming ft;
            ft.vectorize_s = t.value("vectorize_s", 0.0);
            ft.selection_s = t.value("selection_s", 0.0);
            ft.train_s = t.value("train_s", 0.0);
            ft.score_s = t.value("score_s", 0.0);
            cd.status.fold_times.push_back(ft);
        }
        if (cd.status.ok) {
            fs::path dir = cell_dir(out, cd.status.sector, cd.status.algorithm, cd.status.mode);
            json report = json::parse(read_file(dir / "report.json"));
            cd.report.sector = cd.status.sector;
            cd.report.algorithm = cd.status.algorithm;
            cd.report.feature_mode = cd.status.mode;
            cd.report.auc = report.at("auc").get<double>();
            cd.report.f.value = report.at("f").get<double>();
            cd.report.f.precision = report.at("precision").get<double>();
            cd.report.f.recall = report.at("recall").get<double>();
            cd.report.f.degenerate = report.at("f_degenerate").get<bool>();
            cd.report.errors.false_negatives = report.at("false_negatives").get<size_t>();
            cd.report.errors.false_positives = report.at("false_positives").get<size_t>();
            cd.report.errors.grey_zone_count = report.at("grey_zone").get<size_t>();
            cd.report.skipped_folds = report.at("skipped_folds").get<std::vector<uint32_t>>();
            cd.report.selected_sizes = report.at("selected_sizes").get<std::vector<size_t>>();
            cd.have_report = true;

            // roc + error listing re-derived from the pooled scores
            PooledScores pooled = pooled_from_csv(read_file(dir / "pooled_scores.csv"));
            RocCurve roc;
            if (pooled.n_pos > 0 && pooled.n_neg > 0) roc = cv_roc(pooled);
            write_file(dir / "roc.csv", render_roc_csv(roc));
            write_file(dir / "errors.csv",
                       render_errors_csv(
                           error_analysis(pooled, cfg.decision_threshold, cfg.grey)));
        }
        cells.push_back(std::move(cd));
    }

    // comparison artifacts, when the run produced them
    if (cfg.resamples >= 2) {
        for (FeatureMode m : cfg.feature_modes) {
            for (Sector s : cfg.sectors) {
                fs::path p = out / "comparison" /
                             (std::string(feature_mode_name(m)) + "_" +
                              std::string(sector_name(s)) + ".json");
                auto key = std::make_pair(static_cast<int>(m), static_cast<int>(s));
                if (fs::exists(p))
                    comparisons[key] = ComparisonData{true, comparison_from_json(read_file(p))};
                else
                    comparisons[key] = ComparisonData{};
            }
        }
    }

    // selection CSVs from their JSON documents
    for (Sector s : cfg.sectors) {
        fs::path p = out / "selection" / std::string(sector_name(s)) / "selected_features.json";
        if (fs::exists(p))
            write_file(out / "selection" / std::string(sector_name(s)) / "selected_features.csv",
                       selected_features_csv_from_json(read_file(p)));
    }

    auto cell_of = [&](Sector s, Algorithm a, FeatureMode m) -> const CellData* {
        for (const auto& cd : cells)
            if (cd.status.sector == s && cd.status.algorithm == a && cd.status.mode == m)
                return &cd;
        return nullptr;
    };
    auto comparison_of = [&](FeatureMode m, Sector s) -> const ComparisonData* {
        auto it = comparisons.find(std::make_pair(static_cast<int>(m), static_cast<int>(s)));
        if (it == comparisons.end()) return nullptr;
        return &it->second;
    };
    std::vector<MetricTable> tables = build_tables(cfg, cell_of, comparison_of);
    write_file(out / "tables.md", render_metric_tables_md(tables));
    write_file(out / "cells.csv", render_cells_csv(build_cell_summaries(cfg, cells)));
    std::vector<CellTiming> timings = build_cell_timings(cells);
    write_file(out / "timings.csv", render_timings_csv(timings));
    write_file(out / "timing_comparison.csv", render_timing_comparison_csv(timings));
}

} // namespace sectortag
