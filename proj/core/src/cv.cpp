#include "sectortag/cv.hpp"

#include <chrono>

#include "sectortag/errors.hpp"
#include "sectortag/rng.hpp"
#include "sectortag/sha256.hpp"
#include "sectortag/wilcoxon.hpp"

namespace sectortag {

namespace {

// seed-derivation tags
constexpr uint64_t kTagFolds = 0xF01D5;
constexpr uint64_t kTagSelection = 0x5E1EC7;
constexpr uint64_t kTagFit = 0xF17;
constexpr uint64_t kTagResample = 0x4E5A;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<uint8_t> sector_labels(const Corpus& corpus, Sector sector) {
    std::vector<uint8_t> y(corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i)
        y[i] = corpus[i].has_sector(sector) ? 1 : 0;
    return y;
}

SavedModel fit_algorithm(Algorithm algorithm, const DataMatrix& X,
                         const std::vector<uint8_t>& y, const AlgorithmParams& params,
                         uint64_t seed, Sector sector) {
    SavedModel saved;
    saved.algorithm = std::string(algorithm_name(algorithm));
    saved.sector = std::string(sector_name(sector));
    switch (algorithm) {
        case Algorithm::lr: saved.model = fit_logistic(X, y, params.lr); break;
        case Algorithm::rf: saved.model = fit_random_forest(X, y, params.rf, seed); break;
        case Algorithm::gbm: saved.model = fit_gbm(X, y, params.gbm); break;
    }
    return saved;
}

} // namespace

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::lr: return "lr";
        case Algorithm::rf: return "rf";
        case Algorithm::gbm: return "gbm";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
    for (Algorithm a : all_algorithms())
        if (algorithm_name(a) == name) return a;
    return std::nullopt;
}

const std::vector<Algorithm>& all_algorithms() {
    static const std::vector<Algorithm> algos = {Algorithm::lr, Algorithm::rf, Algorithm::gbm};
    return algos;
}

std::string_view feature_mode_name(FeatureMode m) {
    return m == FeatureMode::full ? "full" : "selected";
}

std::optional<FeatureMode> feature_mode_from_name(std::string_view name) {
    if (name == "full") return FeatureMode::full;
    if (name == "selected") return FeatureMode::selected;
    return std::nullopt;
}

FoldAssignment cv_fold_assignment(const Corpus& corpus, Sector sector, const CvParams& params) {
    std::vector<uint8_t> y = sector_labels(corpus, sector);
    return stratified_folds(y, params.k, derive_seed(params.seed, {kTagFolds}));
}

uint64_t cv_selection_seed(const CvParams& params, uint32_t fold) {
    return derive_seed(params.seed, {kTagSelection, fold});
}

SelectedFeatures cv_fold_selection(const Corpus& corpus, const std::vector<TokenList>& tokens,
                                   const TopicTaxonomy& taxonomy, Sector sector, uint32_t fold,
                                   const FoldAssignment& folds, const CvParams& params) {
    Corpus train;
    std::vector<TokenList> train_tokens;
    std::vector<uint8_t> y;
    for (size_t i = 0; i < corpus.size(); ++i) {
        if (folds.fold_of[i] == fold) continue;
        train.push_back(corpus[i]);
        train_tokens.push_back(tokens[i]);
        y.push_back(corpus[i].has_sector(sector) ? 1 : 0);
    }
    FeatureSpace space = build_feature_space(train, train_tokens, taxonomy, params.weighting,
                                             params.min_df, params.topic_ancestors);
    DataMatrix X = vectorize_all(train, train_tokens, space);
    return run_feature_selection(sector, X, y, params.selection,
                                 cv_selection_seed(params, fold));
}

std::pair<PooledScores, CvReport> run_cv(const Corpus& corpus,
                                         const std::vector<TokenList>& tokens,
                                         const TopicTaxonomy& taxonomy, Sector sector,
                                         Algorithm algorithm, FeatureMode mode,
                                         const CvParams& params,
                                         const SelectionProvider& provider) {
    if (corpus.size() != tokens.size())
        throw DataError("run_cv: token lists do not match the corpus");
    FoldAssignment folds = cv_fold_assignment(corpus, sector, params);

    PooledScores pooled;
    CvReport report;
    report.sector = sector;
    report.algorithm = algorithm;
    report.feature_mode = mode;
    report.few_positives_warning = folds.warning_few_positives;
    report.fold_times.resize(params.k);

    for (uint32_t f = 0; f < params.k; ++f) {
        Corpus train;
        std::vector<TokenList> train_tokens;
        std::vector<uint8_t> y_train;
        std::vector<size_t> test_idx;
        for (size_t i = 0; i < corpus.size(); ++i) {
            if (folds.fold_of[i] == f) {
                test_idx.push_back(i);
            } else {
                train.push_back(corpus[i]);
                train_tokens.push_back(tokens[i]);
                y_train.push_back(corpus[i].has_sector(sector) ? 1 : 0);
            }
        }
        size_t train_pos = 0;
        for (uint8_t v : y_train) train_pos += v;
        if (train_pos == 0) {
            report.skipped_folds.push_back(f);
            continue;
        }

        FoldTiming& timing = report.fold_times[f];
        FeatureSpace space = build_feature_space(train, train_tokens, taxonomy,
                                                 params.weighting, params.min_df,
                                                 params.topic_ancestors);

        std::optional<SelectedFeatures> local_selection;
        if (mode == FeatureMode::selected) {
            auto t0 = std::chrono::steady_clock::now();
            const SelectedFeatures* sel = provider ? provider(f) : nullptr;
            if (!sel) {
                DataMatrix X_full = vectorize_all(train, train_tokens, space);
                local_selection = run_feature_selection(sector, X_full, y_train,
                                                        params.selection,
                                                        cv_selection_seed(params, f));
                sel = &*local_selection;
            }
            timing.selection_s = seconds_since(t0);
            std::set<uint32_t> cols(sel->integrated.begin(), sel->integrated.end());
            space = space.restrict_to(cols);
            report.selected_sizes.push_back(sel->integrated.size());
        }

        auto t0 = std::chrono::steady_clock::now();
        DataMatrix X_train = vectorize_all(train, train_tokens, space);
        std::vector<FeatureVector> test_vectors;
        test_vectors.reserve(test_idx.size());
        for (size_t i : test_idx)
            test_vectors.push_back(vectorize(corpus[i], tokens[i], space));
        timing.vectorize_s = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        SavedModel model = fit_algorithm(algorithm, X_train, y_train, params.algo,
                                         derive_seed(params.seed, {kTagFit, f}), sector);
        timing.train_s = seconds_since(t0);

        if (params.collect_fold_model_digests)
            report.fold_model_digests.push_back(sha256_hex(model_to_json(model)));

        t0 = std::chrono::steady_clock::now();
        for (size_t t = 0; t < test_idx.size(); ++t) {
            size_t i = test_idx[t];
            ScoredEntry e;
            e.article_id = corpus[i].id;
            e.fold = f;
            e.label = corpus[i].has_sector(sector) ? 1 : 0;
            e.score = predict_score(model, test_vectors[t]);
            pooled.add(std::move(e));
        }
        timing.score_s = seconds_since(t0);
    }

    if (pooled.n_pos > 0 && pooled.n_neg > 0) {
        report.roc = cv_roc(pooled);
        report.auc = report.roc.auc;
    }
    report.f = f_score(pooled, params.decision_threshold);
    report.errors = error_analysis(pooled, params.decision_threshold, params.grey);
    return {std::move(pooled), std::move(report)};
}

FittedCell fit_full_model(const Corpus& corpus, const std::vector<TokenList>& tokens,
                          const TopicTaxonomy& taxonomy, Sector sector, Algorithm algorithm,
                          FeatureMode mode, const CvParams& params) {
    std::vector<uint8_t> y = sector_labels(corpus, sector);
    FittedCell cell;
    cell.space = build_feature_space(corpus, tokens, taxonomy, params.weighting,
                                     params.min_df, params.topic_ancestors);
    if (mode == FeatureMode::selected) {
        DataMatrix X_full = vectorize_all(corpus, tokens, cell.space);
        cell.selection = run_feature_selection(sector, X_full, y, params.selection,
                                               derive_seed(params.seed, {kTagSelection, 0xFFFF}));
        std::set<uint32_t> cols(cell.selection->integrated.begin(),
                                cell.selection->integrated.end());
        cell.space = cell.space.restrict_to(cols);
    }
    DataMatrix X = vectorize_all(corpus, tokens, cell.space);
    cell.model = fit_algorithm(algorithm, X, y, params.algo,
                               derive_seed(params.seed, {kTagFit, 0xFFFF}), sector);
    return cell;
}

ComparisonResult resampled_comparison(const Corpus& corpus,
                                      const std::vector<TokenList>& tokens,
                                      const TopicTaxonomy& taxonomy, Sector sector,
                                      const std::vector<Algorithm>& algorithms,
                                      FeatureMode mode, const CvParams& base_params,
                                      size_t n_resamples, uint64_t seed) {
    if (algorithms.size() < 2)
        throw UsageError("resampled_comparison: at least two algorithms required");
    if (n_resamples < 2)
        throw UsageError("resampled_comparison: at least two resamples required");

    ComparisonResult out;
    out.algorithms = algorithms;
    out.auc_samples.assign(algorithms.size(), {});
    out.f_samples.assign(algorithms.size(), {});

    for (size_t r = 0; r < n_resamples; ++r) {
        CvParams params = base_params;
        params.seed = derive_seed(seed, {kTagResample, r});

        // selection is expensive and depends only on (sector, fold split), so
        // one cache serves every algorithm within the resample
        std::vector<std::optional<SelectedFeatures>> cache;
        SelectionProvider provider;
        if (mode == FeatureMode::selected) {
            FoldAssignment folds = cv_fold_assignment(corpus, sector, params);
            cache.resize(params.k);
            for (uint32_t f = 0; f < params.k; ++f) {
                std::vector<uint8_t> warn; // training positives check happens in run_cv
                (void)warn;
                cache[f].emplace(cv_fold_selection(corpus, tokens, taxonomy, sector, f,
                                                   folds, params));
            }
            provider = [&cache](uint32_t fold) -> const SelectedFeatures* {
                return cache[fold] ? &*cache[fold] : nullptr;
            };
        }

        for (size_t a = 0; a < algorithms.size(); ++a) {
            auto [pooled, report] = run_cv(corpus, tokens, taxonomy, sector, algorithms[a],
                                           mode, params, provider);
            out.auc_samples[a].push_back(report.auc);
            out.f_samples[a].push_back(report.f.value);
        }
    }

    auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return v.empty() ? 0.0 : s / static_cast<double>(v.size());
    };
    for (size_t a = 0; a < algorithms.size(); ++a) {
        out.mean_auc.push_back(mean_of(out.auc_samples[a]));
        out.mean_f.push_back(mean_of(out.f_samples[a]));
    }

    auto pairwise = [&](const std::vector<std::vector<double>>& samples) {
        std::vector<std::vector<double>> p(algorithms.size(),
                                           std::vector<double>(algorithms.size(), 1.0));
        for (size_t a = 0; a < algorithms.size(); ++a) {
            for (size_t b = 0; b < algorithms.size(); ++b) {
                if (a == b) continue;
                std::vector<double> diffs(n_resamples);
                for (size_t r = 0; r < n_resamples; ++r)
                    diffs[r] = samples[a][r] - samples[b][r];
                p[a][b] = wilcoxon_signed_rank(diffs).p_value;
            }
        }
        return p;
    };
    out.p_auc = pairwise(out.auc_samples);
    out.p_f = pairwise(out.f_samples);

    auto top_group = [&](const std::vector<double>& means,
                         const std::vector<std::vector<double>>& p) {
        size_t best = 0;
        for (size_t a = 1; a < means.size(); ++a)
            if (means[a] > means[best]) best = a;
        std::vector<bool> flags(means.size(), false);
        flags[best] = true;
        for (size_t a = 0; a < means.size(); ++a)
            if (a != best && p[a][best] > 0.001) flags[a] = true;
        return flags;
    };
    out.auc_top_group = top_group(out.mean_auc, out.p_auc);
    out.f_top_group = top_group(out.mean_f, out.p_f);
    return out;
}

} // namespace sectortag
