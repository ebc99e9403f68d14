#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sectortag {

/// Stratified fold assignment: positives and negatives are shuffled
/// independently (seeded) and dealt round-robin, negatives continuing where
/// the positives stopped, so fold sizes and per-fold positive counts both
/// differ by at most one.
struct FoldAssignment {
    size_t k = 0;
    std::vector<uint32_t> fold_of; // per sample
    uint64_t seed = 0;
    bool warning_few_positives = false; // positives < k
};

FoldAssignment stratified_folds(std::span<const uint8_t> y, size_t k, uint64_t seed);

/// Held-out scores pooled across folds; each article is scored exactly once,
/// by the model trained without its fold.
struct ScoredEntry {
    std::string article_id;
    uint32_t fold = 0;
    uint8_t label = 0;
    double score = 0.0;
};

struct PooledScores {
    std::vector<ScoredEntry> entries;
    size_t n_pos = 0;
    size_t n_neg = 0;

    void add(ScoredEntry e);
};

struct RocPoint {
    double threshold;
    double fpr;
    double tpr;
};

/// ROC over the pooled indicator I(score >= t) at every distinct score,
/// plus the (0,0) and (1,1) endpoints. The trapezoidal AUC equals the
/// Mann-Whitney pair statistic (ties counted 1/2) exactly: the area is
/// accumulated in integer count units and divided once.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

RocCurve cv_roc(const PooledScores& pooled);

/// AUC of raw label/score arrays (same pooled-indicator definition).
/// Throws DataError when either class is absent.
double auc_from_scores(std::span<const uint8_t> y, std::span<const double> scores);

struct FScoreResult {
    double value = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    bool degenerate = false; // a zero denominator forced the score to 0
};

/// F_beta at a decision threshold (score >= threshold is positive).
FScoreResult f_score(const PooledScores& pooled, double threshold, double beta = 1.0);

struct ErrorBreakdown {
    size_t false_negatives = 0;
    size_t false_positives = 0;
    size_t grey_zone_count = 0; // errors whose score lies in the grey interval

    struct Item {
        std::string article_id;
        uint8_t label = 0;
        double score = 0.0;
        bool grey = false;
    };
    std::vector<Item> items; // one per misclassified article, pooled order
};

ErrorBreakdown error_analysis(const PooledScores& pooled, double threshold,
                              std::pair<double, double> grey);

} // namespace sectortag
