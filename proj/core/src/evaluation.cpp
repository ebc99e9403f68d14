#include "sectortag/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "sectortag/errors.hpp"
#include "sectortag/rng.hpp"

namespace sectortag {

FoldAssignment stratified_folds(std::span<const uint8_t> y, size_t k, uint64_t seed) {
    size_t n = y.size();
    if (k < 2) throw UsageError("stratified_folds: k must be >= 2");
    if (k > n) throw UsageError("stratified_folds: k exceeds the sample count");

    std::vector<uint32_t> pos, neg;
    for (size_t i = 0; i < n; ++i)
        (y[i] ? pos : neg).push_back(static_cast<uint32_t>(i));

    Rng rng(derive_seed(seed, {0x5f01d5}));
    rng.shuffle(pos);
    rng.shuffle(neg);

    FoldAssignment fa;
    fa.k = k;
    fa.seed = seed;
    fa.fold_of.assign(n, 0);
    fa.warning_few_positives = pos.size() < k;

    // positives dealt round-robin; negatives continue in the same rotation so
    // total fold sizes also differ by at most one
    for (size_t i = 0; i < pos.size(); ++i)
        fa.fold_of[pos[i]] = static_cast<uint32_t>(i % k);
    for (size_t i = 0; i < neg.size(); ++i)
        fa.fold_of[neg[i]] = static_cast<uint32_t>((pos.size() + i) % k);
    return fa;
}

void PooledScores::add(ScoredEntry e) {
    if (e.label)
        ++n_pos;
    else
        ++n_neg;
    entries.push_back(std::move(e));
}

namespace {

struct RocAccum {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

RocAccum roc_from(std::span<const uint8_t> y, std::span<const double> s) {
    size_t n1 = 0, n0 = 0;
    for (uint8_t v : y) (v ? n1 : n0)++;
    if (n1 == 0 || n0 == 0)
        throw DataError("ROC requires both classes among the pooled labels");

    std::vector<size_t> order(y.size());
    for (size_t i = 0; i < y.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (s[a] != s[b]) return s[a] > s[b];
        return a < b;
    });

    RocAccum out;
    out.points.push_back({1.0, 0.0, 0.0}); // nothing flagged positive
    double area2 = 0.0;                    // in count units, x2
    size_t tp = 0, fp = 0;
    size_t i = 0;
    while (i < order.size()) {
        double v = s[order[i]];
        size_t grp_pos = 0, grp_neg = 0;
        while (i < order.size() && s[order[i]] == v) {
            (y[order[i]] ? grp_pos : grp_neg)++;
            ++i;
        }
        area2 += static_cast<double>(grp_neg) * static_cast<double>(2 * tp + grp_pos);
        tp += grp_pos;
        fp += grp_neg;
        out.points.push_back({v, static_cast<double>(fp) / static_cast<double>(n0),
                              static_cast<double>(tp) / static_cast<double>(n1)});
    }
    out.auc = area2 / (2.0 * static_cast<double>(n1) * static_cast<double>(n0));
    return out;
}

} // namespace

RocCurve cv_roc(const PooledScores& pooled) {
    std::vector<uint8_t> y;
    std::vector<double> s;
    y.reserve(pooled.entries.size());
    s.reserve(pooled.entries.size());
    for (const auto& e : pooled.entries) {
        y.push_back(e.label);
        s.push_back(e.score);
    }
    RocAccum acc = roc_from(y, s);
    return RocCurve{std::move(acc.points), acc.auc};
}

double auc_from_scores(std::span<const uint8_t> y, std::span<const double> scores) {
    return roc_from(y, scores).auc;
}

FScoreResult f_score(const PooledScores& pooled, double threshold, double beta) {
    size_t tp = 0, fp = 0, fn = 0;
    for (const auto& e : pooled.entries) {
        bool predicted = e.score >= threshold;
        if (predicted && e.label) ++tp;
        if (predicted && !e.label) ++fp;
        if (!predicted && e.label) ++fn;
    }
    FScoreResult r;
    if (tp + fp == 0 || tp + fn == 0) {
        r.degenerate = true;
        return r;
    }
    r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    double b2 = beta * beta;
    double denom = b2 * r.precision + r.recall;
    if (denom <= 0.0) {
        r.degenerate = true;
        return r;
    }
    r.value = (1.0 + b2) * r.precision * r.recall / denom;
    return r;
}

ErrorBreakdown error_analysis(const PooledScores& pooled, double threshold,
                              std::pair<double, double> grey) {
    ErrorBreakdown out;
    for (const auto& e : pooled.entries) {
        bool predicted = e.score >= threshold;
        bool is_fn = e.label && !predicted;
        bool is_fp = !e.label && predicted;
        if (!is_fn && !is_fp) continue;
        bool in_grey = e.score >= grey.first && e.score <= grey.second;
        if (is_fn) ++out.false_negatives;
        if (is_fp) ++out.false_positives;
        if (in_grey) ++out.grey_zone_count;
        out.items.push_back({e.article_id, e.label, e.score, in_grey});
    }
    return out;
}

} // namespace sectortag
