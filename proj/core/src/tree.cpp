#include "sectortag/tree.hpp"

#include <algorithm>
#include <cmath>

#include "sectortag/errors.hpp"

namespace sectortag {

double gini_impurity(double pos, double neg) {
    double total = pos + neg;
    if (total <= 0.0) throw DataError("gini impurity of an empty node");
    double p = pos / total;
    return 2.0 * p * (1.0 - p);
}

double DecisionTree::evaluate(const FeatureVector& x) const {
    int32_t cur = 0;
    while (!nodes[static_cast<size_t>(cur)].is_leaf()) {
        const TreeNode& n = nodes[static_cast<size_t>(cur)];
        double v = 0.0;
        auto it = std::lower_bound(
            x.entries.begin(), x.entries.end(), std::make_pair(static_cast<uint32_t>(n.feature), 0.0),
            [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it != x.entries.end() && it->first == static_cast<uint32_t>(n.feature)) v = it->second;
        cur = v <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<size_t>(cur)].value;
}

double DecisionTree::evaluate(const DataMatrix& X, size_t row) const {
    int32_t cur = 0;
    while (!nodes[static_cast<size_t>(cur)].is_leaf()) {
        const TreeNode& n = nodes[static_cast<size_t>(cur)];
        double v = X.value_at(row, static_cast<uint32_t>(n.feature));
        cur = v <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<size_t>(cur)].value;
}

size_t DecisionTree::leaf_count() const {
    size_t n = 0;
    for (const auto& node : nodes)
        if (node.is_leaf()) ++n;
    return n;
}

namespace {

constexpr double kMinGain = 1e-12;

struct Entry {
    uint32_t feature;
    double value;
    uint32_t sample;
};

struct Builder {
    const DataMatrix& X;
    std::span<const double> target;
    std::vector<double> weight; // materialized, all > 0 participate
    const TreeParams& params;
    SplitCriterion crit;
    Rng* rng;

    std::vector<TreeNode> nodes;
    std::vector<int32_t> leaf_of;
    std::vector<uint32_t> samples; // permuted in place during recursion

    // per-node scratch
    std::vector<Entry> raw;            // gathered entries, grouped by feature
    std::vector<Entry> grouped;
    std::vector<size_t> feat_offset;   // scratch offsets per touched feature
    std::vector<uint32_t> feat_pos;    // position of feature in touched list, ~0u = untouched
    std::vector<uint32_t> touched;
    std::vector<uint32_t> feature_pool; // reusable pool for subsampling
    std::vector<uint8_t> go_right;     // per sample id

    Builder(const DataMatrix& x, std::span<const double> t, const TreeParams& p,
            SplitCriterion c, Rng* r)
        : X(x), target(t), params(p), crit(c), rng(r) {
        leaf_of.assign(X.rows(), -1);
        feat_pos.assign(X.n_features, ~0u);
        go_right.assign(X.rows(), 0);
        feature_pool.resize(X.n_features);
        for (uint32_t f = 0; f < X.n_features; ++f) feature_pool[f] = f;
    }

    double impurity_of(double w, double s, double s2) const {
        if (crit == SplitCriterion::gini) {
            double p = s / w;
            return 2.0 * p * (1.0 - p);
        }
        double mean = s / w;
        double var = s2 / w - mean * mean;
        return var > 0.0 ? var : 0.0;
    }

    int32_t build(size_t begin, size_t end, size_t depth) {
        double w_total = 0.0, s_total = 0.0, s2_total = 0.0;
        for (size_t i = begin; i < end; ++i) {
            uint32_t s = samples[i];
            double w = weight[s];
            double t = target[s];
            w_total += w;
            s_total += w * t;
            s2_total += w * t * t;
        }

        int32_t node_id = static_cast<int32_t>(nodes.size());
        TreeNode node;
        node.weight = w_total;
        node.impurity = impurity_of(w_total, s_total, s2_total);
        node.value = s_total / w_total;
        nodes.push_back(node);

        bool depth_ok = params.max_depth == 0 || depth < params.max_depth;
        bool size_ok = (end - begin) >= 2 && w_total >= 2.0 * params.min_samples_leaf;
        if (!depth_ok || !size_ok || node.impurity <= kMinGain) {
            mark_leaf(begin, end, node_id);
            return node_id;
        }

        std::span<const uint32_t> subset = pick_features_for_node();

        // gather node entries, restricted to the subset when one is active
        raw.clear();
        for (size_t i = begin; i < end; ++i) {
            uint32_t s = samples[i];
            auto cols = X.row_cols(s);
            auto vals = X.row_vals(s);
            for (size_t e = 0; e < cols.size(); ++e) {
                if (!subset.empty() && !subset_allowed(cols[e])) continue;
                raw.push_back({cols[e], vals[e], s});
            }
        }

        // group by feature (counting sort), then order each group by value
        touched.clear();
        for (const Entry& e : raw) {
            if (feat_pos[e.feature] == ~0u) {
                feat_pos[e.feature] = static_cast<uint32_t>(touched.size());
                touched.push_back(e.feature);
            }
        }
        std::sort(touched.begin(), touched.end());
        for (uint32_t i = 0; i < touched.size(); ++i) feat_pos[touched[i]] = i;

        feat_offset.assign(touched.size() + 1, 0);
        for (const Entry& e : raw) ++feat_offset[feat_pos[e.feature] + 1];
        for (size_t i = 1; i < feat_offset.size(); ++i) feat_offset[i] += feat_offset[i - 1];
        grouped.resize(raw.size());
        {
            std::vector<size_t> cursor(feat_offset.begin(), feat_offset.end() - 1);
            for (const Entry& e : raw) grouped[cursor[feat_pos[e.feature]]++] = e;
        }
        for (size_t g = 0; g < touched.size(); ++g) {
            std::sort(grouped.begin() + static_cast<std::ptrdiff_t>(feat_offset[g]),
                      grouped.begin() + static_cast<std::ptrdiff_t>(feat_offset[g + 1]),
                      [](const Entry& a, const Entry& b) {
                          if (a.value != b.value) return a.value < b.value;
                          return a.sample < b.sample;
                      });
        }

        // best split scan
        double best_gain = 0.0;
        int32_t best_feature = -1;
        double best_threshold = 0.0;
        size_t best_group = 0;
        const double msl = params.min_samples_leaf;

        for (size_t g = 0; g < touched.size(); ++g) {
            size_t lo = feat_offset[g], hi = feat_offset[g + 1];
            double nz_w = 0.0, nz_s = 0.0, nz_s2 = 0.0;
            for (size_t e = lo; e < hi; ++e) {
                uint32_t s = grouped[e].sample;
                double w = weight[s];
                double t = target[s];
                nz_w += w;
                nz_s += w * t;
                nz_s2 += w * t * t;
            }
            // implicit zeros sit before every stored (positive) value
            double wl = w_total - nz_w, sl = s_total - nz_s, sl2 = s2_total - nz_s2;
            if (wl < 1e-12) { wl = 0.0; sl = 0.0; sl2 = 0.0; }
            double prev_val = 0.0;

            size_t e = lo;
            while (e < hi) {
                double v = grouped[e].value;
                double wr = w_total - wl;
                if (wl > 0.0 && wl >= msl && wr >= msl) {
                    double gain = nodes[static_cast<size_t>(node_id)].impurity -
                                  (wl / w_total) * impurity_of(wl, sl, sl2) -
                                  (wr / w_total) * impurity_of(wr, s_total - sl, s2_total - sl2);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_feature = static_cast<int32_t>(touched[g]);
                        best_threshold = 0.5 * (prev_val + v);
                        best_group = g;
                    }
                }
                while (e < hi && grouped[e].value == v) {
                    uint32_t s = grouped[e].sample;
                    double w = weight[s];
                    double t = target[s];
                    wl += w;
                    sl += w * t;
                    sl2 += w * t * t;
                    ++e;
                }
                prev_val = v;
            }
        }

        if (best_feature < 0 || best_gain <= kMinGain) {
            reset_feat_pos();
            mark_leaf(begin, end, node_id);
            return node_id;
        }

        // route: zeros and values <= threshold go left
        for (size_t e = feat_offset[best_group]; e < feat_offset[best_group + 1]; ++e)
            if (grouped[e].value > best_threshold) go_right[grouped[e].sample] = 1;
        auto mid_it = std::stable_partition(
            samples.begin() + static_cast<std::ptrdiff_t>(begin),
            samples.begin() + static_cast<std::ptrdiff_t>(end),
            [&](uint32_t s) { return go_right[s] == 0; });
        size_t mid = static_cast<size_t>(mid_it - samples.begin());
        for (size_t e = feat_offset[best_group]; e < feat_offset[best_group + 1]; ++e)
            go_right[grouped[e].sample] = 0;
        reset_feat_pos();

        nodes[static_cast<size_t>(node_id)].feature = best_feature;
        nodes[static_cast<size_t>(node_id)].threshold = best_threshold;
        int32_t left = build(begin, mid, depth + 1);
        nodes[static_cast<size_t>(node_id)].left = left;
        int32_t right = build(mid, end, depth + 1);
        nodes[static_cast<size_t>(node_id)].right = right;
        return node_id;
    }

    void mark_leaf(size_t begin, size_t end, int32_t node_id) {
        for (size_t i = begin; i < end; ++i) leaf_of[samples[i]] = node_id;
    }

    void reset_feat_pos() {
        for (uint32_t f : touched) feat_pos[f] = ~0u;
    }

    std::span<const uint32_t> pick_features_for_node() {
        uint32_t p = X.n_features;
        uint32_t k = params.feature_subsample;
        if (k == 0 || k >= p) return {};
        if (!rng) throw DataError("feature subsampling requires an rng");
        for (uint32_t i = 0; i < k; ++i) {
            uint32_t j = i + static_cast<uint32_t>(rng->next_below(p - i));
            std::swap(feature_pool[i], feature_pool[j]);
        }
        touched_subset_.assign(feature_pool.begin(), feature_pool.begin() + k);
        std::sort(touched_subset_.begin(), touched_subset_.end());
        subset_mark_.assign(p, 0);
        for (uint32_t f : touched_subset_) subset_mark_[f] = 1;
        return touched_subset_;
    }

    bool subset_allowed(uint32_t f) const { return subset_mark_[f] != 0; }

    std::vector<uint32_t> touched_subset_;
    std::vector<uint8_t> subset_mark_;
};

} // namespace

TreeFit fit_tree(const DataMatrix& X, std::span<const double> target,
                 std::span<const double> weight, const TreeParams& params,
                 SplitCriterion criterion, Rng* rng) {
    if (X.rows() == 0) throw DataError("fit_tree: empty input");
    if (target.size() != X.rows()) throw DataError("fit_tree: target size mismatch");
    if (!weight.empty() && weight.size() != X.rows())
        throw DataError("fit_tree: weight size mismatch");

    Builder b(X, target, params, criterion, rng);
    if (weight.empty())
        b.weight.assign(X.rows(), 1.0);
    else
        b.weight.assign(weight.begin(), weight.end());

    b.samples.reserve(X.rows());
    for (uint32_t i = 0; i < X.rows(); ++i)
        if (b.weight[i] > 0.0) b.samples.push_back(i);
    if (b.samples.empty()) throw DataError("fit_tree: all sample weights are zero");

    b.build(0, b.samples.size(), 0);
    return TreeFit{DecisionTree{std::move(b.nodes)}, std::move(b.leaf_of)};
}

} // namespace sectortag
