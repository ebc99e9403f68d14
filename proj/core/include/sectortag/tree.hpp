#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sectortag/dataset.hpp"
#include "sectortag/rng.hpp"

namespace sectortag {

/// Gini impurity 2p(1-p) of a binary node; pos/neg are (possibly weighted)
/// class counts. Throws DataError on an empty node.
double gini_impurity(double pos, double neg);

struct TreeNode {
    int32_t feature = -1;   // -1 for leaves
    double threshold = 0.0; // go left when x[feature] <= threshold
    double impurity = 0.0;  // training impurity at this node
    double weight = 0.0;    // total sample weight reaching this node (N_t)
    double value = 0.0;     // leaves: class proportion (gini) or mean target /
                            // boosting step (variance)
    int32_t left = -1;
    int32_t right = -1;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes; // nodes[0] is the root

    double evaluate(const FeatureVector& x) const;
    double evaluate(const DataMatrix& X, size_t row) const;
    size_t leaf_count() const;
};

enum class SplitCriterion { gini, variance };

struct TreeParams {
    size_t max_depth = 0;           // 0 = unlimited
    double min_samples_leaf = 1.0;  // weighted sample count per side
    uint32_t feature_subsample = 0; // features drawn per node; 0 = all
};

struct TreeFit {
    DecisionTree tree;
    /// Leaf node index per input row; -1 for rows excluded by zero weight.
    std::vector<int32_t> leaf_of;
};

/// Greedy CART fit. At each node, over the (possibly subsampled) feature
/// set, picks the (feature, threshold) maximizing the weighted impurity
/// decrease; thresholds are midpoints of consecutive distinct sorted values,
/// with absent sparse entries participating as value 0. Ties are broken by
/// lowest feature index, then lowest threshold. Stops on max_depth, node
/// purity, or min_samples_leaf. All-equal targets yield a single leaf.
///
/// `target` is the class label in {0,1} for gini, or an arbitrary real (e.g.
/// boosting residual) for variance. `weight` may be empty (all ones); rows
/// with zero weight are excluded. `rng` is required when feature_subsample
/// is active.
TreeFit fit_tree(const DataMatrix& X, std::span<const double> target,
                 std::span<const double> weight, const TreeParams& params,
                 SplitCriterion criterion, Rng* rng = nullptr);

} // namespace sectortag
