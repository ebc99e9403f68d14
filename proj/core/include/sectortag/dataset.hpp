#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sectortag/article.hpp"
#include "sectortag/features.hpp"

namespace sectortag {

/// Row-major sparse matrix (CSR). Column indices within a row are strictly
/// increasing; all stored values are non-negative.
struct DataMatrix {
    std::vector<size_t> row_start{0};
    std::vector<uint32_t> col;
    std::vector<double> val;
    uint32_t n_features = 0;

    size_t rows() const { return row_start.size() - 1; }
    size_t nnz() const { return col.size(); }

    void add_row(const FeatureVector& fv);

    std::span<const uint32_t> row_cols(size_t r) const {
        return {col.data() + row_start[r], row_start[r + 1] - row_start[r]};
    }
    std::span<const double> row_vals(size_t r) const {
        return {val.data() + row_start[r], row_start[r + 1] - row_start[r]};
    }

    /// Value at (row, feature); 0 for absent entries. Binary search.
    double value_at(size_t r, uint32_t feature) const;

    /// Copy with entries outside `keep` dropped; the feature dimension is
    /// unchanged, so models trained on the mask stay index-compatible.
    DataMatrix masked(const std::vector<bool>& keep) const;

    /// Copy containing only the given rows, in the given order.
    DataMatrix select_rows(std::span<const size_t> rows_wanted) const;
};

/// Vectorizes a whole corpus against a frozen space.
DataMatrix vectorize_all(const Corpus& corpus, const std::vector<TokenList>& tokens,
                         const FeatureSpace& space);

} // namespace sectortag
