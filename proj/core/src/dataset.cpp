#include "sectortag/dataset.hpp"

#include <algorithm>

#include "sectortag/errors.hpp"

namespace sectortag {

void DataMatrix::add_row(const FeatureVector& fv) {
    for (const auto& [c, v] : fv.entries) {
        col.push_back(c);
        val.push_back(v);
    }
    row_start.push_back(col.size());
}

double DataMatrix::value_at(size_t r, uint32_t feature) const {
    auto cols = row_cols(r);
    auto it = std::lower_bound(cols.begin(), cols.end(), feature);
    if (it == cols.end() || *it != feature) return 0.0;
    return val[row_start[r] + static_cast<size_t>(it - cols.begin())];
}

DataMatrix DataMatrix::masked(const std::vector<bool>& keep) const {
    DataMatrix out;
    out.n_features = n_features;
    out.col.reserve(col.size());
    out.val.reserve(val.size());
    for (size_t r = 0; r < rows(); ++r) {
        for (size_t i = row_start[r]; i < row_start[r + 1]; ++i)
            if (col[i] < keep.size() && keep[col[i]]) {
                out.col.push_back(col[i]);
                out.val.push_back(val[i]);
            }
        out.row_start.push_back(out.col.size());
    }
    return out;
}

DataMatrix DataMatrix::select_rows(std::span<const size_t> rows_wanted) const {
    DataMatrix out;
    out.n_features = n_features;
    for (size_t r : rows_wanted) {
        for (size_t i = row_start[r]; i < row_start[r + 1]; ++i) {
            out.col.push_back(col[i]);
            out.val.push_back(val[i]);
        }
        out.row_start.push_back(out.col.size());
    }
    return out;
}

DataMatrix vectorize_all(const Corpus& corpus, const std::vector<TokenList>& tokens,
                         const FeatureSpace& space) {
    if (corpus.size() != tokens.size())
        throw DataError("token lists do not match the corpus size");
    DataMatrix m;
    m.n_features = space.dimension();
    for (size_t i = 0; i < corpus.size(); ++i)
        m.add_row(vectorize(corpus[i], tokens[i], space));
    return m;
}

} // namespace sectortag
