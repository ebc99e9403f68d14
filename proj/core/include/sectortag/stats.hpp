#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "sectortag/article.hpp"

namespace sectortag {

/// Label statistics over a loaded corpus: totals, per-sector counts and the
/// symmetric 6x6 sector co-occurrence matrix (empty diagonal).
struct CorpusStats {
    size_t total = 0;
    size_t labelled_any = 0;   // raw_sector_tags non-empty
    double labelled_any_pct = 0.0;
    size_t labelled_six = 0;   // sectors non-empty
    size_t multi_sector = 0;   // |sectors| >= 2
    std::array<size_t, kSectorCount> per_sector{};
    std::array<std::array<size_t, kSectorCount>, kSectorCount> co_occurrence{};
};

/// Throws DataError on an empty corpus.
CorpusStats compute_stats(const Corpus& corpus);

/// CSV report with a summary block followed by the co-occurrence matrix in
/// the conventional layout: upper triangle populated, diagonal and lower
/// triangle rendered as "-".
std::string render_stats_csv(const CorpusStats& stats);

std::string stats_to_json(const CorpusStats& stats);
CorpusStats stats_from_json_text(const std::string& json_text);

} // namespace sectortag
