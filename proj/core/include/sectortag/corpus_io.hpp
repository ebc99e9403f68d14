#pragma once

#include <string>

#include "sectortag/article.hpp"
#include "sectortag/sector.hpp"
#include "sectortag/taxonomy.hpp"

namespace sectortag {

/// Reads a UTF-8 JSON-lines corpus file (fields: id, title, body, topics,
/// sectors_raw). Every record becomes an Article with `sectors` derived via
/// the merge map. Throws DataError with the offending line number on
/// malformed records, duplicate ids, or topic tags missing from the taxonomy.
Corpus load_corpus(const std::string& path, const TopicTaxonomy& taxonomy,
                   const SectorMergeMap& merge);

/// Writes the same JSON-lines schema, plus the derived `sectors` field.
void save_corpus_jsonl(const Corpus& corpus, const std::string& path);

/// Drops articles whose raw_sector_tags is empty (the unannotated share).
/// Articles labelled only with raw sectors outside the six are retained;
/// they act as negatives for every sector. Retained articles are not mutated.
Corpus filter_for_training(const Corpus& corpus);

} // namespace sectortag
