#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sectortag/article.hpp"
#include "sectortag/sector.hpp"
#include "sectortag/taxonomy.hpp"

namespace sectortag {

/// Parameters for the desk-scale synthetic corpus generator. Each sector gets
/// a disjoint planted vocabulary of ready-made stems; a document labelled
/// with sector s draws `signal_fraction` of its tokens from s's planted
/// vocabulary (split across sectors for multi-label documents) and the rest
/// from a shared background vocabulary.
struct SynthSpec {
    size_t docs = 1000;
    size_t vocab_per_sector = 50;
    size_t background_vocab = 500;
    double multi_label_fraction = 0.15; // share of documents carrying two sectors
    double label_noise = 0.0;           // per true label: probability it is
                                        // mislabelled as a random other sector
    double signal_fraction = 0.35;
    size_t tokens_per_doc = 120;        // mean; actual length varies +-25%
    uint64_t seed = 1;
};

struct SyntheticCorpus {
    Corpus articles;
    TopicTaxonomy taxonomy;
    SectorMergeMap merge_map;
    /// Planted stems per sector; ground truth for recovery tests.
    std::map<Sector, std::vector<std::string>> planted;
    SynthSpec spec;
};

/// Deterministic given spec.seed. Throws UsageError on invalid parameters or
/// when the requested vocabulary cannot be generated.
SyntheticCorpus generate_synthetic(const SynthSpec& spec);

/// Writes corpus.jsonl, taxonomy.json, merge_map.json and
/// planted_vocabulary.json under out_dir.
void save_synthetic(const SyntheticCorpus& synth, const std::string& out_dir);

} // namespace sectortag
