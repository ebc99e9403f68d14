#include <filesystem>
#include <fstream>

#include "commands.hpp"
#include "sectortag/corpus_io.hpp"
#include "sectortag/cv.hpp"
#include "sectortag/errors.hpp"

namespace sectortag::cli {

namespace fs = std::filesystem;

int cmd_select(const GlobalOpts& g, const SelectOpts& o) {
    auto sector = sector_from_name(o.sector);
    if (!sector) throw UsageError("unknown sector '" + o.sector +
                                  "'; valid: financial, health, technology, property, "
                                  "energy, insurance");
    auto weighting = weighting_from_name(o.weighting);
    if (!weighting) throw UsageError("unknown weighting '" + o.weighting +
                                     "'; valid: one_hot, tf_idf");

    TopicTaxonomy taxonomy = TopicTaxonomy::from_json_file(o.taxonomy);
    SectorMergeMap merge = o.merge_map.empty() ? SectorMergeMap::builtin()
                                               : SectorMergeMap::from_json_file(o.merge_map);
    StopWordList stops = o.stopwords.empty() ? StopWordList::builtin()
                                             : StopWordList::from_file(o.stopwords);

    Corpus corpus = filter_for_training(load_corpus(o.input, taxonomy, merge));
    if (corpus.empty()) throw DataError("no labelled articles in " + o.input);

    std::vector<TokenList> tokens;
    tokens.reserve(corpus.size());
    for (const auto& a : corpus) tokens.push_back(preprocess(a, stops));

    FeatureSpace space =
        build_feature_space(corpus, tokens, taxonomy, *weighting, o.min_df);
    DataMatrix X = vectorize_all(corpus, tokens, space);
    std::vector<uint8_t> y(corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i) y[i] = corpus[i].has_sector(*sector) ? 1 : 0;

    SelectionParams params;
    uint64_t seed = g.seed_set ? g.seed : 42;
    SelectedFeatures sel = run_feature_selection(*sector, X, y, params, seed);

    fs::create_directories(o.out_dir);
    std::string json_text = selected_features_to_json(sel, space);
    fs::path base = fs::path(o.out_dir) / ("selected_features_" + o.sector);
    {
        std::ofstream out(base.string() + ".json");
        if (!out) throw DataError("cannot write under " + o.out_dir);
        out << json_text << "\n";
    }
    {
        std::ofstream out(base.string() + ".csv");
        if (!out) throw DataError("cannot write under " + o.out_dir);
        out << selected_features_csv_from_json(json_text);
    }
    log_info(g, "selected " + std::to_string(sel.integrated.size()) + " of " +
                    std::to_string(space.dimension()) + " features for " + o.sector);
    return kExitOk;
}

} // namespace sectortag::cli
