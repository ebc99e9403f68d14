#include <filesystem>
#include <fstream>

#include "commands.hpp"
#include "sectortag/corpus_io.hpp"
#include "sectortag/errors.hpp"
#include "sectortag/stats.hpp"

namespace sectortag::cli {

namespace fs = std::filesystem;

int cmd_ingest(const GlobalOpts& g, const IngestOpts& o) {
    TopicTaxonomy taxonomy = TopicTaxonomy::from_json_file(o.taxonomy);
    SectorMergeMap merge = o.merge_map.empty() ? SectorMergeMap::builtin()
                                               : SectorMergeMap::from_json_file(o.merge_map);

    Corpus loaded = load_corpus(o.input, taxonomy, merge);
    if (loaded.empty()) throw DataError("corpus file contains no records: " + o.input);
    CorpusStats stats = compute_stats(loaded);
    Corpus training = filter_for_training(loaded);

    fs::create_directories(o.out_dir);
    {
        std::ofstream csv(fs::path(o.out_dir) / "stats.csv");
        if (!csv) throw DataError("cannot write stats.csv under " + o.out_dir);
        csv << render_stats_csv(stats);
    }
    {
        std::ofstream js(fs::path(o.out_dir) / "stats.json");
        if (!js) throw DataError("cannot write stats.json under " + o.out_dir);
        js << stats_to_json(stats) << "\n";
    }
    save_corpus_jsonl(training, (fs::path(o.out_dir) / "corpus_training.jsonl").string());

    log_info(g, "loaded " + std::to_string(loaded.size()) + " articles, " +
                    std::to_string(training.size()) + " labelled with any raw sector (" +
                    std::to_string(stats.labelled_six) + " with one of the six)");
    return kExitOk;
}

} // namespace sectortag::cli
