#pragma once

#include <cstdint>
#include <iostream>
#include <string>

namespace sectortag::cli {

// Exit codes: 0 success, 1 validation/usage error, 2 data error, 3 internal
// error. Primary reports go to stdout; everything else to stderr.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

struct GlobalOpts {
    uint64_t seed = 0;
    bool seed_set = false;
    size_t workers = 4;
    std::string log_level = "info"; // quiet | info | debug
};

inline bool log_enabled(const GlobalOpts& g, const char* level) {
    if (g.log_level == "quiet") return false;
    if (g.log_level == "info") return std::string(level) != "debug";
    return true;
}

inline void log_info(const GlobalOpts& g, const std::string& msg) {
    if (log_enabled(g, "info")) std::cerr << "sectortag: " << msg << "\n";
}

struct IngestOpts {
    std::string input;
    std::string taxonomy;
    std::string merge_map;
    std::string out_dir;
};
int cmd_ingest(const GlobalOpts& g, const IngestOpts& o);

struct SynthOpts {
    size_t docs = 1000;
    size_t vocab_per_sector = 50;
    size_t background_vocab = 500;
    double multi_label_fraction = 0.15;
    double label_noise = 0.0;
    double signal_fraction = 0.35;
    size_t tokens_per_doc = 120;
    uint64_t seed = 1;
    std::string out_dir;
};
int cmd_synth(const GlobalOpts& g, const SynthOpts& o);

struct EvaluateOpts {
    std::string config;
    bool strict = false;
};
int cmd_evaluate(const GlobalOpts& g, const EvaluateOpts& o);

struct SelectOpts {
    std::string input;
    std::string taxonomy;
    std::string merge_map;
    std::string stopwords;
    std::string sector;
    std::string weighting = "tf_idf";
    size_t min_df = 2;
    std::string out_dir;
};
int cmd_select(const GlobalOpts& g, const SelectOpts& o);

struct PredictOpts {
    std::string model;
    std::string features;
    std::string selected;
    std::string input;
    std::string stopwords;
    std::string out; // empty = stdout
    double threshold = 0.5;
    std::string grey = "0.4,0.6";
};
int cmd_predict(const GlobalOpts& g, const PredictOpts& o);

struct ReportOpts {
    std::string run_dir;
};
int cmd_report(const GlobalOpts& g, const ReportOpts& o);

} // namespace sectortag::cli
