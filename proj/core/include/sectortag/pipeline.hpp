#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sectortag/cv.hpp"
#include "sectortag/synth.hpp"

namespace sectortag {

/// Declarative experiment configuration. Parsed from a single JSON file;
/// environment variables of the form SECTOR_TAGGER_<PATH> (see
/// env_override_table()) take precedence over file values. All randomness
/// flows from `seed`.
struct RunConfig {
    // corpus source: file paths, or a synthetic generator spec
    std::string corpus_path;
    std::string taxonomy_path;
    std::string merge_map_path;
    std::string stopwords_path; // empty = builtin list
    std::optional<SynthSpec> synth;

    std::vector<std::string> sector_names;     // raw; validated into `sectors`
    std::vector<std::string> algorithm_names;  // raw; validated into `algorithms`
    std::vector<std::string> feature_mode_names;
    std::string weighting_name_raw = "tf_idf";

    std::vector<Sector> sectors;
    std::vector<Algorithm> algorithms;
    std::vector<FeatureMode> feature_modes;
    Weighting weighting = Weighting::tf_idf;

    size_t min_df = 2;
    bool topic_ancestors = true;
    size_t folds = 10;
    double decision_threshold = 0.5;
    std::pair<double, double> grey = {0.4, 0.6};
    AlgorithmParams algo;
    std::vector<double> grid_quantiles = {0.5, 0.75, 0.9, 0.95, 0.99};
    size_t inner_folds = 3;
    size_t resamples = 0; // 0 = single CV run, no statistical comparison
    bool emit_models = true;
    uint64_t seed = 42;
    std::string output_dir;
};

/// env var name -> config field path, e.g. SECTOR_TAGGER_CV_FOLDS -> cv.folds
const std::map<std::string, std::string>& env_override_table();

RunConfig parse_run_config(const std::string& json_text, const std::string& source_name);

/// File + environment overrides.
RunConfig load_run_config(const std::string& path);

/// Cross-field validation. Collects every violation (field path + message)
/// instead of failing fast; on success fills the parsed enum fields.
std::vector<std::string> validate_run_config(RunConfig& cfg);

/// Canonical JSON echo with defaults filled.
std::string run_config_to_json(const RunConfig& cfg);

CvParams cv_params_from_config(const RunConfig& cfg);

struct StageTime {
    std::string name;
    double seconds = 0.0;
};

struct CellStatus {
    Sector sector = Sector::financial;
    Algorithm algorithm = Algorithm::lr;
    FeatureMode mode = FeatureMode::full;
    bool ok = false;
    std::string message;
    double auc = 0.0;
    double f = 0.0;
    std::vector<FoldTiming> fold_times;
};

struct RunManifest {
    std::string toolkit_version;
    std::string config_echo; // canonical JSON
    std::vector<StageTime> stages;
    std::vector<CellStatus> cells;
    std::map<std::string, std::string> artifacts; // relative path -> sha256
    bool all_ok = true;

    std::string to_json() const;
};

/// Executes the full sector x algorithm x feature-mode matrix and writes all
/// artifacts under cfg.output_dir. Cell failures are isolated: a failing
/// cell is recorded in the manifest without aborting the rest. Returns the
/// manifest; the rendered metric tables are also returned through
/// `tables_md_out` when non-null (cmd_evaluate prints them to stdout).
RunManifest run_experiment(const RunConfig& cfg, size_t workers,
                           std::string* tables_md_out = nullptr);

/// Regenerates every derived report (tables, CSVs, timing comparison) from a
/// run directory's primary artifacts without recomputation. Throws DataError
/// naming the first missing artifact.
void regenerate_reports(const std::string& run_dir);

} // namespace sectortag
