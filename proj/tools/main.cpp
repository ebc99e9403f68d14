#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sectortag/errors.hpp"
#include "sectortag/version.hpp"

using namespace sectortag;
using namespace sectortag::cli;

int main(int argc, char** argv) {
    CLI::App app{"sectortag — industry sector detection in legal articles"};
    app.set_version_flag("--version", std::string("sectortag ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts global;
    app.add_option("--seed", global.seed, "override the seed used by synth/evaluate")
        ->each([&](const std::string&) { global.seed_set = true; });
    app.add_option("--workers", global.workers, "parallel worker count")->default_val(4);
    app.add_option("--log-level", global.log_level, "quiet | info | debug")
        ->check(CLI::IsMember({"quiet", "info", "debug"}))
        ->default_val("info");

    IngestOpts ingest;
    auto* c_ingest = app.add_subcommand(
        "ingest", "load a labelled corpus, derive sectors, write stats and training set");
    c_ingest->add_option("--input", ingest.input, "JSON-lines corpus file")->required();
    c_ingest->add_option("--taxonomy", ingest.taxonomy, "topic taxonomy JSON file")->required();
    c_ingest->add_option("--merge-map", ingest.merge_map,
                         "raw-sector merge map JSON (default: built-in)");
    c_ingest->add_option("--out", ingest.out_dir, "output directory")->required();

    SynthOpts synth;
    auto* c_synth =
        app.add_subcommand("synth", "generate a synthetic corpus with planted sector signal");
    c_synth->add_option("--docs", synth.docs, "number of documents")->default_val(1000);
    c_synth->add_option("--vocab-per-sector", synth.vocab_per_sector)->default_val(50);
    c_synth->add_option("--background-vocab", synth.background_vocab)->default_val(500);
    c_synth->add_option("--multi-label-fraction", synth.multi_label_fraction)->default_val(0.15);
    c_synth->add_option("--label-noise", synth.label_noise)->default_val(0.0);
    c_synth->add_option("--signal-fraction", synth.signal_fraction)->default_val(0.35);
    c_synth->add_option("--tokens-per-doc", synth.tokens_per_doc)->default_val(120);
    c_synth->add_option("--out", synth.out_dir, "output directory")->required();

    EvaluateOpts evaluate;
    auto* c_eval = app.add_subcommand(
        "evaluate", "run the full sector x algorithm x feature-mode experiment matrix");
    c_eval->add_option("--config", evaluate.config, "run configuration JSON file")->required();
    c_eval->add_flag("--strict", evaluate.strict,
                     "exit 3 when any cell of the matrix fails (default: report and exit 0)");

    SelectOpts select;
    auto* c_select = app.add_subcommand(
        "select-features", "run the per-sector feature-selection procedure standalone");
    c_select->add_option("--input", select.input, "JSON-lines training corpus")->required();
    c_select->add_option("--taxonomy", select.taxonomy, "topic taxonomy JSON file")->required();
    c_select->add_option("--merge-map", select.merge_map, "merge map JSON (default: built-in)");
    c_select->add_option("--stopwords", select.stopwords, "stop-word file (default: built-in)");
    c_select->add_option("--sector", select.sector, "target sector")->required();
    c_select->add_option("--weighting", select.weighting)->default_val("tf_idf");
    c_select->add_option("--min-df", select.min_df)->default_val(2);
    c_select->add_option("--out", select.out_dir, "output directory")->required();

    PredictOpts predict;
    auto* c_predict =
        app.add_subcommand("predict", "score articles with a persisted model");
    c_predict->add_option("--model", predict.model, "model JSON file")->required();
    c_predict->add_option("--features", predict.features, "feature-space JSON file")->required();
    c_predict->add_option("--selected", predict.selected,
                          "selected-features JSON; restricts the space before scoring");
    c_predict->add_option("--input", predict.input, "JSON-lines articles")->required();
    c_predict->add_option("--stopwords", predict.stopwords, "stop-word file (default: built-in)");
    c_predict->add_option("--out", predict.out, "output file (default: stdout)");
    c_predict->add_option("--threshold", predict.threshold, "decision threshold")
        ->default_val(0.5);
    c_predict->add_option("--grey", predict.grey, "grey-zone interval, e.g. 0.4,0.6")
        ->default_val("0.4,0.6");

    ReportOpts report;
    auto* c_report = app.add_subcommand(
        "report", "regenerate all reports from a run directory without recomputation");
    c_report->add_option("--run-dir", report.run_dir, "directory written by evaluate")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_ingest->parsed()) return cmd_ingest(global, ingest);
        if (c_synth->parsed()) {
            if (global.seed_set) synth.seed = global.seed;
            return cmd_synth(global, synth);
        }
        if (c_eval->parsed()) return cmd_evaluate(global, evaluate);
        if (c_select->parsed()) return cmd_select(global, select);
        if (c_predict->parsed()) return cmd_predict(global, predict);
        if (c_report->parsed()) return cmd_report(global, report);
    } catch (const UsageError& e) {
        std::cerr << "sectortag: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "sectortag: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "sectortag: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
