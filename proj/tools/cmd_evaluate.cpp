#include <iostream>

#include "commands.hpp"
#include "sectortag/pipeline.hpp"

namespace sectortag::cli {

int cmd_evaluate(const GlobalOpts& g, const EvaluateOpts& o) {
    RunConfig cfg = load_run_config(o.config);
    if (g.seed_set) cfg.seed = g.seed;

    {
        RunConfig probe = cfg;
        auto errs = validate_run_config(probe);
        if (!errs.empty()) {
            for (const auto& e : errs) std::cerr << "sectortag: config: " << e << "\n";
            return kExitUsage;
        }
    }

    log_info(g, "running experiment from " + o.config + " with " +
                    std::to_string(g.workers) + " workers");
    std::string tables;
    RunManifest manifest = run_experiment(cfg, g.workers, &tables);
    std::cout << tables;

    size_t failed = 0;
    for (const auto& c : manifest.cells) {
        if (c.ok) continue;
        ++failed;
        std::cerr << "sectortag: cell failed: " << sector_name(c.sector) << "/"
                  << algorithm_name(c.algorithm) << "/" << feature_mode_name(c.mode) << ": "
                  << c.message << "\n";
    }
    if (failed > 0) {
        std::cerr << "sectortag: " << failed << " of " << manifest.cells.size()
                  << " cells failed\n";
        if (o.strict) return kExitInternal;
    }
    log_info(g, "artifacts written to " + cfg.output_dir);
    return kExitOk;
}

} // namespace sectortag::cli
