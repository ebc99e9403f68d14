#include "commands.hpp"
#include "sectortag/pipeline.hpp"

namespace sectortag::cli {

int cmd_report(const GlobalOpts& g, const ReportOpts& o) {
    regenerate_reports(o.run_dir);
    log_info(g, "reports regenerated under " + o.run_dir);
    return kExitOk;
}

} // namespace sectortag::cli
