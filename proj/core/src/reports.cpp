#include "sectortag/reports.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace sectortag {

namespace {

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string metric_cell(const MetricCell& c, bool auc_block) {
    if (!c.present) return "-";
    double v = auc_block ? c.auc : c.f;
    bool bold = auc_block ? c.auc_bold : c.f_bold;
    std::string s = fixed3(v);
    return bold ? "**" + s + "**" : s;
}

void render_block(std::ostringstream& out, const MetricTable& t, bool auc_block) {
    out << "### " << (auc_block ? "AUC score" : "F-score") << " ("
        << feature_mode_name(t.mode) << " features)\n\n";
    out << "| Algorithm |";
    for (Sector s : all_sectors()) out << " " << sector_display_name(s) << " |";
    out << " Mean score |\n";
    out << "|---|";
    for (int i = 0; i < kSectorCount; ++i) out << "---|";
    out << "---|\n";
    for (size_t r = 0; r < t.algorithms.size(); ++r) {
        out << "| " << algorithm_name(t.algorithms[r]) << " |";
        for (int c = 0; c < kSectorCount; ++c)
            out << " " << metric_cell(t.cells[r][static_cast<size_t>(c)], auc_block) << " |";
        out << " " << metric_cell(t.mean_col[r], auc_block) << " |\n";
    }
    out << "\n";
}

} // namespace

std::string render_metric_tables_md(std::span<const MetricTable> tables) {
    std::ostringstream out;
    out << "# Sector detection results\n\n";
    for (const auto& t : tables) {
        out << "## " << feature_mode_name(t.mode) << " feature set\n\n";
        render_block(out, t, true);
        render_block(out, t, false);
    }
    return out.str();
}

std::string render_cells_csv(std::span<const CellSummary> cells) {
    std::ostringstream out;
    out << "sector,algorithm,mode,status,auc,f_score,precision,recall,"
           "false_negatives,false_positives,grey_zone,skipped_folds,selected_mean_size\n";
    for (const auto& c : cells) {
        out << sector_name(c.sector) << "," << algorithm_name(c.algorithm) << ","
            << feature_mode_name(c.mode) << "," << (c.ok ? "ok" : "failed") << ",";
        if (c.ok) {
            out << fixed6(c.auc) << "," << fixed6(c.f) << "," << fixed6(c.precision) << ","
                << fixed6(c.recall) << "," << c.false_negatives << "," << c.false_positives
                << "," << c.grey_zone << ",";
            for (size_t i = 0; i < c.skipped_folds.size(); ++i) {
                if (i > 0) out << ";";
                out << c.skipped_folds[i];
            }
            out << "," << fixed6(c.selected_mean_size);
        } else {
            out << ",,,,,,,,";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_roc_csv(const RocCurve& roc) {
    std::ostringstream out;
    out << "threshold,fpr,tpr\n";
    for (const auto& p : roc.points)
        out << exact(p.threshold) << "," << exact(p.fpr) << "," << exact(p.tpr) << "\n";
    return out.str();
}

std::string render_pooled_csv(const PooledScores& pooled) {
    std::ostringstream out;
    out << "article_id,fold,label,score\n";
    for (const auto& e : pooled.entries)
        out << e.article_id << "," << e.fold << "," << static_cast<int>(e.label) << ","
            << exact(e.score) << "\n";
    return out.str();
}

std::string render_errors_csv(const ErrorBreakdown& errors) {
    std::ostringstream out;
    out << "article_id,label,score,type,grey_zone\n";
    for (const auto& item : errors.items)
        out << item.article_id << "," << static_cast<int>(item.label) << ","
            << exact(item.score) << "," << (item.label ? "fn" : "fp") << ","
            << (item.grey ? 1 : 0) << "\n";
    return out.str();
}

std::string render_timings_csv(std::span<const CellTiming> timings) {
    std::ostringstream out;
    out << "sector,algorithm,mode,vectorize_s,selection_s,train_s,score_s,total_s\n";
    for (const auto& t : timings) {
        double total = t.vectorize_s + t.selection_s + t.train_s + t.score_s;
        out << sector_name(t.sector) << "," << algorithm_name(t.algorithm) << ","
            << feature_mode_name(t.mode) << "," << fixed6(t.vectorize_s) << ","
            << fixed6(t.selection_s) << "," << fixed6(t.train_s) << ","
            << fixed6(t.score_s) << "," << fixed6(total) << "\n";
    }
    return out.str();
}

std::string render_timing_comparison_csv(std::span<const CellTiming> timings) {
    // key: (sector, algorithm) -> vectorize+train per mode
    std::map<std::pair<int, int>, std::array<std::optional<double>, 2>> by_cell;
    for (const auto& t : timings) {
        auto key = std::make_pair(static_cast<int>(t.sector), static_cast<int>(t.algorithm));
        by_cell[key][t.mode == FeatureMode::full ? 0 : 1] = t.vectorize_s + t.train_s;
    }

    std::ostringstream out;
    out << "sector,algorithm,full_vectorize_train_s,selected_vectorize_train_s,ratio\n";
    for (const auto& [key, modes] : by_cell) {
        if (!modes[0] || !modes[1]) continue;
        double ratio = *modes[0] > 0.0 ? *modes[1] / *modes[0] : 0.0;
        out << sector_name(static_cast<Sector>(key.first)) << ","
            << algorithm_name(static_cast<Algorithm>(key.second)) << ","
            << fixed6(*modes[0]) << "," << fixed6(*modes[1]) << "," << fixed6(ratio) << "\n";
    }
    return out.str();
}

} // namespace sectortag
