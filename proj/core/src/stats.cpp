#include "sectortag/stats.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "sectortag/errors.hpp"

namespace sectortag {

CorpusStats compute_stats(const Corpus& corpus) {
    if (corpus.empty()) throw DataError("cannot compute stats on an empty corpus");

    CorpusStats st;
    st.total = corpus.size();
    for (const auto& a : corpus) {
        if (a.labelled_any()) ++st.labelled_any;
        if (!a.sectors.empty()) ++st.labelled_six;
        if (a.sectors.size() >= 2) ++st.multi_sector;
        for (Sector s : a.sectors) ++st.per_sector[static_cast<size_t>(s)];
        for (Sector s : a.sectors) {
            for (Sector t : a.sectors) {
                if (s == t) continue;
                ++st.co_occurrence[static_cast<size_t>(s)][static_cast<size_t>(t)];
            }
        }
    }
    st.labelled_any_pct = 100.0 * static_cast<double>(st.labelled_any) /
                          static_cast<double>(st.total);
    return st;
}

std::string render_stats_csv(const CorpusStats& st) {
    std::ostringstream out;
    out << "metric,value\n";
    out << "total_articles," << st.total << "\n";
    out << "labelled_any," << st.labelled_any << "\n";
    char pct[32];
    std::snprintf(pct, sizeof(pct), "%.1f", st.labelled_any_pct);
    out << "labelled_any_pct," << pct << "\n";
    out << "labelled_six," << st.labelled_six << "\n";
    out << "multi_sector," << st.multi_sector << "\n";
    out << "\n";

    out << "per_sector";
    for (Sector s : all_sectors()) out << "," << sector_display_name(s);
    out << "\n";
    out << "count";
    for (Sector s : all_sectors()) out << "," << st.per_sector[static_cast<size_t>(s)];
    out << "\n";
    out << "\n";

    out << "co_occurrence";
    for (Sector s : all_sectors()) out << "," << sector_display_name(s);
    out << "\n";
    for (size_t i = 0; i < kSectorCount; ++i) {
        out << sector_display_name(all_sectors()[i]);
        for (size_t j = 0; j < kSectorCount; ++j) {
            if (j > i)
                out << "," << st.co_occurrence[i][j];
            else
                out << ",-";
        }
        out << "\n";
    }
    return out.str();
}

std::string stats_to_json(const CorpusStats& st) {
    nlohmann::json j;
    j["total"] = st.total;
    j["labelled_any"] = st.labelled_any;
    j["labelled_any_pct"] = st.labelled_any_pct;
    j["labelled_six"] = st.labelled_six;
    j["multi_sector"] = st.multi_sector;
    nlohmann::json per = nlohmann::json::object();
    for (Sector s : all_sectors())
        per[std::string(sector_name(s))] = st.per_sector[static_cast<size_t>(s)];
    j["per_sector"] = std::move(per);
    nlohmann::json co = nlohmann::json::array();
    for (const auto& row : st.co_occurrence) co.push_back(row);
    j["co_occurrence"] = std::move(co);
    return j.dump();
}

CorpusStats stats_from_json_text(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed stats document: ") + e.what());
    }
    CorpusStats st;
    st.total = j.at("total").get<size_t>();
    st.labelled_any = j.at("labelled_any").get<size_t>();
    st.labelled_any_pct = j.at("labelled_any_pct").get<double>();
    st.labelled_six = j.at("labelled_six").get<size_t>();
    st.multi_sector = j.at("multi_sector").get<size_t>();
    for (Sector s : all_sectors())
        st.per_sector[static_cast<size_t>(s)] =
            j.at("per_sector").at(std::string(sector_name(s))).get<size_t>();
    for (size_t i = 0; i < kSectorCount; ++i)
        for (size_t k = 0; k < kSectorCount; ++k)
            st.co_occurrence[i][k] = j.at("co_occurrence").at(i).at(k).get<size_t>();
    return st;
}

} // namespace sectortag
