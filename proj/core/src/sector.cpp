#include "sectortag/sector.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "sectortag/errors.hpp"

namespace sectortag {

const std::array<Sector, kSectorCount>& all_sectors() {
    static const std::array<Sector, kSectorCount> sectors = {
        Sector::financial, Sector::health,  Sector::technology,
        Sector::property,  Sector::energy,  Sector::insurance,
    };
    return sectors;
}

std::string_view sector_name(Sector s) {
    switch (s) {
        case Sector::financial: return "financial";
        case Sector::health: return "health";
        case Sector::technology: return "technology";
        case Sector::property: return "property";
        case Sector::energy: return "energy";
        case Sector::insurance: return "insurance";
    }
    return "?";
}

std::string_view sector_display_name(Sector s) {
    switch (s) {
        case Sector::financial: return "Financial";
        case Sector::health: return "Health";
        case Sector::technology: return "Technology";
        case Sector::property: return "Property";
        case Sector::energy: return "Energy";
        case Sector::insurance: return "Insurance";
    }
    return "?";
}

std::optional<Sector> sector_from_name(std::string_view name) {
    for (Sector s : all_sectors())
        if (sector_name(s) == name) return s;
    return std::nullopt;
}

std::string normalize_raw_sector(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
    return out;
}

SectorMergeMap SectorMergeMap::builtin() {
    SectorMergeMap m;
    m.add("Banking & Credit", Sector::financial);
    m.add("Securities & Investment", Sector::financial);
    m.add("Healthcare", Sector::health);
    m.add("Pharmaceuticals & BioTech", Sector::health);
    m.add("Technology", Sector::technology);
    m.add("Property", Sector::property);
    m.add("Oil & Gas", Sector::energy);
    m.add("Utility", Sector::energy);
    m.add("Insurance", Sector::insurance);
    return m;
}

SectorMergeMap SectorMergeMap::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open merge-map file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed merge-map file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw DataError("merge-map file must be a JSON object: " + path);

    SectorMergeMap m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_string())
            throw DataError("merge-map entry for '" + it.key() + "' must be a string");
        auto s = sector_from_name(it.value().get<std::string>());
        if (!s)
            throw DataError("merge-map entry for '" + it.key() +
                            "' names unknown sector '" + it.value().get<std::string>() + "'");
        m.add(it.key(), *s);
    }
    m.validate();
    return m;
}

void SectorMergeMap::add(std::string_view raw_name, Sector s) {
    entries_[normalize_raw_sector(raw_name)] = s;
}

std::optional<Sector> SectorMergeMap::lookup(std::string_view raw_name) const {
    auto it = entries_.find(normalize_raw_sector(raw_name));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::set<Sector> SectorMergeMap::derive(const std::set<std::string>& raw_tags) const {
    std::set<Sector> out;
    for (const auto& tag : raw_tags)
        if (auto s = lookup(tag)) out.insert(*s);
    return out;
}

void SectorMergeMap::validate() const {
    for (Sector s : all_sectors()) {
        bool found = false;
        for (const auto& [raw, mapped] : entries_)
            if (mapped == s) { found = true; break; }
        if (!found)
            throw DataError("merge map has no raw name for sector '" +
                            std::string(sector_name(s)) + "'");
    }
}

} // namespace sectortag
