#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace sectortag {

/// The six canonical industry sectors. The raw tagging vocabulary is larger;
/// SectorMergeMap folds related raw names into these.
enum class Sector : int {
    financial = 0,
    health,
    technology,
    property,
    energy,
    insurance,
};

inline constexpr int kSectorCount = 6;

const std::array<Sector, kSectorCount>& all_sectors();

/// Canonical lowercase identifier ("financial", ...).
std::string_view sector_name(Sector s);

/// Capitalized name used in report tables ("Financial", ...).
std::string_view sector_display_name(Sector s);

std::optional<Sector> sector_from_name(std::string_view name);

/// Trim, collapse internal whitespace, lowercase (ASCII).
std::string normalize_raw_sector(std::string_view raw);

/// Raw sector name -> canonical sector. Raw names without an entry map to
/// nothing; lookup is case-insensitive after whitespace normalization.
class SectorMergeMap {
public:
    /// Default subcategory merge shipped with the toolkit (kept in sync with
    /// data/merge_map.json; see the corresponding unit test).
    static SectorMergeMap builtin();
    static SectorMergeMap from_json_file(const std::string& path);

    void add(std::string_view raw_name, Sector s);
    std::optional<Sector> lookup(std::string_view raw_name) const;
    std::set<Sector> derive(const std::set<std::string>& raw_tags) const;

    /// Keys are normalized raw names.
    const std::map<std::string, Sector>& entries() const { return entries_; }

    /// Checks that every canonical sector has at least one preimage.
    void validate() const;

private:
    std::map<std::string, Sector> entries_;
};

} // namespace sectortag
