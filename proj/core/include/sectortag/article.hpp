#pragma once

#include <set>
#include <string>
#include <vector>

#include "sectortag/sector.hpp"

namespace sectortag {

/// One legal article. `sectors` is always the image of `raw_sector_tags`
/// under the corpus' merge map; articles whose image is empty keep an empty
/// set and count as unlabelled.
struct Article {
    std::string id;
    std::string title;
    std::string body;
    std::set<std::string> topic_tags;
    std::set<std::string> raw_sector_tags;
    std::set<Sector> sectors;

    bool labelled_any() const { return !raw_sector_tags.empty(); }
    bool has_sector(Sector s) const { return sectors.count(s) > 0; }
};

using Corpus = std::vector<Article>;

} // namespace sectortag
