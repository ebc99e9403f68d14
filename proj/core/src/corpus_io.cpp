#include "sectortag/corpus_io.hpp"

#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "sectortag/errors.hpp"

namespace sectortag {

using nlohmann::json;

Corpus load_corpus(const std::string& path, const TopicTaxonomy& taxonomy,
                   const SectorMergeMap& merge) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path);

    Corpus corpus;
    std::set<std::string> seen_ids;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;

        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": malformed record: " + e.what());
        }
        auto fail = [&](const std::string& msg) -> DataError {
            return DataError(path + ":" + std::to_string(line_no) + ": " + msg);
        };
        if (!j.is_object()) throw fail("record is not a JSON object");
        for (const char* field : {"id", "title", "body"}) {
            if (!j.contains(field) || !j[field].is_string())
                throw fail(std::string("missing or non-string field '") + field + "'");
        }
        for (const char* field : {"topics", "sectors_raw"}) {
            if (!j.contains(field) || !j[field].is_array())
                throw fail(std::string("missing or non-array field '") + field + "'");
        }

        Article a;
        a.id = j["id"].get<std::string>();
        if (a.id.empty()) throw fail("empty article id");
        if (!seen_ids.insert(a.id).second) throw fail("duplicate article id '" + a.id + "'");
        a.title = j["title"].get<std::string>();
        a.body = j["body"].get<std::string>();
        for (const auto& t : j["topics"]) {
            if (!t.is_string()) throw fail("topics entries must be strings");
            std::string tag = t.get<std::string>();
            if (!taxonomy.contains(tag)) throw fail("unknown topic tag '" + tag + "'");
            a.topic_tags.insert(std::move(tag));
        }
        for (const auto& s : j["sectors_raw"]) {
            if (!s.is_string()) throw fail("sectors_raw entries must be strings");
            a.raw_sector_tags.insert(s.get<std::string>());
        }
        a.sectors = merge.derive(a.raw_sector_tags);
        corpus.push_back(std::move(a));
    }
    return corpus;
}

void save_corpus_jsonl(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write corpus file: " + path);
    for (const auto& a : corpus) {
        json j;
        j["id"] = a.id;
        j["title"] = a.title;
        j["body"] = a.body;
        j["topics"] = a.topic_tags;
        j["sectors_raw"] = a.raw_sector_tags;
        std::vector<std::string> sectors;
        for (Sector s : a.sectors) sectors.emplace_back(sector_name(s));
        j["sectors"] = sectors;
        out << j.dump() << "\n";
    }
}

Corpus filter_for_training(const Corpus& corpus) {
    Corpus out;
    out.reserve(corpus.size());
    for (const auto& a : corpus)
        if (a.labelled_any()) out.push_back(a);
    return out;
}

} // namespace sectortag
