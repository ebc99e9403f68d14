#include "sectortag/taxonomy.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "sectortag/errors.hpp"

namespace sectortag {

TopicTaxonomy TopicTaxonomy::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open taxonomy file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed taxonomy file " + path + ": " + e.what());
    }

    TopicTaxonomy t;
    if (!j.is_object() || !j.contains("topics") || !j["topics"].is_array())
        throw DataError("taxonomy file must be an object with a 'topics' array: " + path);
    for (const auto& v : j["topics"]) {
        if (!v.is_string()) throw DataError("taxonomy topics must be strings: " + path);
        t.add_topic(v.get<std::string>());
    }
    if (j.contains("parent")) {
        if (!j["parent"].is_object())
            throw DataError("taxonomy 'parent' must be an object: " + path);
        for (auto it = j["parent"].begin(); it != j["parent"].end(); ++it) {
            if (!it.value().is_string())
                throw DataError("taxonomy parent of '" + it.key() + "' must be a string");
            t.parent_[it.key()] = it.value().get<std::string>();
        }
    }
    t.validate();
    return t;
}

void TopicTaxonomy::save_json_file(const std::string& path) const {
    nlohmann::json j;
    j["topics"] = topics_;
    j["parent"] = parent_;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write taxonomy file: " + path);
    out << j.dump(2) << "\n";
}

void TopicTaxonomy::add_topic(std::string topic) { topics_.insert(std::move(topic)); }

void TopicTaxonomy::set_parent(const std::string& child, const std::string& parent) {
    parent_[child] = parent;
}

std::optional<std::string> TopicTaxonomy::parent_of(const std::string& topic) const {
    auto it = parent_.find(topic);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> TopicTaxonomy::ancestors_of(const std::string& topic) const {
    std::vector<std::string> chain;
    std::string cur = topic;
    while (true) {
        auto it = parent_.find(cur);
        if (it == parent_.end()) break;
        // validate() guarantees acyclicity; the size guard keeps malformed
        // instances from looping if validate() was skipped.
        if (chain.size() > parent_.size()) break;
        chain.push_back(it->second);
        cur = it->second;
    }
    return chain;
}

void TopicTaxonomy::validate() const {
    for (const auto& [child, parent] : parent_) {
        if (!topics_.count(child))
            throw DataError("taxonomy parent relation names unknown child topic '" + child + "'");
        if (!topics_.count(parent))
            throw DataError("taxonomy parent relation names unknown parent topic '" + parent + "'");
    }
    // cycle check: follow each chain at most |parent_| steps
    for (const auto& [child, parent] : parent_) {
        std::string cur = child;
        size_t steps = 0;
        while (true) {
            auto it = parent_.find(cur);
            if (it == parent_.end()) break;
            cur = it->second;
            if (++steps > parent_.size())
                throw DataError("taxonomy parent relation contains a cycle through '" + child + "'");
        }
    }
}

} // namespace sectortag
