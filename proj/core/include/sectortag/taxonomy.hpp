#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sectortag {

/// Legal-topic tag vocabulary with optional parent-child relations
/// (e.g. "audit" -> "accounting-and-audit"). The relation must be acyclic
/// and every referenced parent must be a known topic.
class TopicTaxonomy {
public:
    static TopicTaxonomy from_json_file(const std::string& path);
    void save_json_file(const std::string& path) const;

    void add_topic(std::string topic);
    void set_parent(const std::string& child, const std::string& parent);

    bool contains(const std::string& topic) const { return topics_.count(topic) > 0; }
    const std::set<std::string>& topics() const { return topics_; }
    std::optional<std::string> parent_of(const std::string& topic) const;

    /// Chain of ancestors, nearest first. Empty for roots.
    std::vector<std::string> ancestors_of(const std::string& topic) const;

    const std::map<std::string, std::string>& parents() const { return parent_; }

    /// Throws DataError on dangling parents or cycles.
    void validate() const;

private:
    std::set<std::string> topics_;
    std::map<std::string, std::string> parent_;
};

} // namespace sectortag
