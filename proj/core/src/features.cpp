#include "sectortag/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "sectortag/errors.hpp"
#include "sectortag/version.hpp"

namespace sectortag {

using nlohmann::json;

std::string_view weighting_name(Weighting w) {
    return w == Weighting::one_hot ? "one_hot" : "tf_idf";
}

std::optional<Weighting> weighting_from_name(std::string_view name) {
    if (name == "one_hot") return Weighting::one_hot;
    if (name == "tf_idf") return Weighting::tf_idf;
    return std::nullopt;
}

std::optional<uint32_t> FeatureSpace::word_column(const std::string& stem) const {
    auto it = word_index_.find(stem);
    if (it == word_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<uint32_t> FeatureSpace::topic_column(const std::string& tag) const {
    auto it = topic_index_.find(tag);
    if (it == topic_index_.end()) return std::nullopt;
    return static_cast<uint32_t>(words_.size()) + it->second;
}

const std::string& FeatureSpace::column_name(uint32_t col) const {
    if (col < words_.size()) return words_[col];
    return topics_[col - words_.size()];
}

size_t FeatureSpace::doc_freq(const std::string& stem) const {
    auto it = word_index_.find(stem);
    if (it == word_index_.end()) return 0;
    return doc_freq_[it->second];
}

double FeatureSpace::idf(uint32_t word_col) const {
    double df = static_cast<double>(doc_freq_[word_col]);
    return std::log((1.0 + static_cast<double>(n_docs_)) / (1.0 + df)) + 1.0;
}

FeatureSpace build_feature_space(const Corpus& train, const std::vector<TokenList>& tokens,
                                 const TopicTaxonomy& taxonomy, Weighting weighting,
                                 size_t min_df, bool topic_ancestors) {
    if (train.empty()) throw DataError("cannot build a feature space from an empty corpus");
    if (train.size() != tokens.size())
        throw DataError("token lists do not match the training corpus size");

    std::map<std::string, uint32_t> df;
    for (const auto& doc_tokens : tokens) {
        std::set<std::string> distinct(doc_tokens.begin(), doc_tokens.end());
        for (const auto& stem : distinct) ++df[stem];
    }

    FeatureSpace space;
    space.n_docs_ = train.size();
    space.min_df_ = min_df;
    space.weighting_ = weighting;
    space.topic_ancestors_ = topic_ancestors;
    for (const auto& [stem, count] : df) {
        if (count < min_df) continue;
        space.word_index_[stem] = static_cast<uint32_t>(space.words_.size());
        space.words_.push_back(stem);
        space.doc_freq_.push_back(count);
    }
    uint32_t t = 0;
    for (const auto& topic : taxonomy.topics()) {
        space.topic_index_[topic] = t++;
        space.topics_.push_back(topic);
    }
    space.topic_parent_ = taxonomy.parents();
    return space;
}

FeatureVector vectorize(const Article& article, const TokenList& tokens,
                        const FeatureSpace& space) {
    FeatureVector fv;

    // word features
    std::map<uint32_t, double> word_weights;
    for (const auto& stem : tokens) {
        auto col = space.word_column(stem);
        if (col) word_weights[*col] += 1.0;
    }
    if (space.weighting() == Weighting::one_hot) {
        for (auto& [col, w] : word_weights) w = 1.0;
    } else {
        double norm_sq = 0.0;
        for (auto& [col, w] : word_weights) {
            w *= space.idf(col);
            norm_sq += w * w;
        }
        if (norm_sq > 0.0) {
            double inv = 1.0 / std::sqrt(norm_sq);
            for (auto& [col, w] : word_weights) w *= inv;
        }
    }
    for (const auto& [col, w] : word_weights)
        if (w > 0.0) fv.push(col, w);

    // topic features are binary; a tag activates its ancestors too when the
    // space was built with propagation on
    std::set<uint32_t> topic_cols;
    for (const auto& tag : article.topic_tags) {
        if (auto col = space.topic_column(tag)) topic_cols.insert(*col);
        if (space.topic_ancestors()) {
            std::string cur = tag;
            size_t guard = 0;
            while (true) {
                auto it = space.topic_parents().find(cur);
                if (it == space.topic_parents().end()) break;
                if (auto col = space.topic_column(it->second)) topic_cols.insert(*col);
                cur = it->second;
                if (++guard > space.topic_parents().size()) break;
            }
        }
    }
    for (uint32_t col : topic_cols) fv.push(col, 1.0);
    return fv;
}

FeatureSpace FeatureSpace::restrict_to(const std::set<uint32_t>& columns) const {
    FeatureSpace out;
    out.n_docs_ = n_docs_;
    out.min_df_ = min_df_;
    out.weighting_ = weighting_;
    out.topic_ancestors_ = topic_ancestors_;
    out.topic_parent_ = topic_parent_;
    for (uint32_t col : columns) {
        if (col >= dimension())
            throw DataError("restrict_to: column " + std::to_string(col) + " out of range");
        if (col < word_count()) {
            out.word_index_[words_[col]] = static_cast<uint32_t>(out.words_.size());
            out.words_.push_back(words_[col]);
            out.doc_freq_.push_back(doc_freq_[col]);
        } else {
            const std::string& topic = topics_[col - word_count()];
            out.topic_index_[topic] = static_cast<uint32_t>(out.topics_.size());
            out.topics_.push_back(topic);
        }
    }
    return out;
}

void FeatureSpace::save_json(const std::string& path) const {
    json j;
    j["format"] = "sectortag.feature_space";
    j["version"] = kFeatureSpaceFormat;
    j["weighting"] = std::string(weighting_name(weighting_));
    j["min_df"] = min_df_;
    j["n_docs"] = n_docs_;
    j["topic_ancestors"] = topic_ancestors_;
    json words = json::array();
    for (size_t i = 0; i < words_.size(); ++i)
        words.push_back(json::array({words_[i], doc_freq_[i]}));
    j["words"] = std::move(words);
    j["topics"] = topics_;
    j["topic_parent"] = topic_parent_;

    std::ofstream out(path);
    if (!out) throw DataError("cannot write feature-space file: " + path);
    out << j.dump() << "\n";
}

FeatureSpace FeatureSpace::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open feature-space file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("malformed feature-space file " + path + ": " + e.what());
    }
    if (j.value("format", "") != "sectortag.feature_space")
        throw DataError("not a feature-space file: " + path);
    if (j.value("version", -1) != kFeatureSpaceFormat)
        throw DataError("unsupported feature-space format version in " + path);

    FeatureSpace space;
    auto w = weighting_from_name(j.value("weighting", ""));
    if (!w) throw DataError("unknown weighting in feature-space file: " + path);
    space.weighting_ = *w;
    space.min_df_ = j.value("min_df", size_t{1});
    space.n_docs_ = j.value("n_docs", size_t{0});
    space.topic_ancestors_ = j.value("topic_ancestors", true);
    for (const auto& entry : j.at("words")) {
        std::string stem = entry.at(0).get<std::string>();
        space.word_index_[stem] = static_cast<uint32_t>(space.words_.size());
        space.words_.push_back(std::move(stem));
        space.doc_freq_.push_back(entry.at(1).get<uint32_t>());
    }
    for (const auto& t : j.at("topics")) {
        std::string topic = t.get<std::string>();
        space.topic_index_[topic] = static_cast<uint32_t>(space.topics_.size());
        space.topics_.push_back(std::move(topic));
    }
    if (j.contains("topic_parent"))
        for (auto it = j["topic_parent"].begin(); it != j["topic_parent"].end(); ++it)
            space.topic_parent_[it.key()] = it.value().get<std::string>();
    return space;
}

} // namespace sectortag
