#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sectortag/article.hpp"
#include "sectortag/taxonomy.hpp"
#include "sectortag/textprep.hpp"

namespace sectortag {

enum class Weighting { one_hot, tf_idf };

std::string_view weighting_name(Weighting w);
std::optional<Weighting> weighting_from_name(std::string_view name);

/// Sparse feature vector: strictly increasing column indices, weights > 0.
struct FeatureVector {
    std::vector<std::pair<uint32_t, double>> entries;

    size_t size() const { return entries.size(); }
    void push(uint32_t col, double w) { entries.emplace_back(col, w); }
};

/// Frozen mapping from word stems and topic tags to column indices, with the
/// training document frequencies needed for tf-idf. Word columns come first
/// (lexicographic), then topic columns (lexicographic). Immutable once built.
class FeatureSpace {
public:
    uint32_t dimension() const { return static_cast<uint32_t>(words_.size() + topics_.size()); }
    uint32_t word_count() const { return static_cast<uint32_t>(words_.size()); }
    uint32_t topic_count() const { return static_cast<uint32_t>(topics_.size()); }

    std::optional<uint32_t> word_column(const std::string& stem) const;
    std::optional<uint32_t> topic_column(const std::string& tag) const;
    const std::string& column_name(uint32_t col) const;
    bool is_topic_column(uint32_t col) const { return col >= word_count(); }

    size_t doc_freq(const std::string& stem) const;
    size_t n_docs() const { return n_docs_; }
    size_t min_df() const { return min_df_; }
    Weighting weighting() const { return weighting_; }
    bool topic_ancestors() const { return topic_ancestors_; }
    const std::map<std::string, std::string>& topic_parents() const { return topic_parent_; }

    /// Smoothed inverse document frequency: ln((1+N)/(1+df)) + 1.
    double idf(uint32_t word_col) const;

    /// New space containing only the given columns (document frequencies and
    /// n_docs preserved), reindexed contiguously in the original order.
    FeatureSpace restrict_to(const std::set<uint32_t>& columns) const;

    void save_json(const std::string& path) const;
    static FeatureSpace load_json(const std::string& path);

    friend FeatureSpace build_feature_space(const Corpus&, const std::vector<TokenList>&,
                                            const TopicTaxonomy&, Weighting, size_t, bool);

private:
    std::vector<std::string> words_;       // lexicographic
    std::vector<uint32_t> doc_freq_;       // parallel to words_
    std::map<std::string, uint32_t> word_index_;
    std::vector<std::string> topics_;      // lexicographic
    std::map<std::string, uint32_t> topic_index_;
    std::map<std::string, std::string> topic_parent_;
    size_t n_docs_ = 0;
    size_t min_df_ = 1;
    Weighting weighting_ = Weighting::tf_idf;
    bool topic_ancestors_ = true;
};

/// Builds the space from training-fold tokens only: word features are all
/// stems with document frequency >= min_df; topic features are all taxonomy
/// topics. Throws DataError on an empty training corpus.
FeatureSpace build_feature_space(const Corpus& train, const std::vector<TokenList>& tokens,
                                 const TopicTaxonomy& taxonomy, Weighting weighting,
                                 size_t min_df, bool topic_ancestors = true);

/// Vectorizes one article against a frozen space. Stems absent from the
/// space are ignored. In tf_idf mode the word sub-vector is L2-normalized;
/// topic columns always carry weight exactly 1, and tagging a topic also
/// activates its ancestors when the space was built with that option.
FeatureVector vectorize(const Article& article, const TokenList& tokens,
                        const FeatureSpace& space);

} // namespace sectortag
