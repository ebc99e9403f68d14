#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sectortag/article.hpp"

namespace sectortag {

using TokenList = std::vector<std::string>;

class StopWordList {
public:
    /// The pinned ~150-word default (kept in sync with data/stopwords_en.txt).
    static StopWordList builtin();
    /// One word per line, '#' starts a comment, blank lines ignored.
    static StopWordList from_file(const std::string& path);

    void add(std::string word);
    bool contains(std::string_view word) const;
    size_t size() const { return words_.size(); }
    std::vector<std::string> sorted_words() const;

private:
    std::unordered_set<std::string> words_;
};

/// Cuts everything from the first case-insensitive occurrence of a trailing
/// section heading ("footnote", "disclaimer") to the end of the document.
std::string strip_boilerplate(std::string_view body);
std::string strip_boilerplate(std::string_view body, std::span<const std::string> headings);

/// Removes <...> tag spans (malformed tags are stripped greedily to the next
/// '>' or end of string) and &name; / &#123; / &#xAB; entities.
std::string clean_markup(std::string_view text);

/// Splits on any non-alphanumeric character, lowercases, and drops
/// pure-numeric tokens, tokens shorter than 2 characters, and stop words.
TokenList tokenize(std::string_view text, const StopWordList& stops);

/// Porter-stems every token, preserving order.
TokenList stem_tokens(const TokenList& tokens);

/// Full pipeline over title + body:
/// stem(tokenize(clean_markup(strip_boilerplate(...)))), with tokens that
/// become stop words or shorter than 2 characters after stemming dropped so
/// the output obeys the same constraints as the tokenizer's.
TokenList preprocess(const Article& article, const StopWordList& stops);

} // namespace sectortag
