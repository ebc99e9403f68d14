#include "sectortag/textprep.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "sectortag/errors.hpp"
#include "sectortag/porter.hpp"

namespace sectortag {
namespace {

// ASCII-only helpers; tokenization is deliberately locale-free.
inline bool is_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline char to_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

const char* const kDefaultStopWords[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "among",
    "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "cannot", "could", "did",
    "do", "does", "doing", "down", "during", "each", "few", "for", "from", "further",
    "had", "has", "have", "having", "he", "her", "here", "hereby", "herein", "hers",
    "herself", "him", "himself", "his", "how", "however", "i", "if", "in", "into",
    "is", "it", "its", "itself", "just", "may", "me", "more", "most", "must",
    "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once",
    "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "per",
    "same", "shall", "she", "should", "so", "some", "such", "than", "that", "the",
    "their", "theirs", "them", "themselves", "then", "there", "therefore", "thereof", "these", "they",
    "this", "those", "through", "to", "too", "under", "until", "up", "upon", "very",
    "via", "was", "we", "were", "what", "when", "where", "whereas", "which", "while",
    "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
    "yourselves",
};

const std::array<std::string, 2> kDefaultHeadings = {"footnote", "disclaimer"};

} // namespace

StopWordList StopWordList::builtin() {
    StopWordList s;
    for (const char* w : kDefaultStopWords) s.add(w);
    return s;
}

StopWordList StopWordList::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stop-word file: " + path);
    StopWordList s;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string word;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) word.push_back(to_lower(c));
        if (!word.empty()) s.add(std::move(word));
    }
    if (s.size() == 0) throw DataError("stop-word file is empty: " + path);
    return s;
}

void StopWordList::add(std::string word) { words_.insert(std::move(word)); }

bool StopWordList::contains(std::string_view word) const {
    return words_.count(std::string(word)) > 0;
}

std::vector<std::string> StopWordList::sorted_words() const {
    std::vector<std::string> out(words_.begin(), words_.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::string strip_boilerplate(std::string_view body) {
    return strip_boilerplate(body, kDefaultHeadings);
}

std::string strip_boilerplate(std::string_view body, std::span<const std::string> headings) {
    std::string lower;
    lower.reserve(body.size());
    for (char c : body) lower.push_back(to_lower(c));

    size_t cut = std::string::npos;
    for (const auto& heading : headings) {
        auto pos = lower.find(heading);
        if (pos != std::string::npos && pos < cut) cut = pos;
    }
    if (cut == std::string::npos) return std::string(body);
    return std::string(body.substr(0, cut));
}

std::string clean_markup(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (c == '<') {
            auto close = text.find('>', i + 1);
            i = (close == std::string_view::npos) ? n : close + 1;
            continue;
        }
        if (c == '&') {
            // &name; | &#123; | &#xAB;  -- removed, not decoded
            size_t j = i + 1;
            bool numeric = j < n && text[j] == '#';
            if (numeric) ++j;
            bool hex = numeric && j < n && (text[j] == 'x' || text[j] == 'X');
            if (hex) ++j;
            size_t body_start = j;
            while (j < n && (numeric ? (hex ? std::isxdigit(static_cast<unsigned char>(text[j]))
                                            : is_digit(text[j]))
                                     : is_alnum(text[j])))
                ++j;
            if (j > body_start && j < n && text[j] == ';' &&
                (numeric || !is_digit(text[i + 1]))) {
                i = j + 1;
                continue;
            }
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

TokenList tokenize(std::string_view text, const StopWordList& stops) {
    TokenList tokens;
    std::string cur;
    bool cur_nonnumeric = false;

    auto flush = [&] {
        if (cur.size() >= 2 && cur_nonnumeric && !stops.contains(cur))
            tokens.push_back(cur);
        cur.clear();
        cur_nonnumeric = false;
    };

    for (char raw : text) {
        if (is_alnum(raw)) {
            char c = to_lower(raw);
            cur.push_back(c);
            if (!is_digit(c)) cur_nonnumeric = true;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

TokenList stem_tokens(const TokenList& tokens) {
    TokenList out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(porter_stem(t));
    return out;
}

TokenList preprocess(const Article& article, const StopWordList& stops) {
    std::string text;
    text.reserve(article.title.size() + article.body.size() + 1);
    text.append(article.title);
    text.push_back(' ');
    text.append(article.body);

    TokenList stemmed = stem_tokens(tokenize(clean_markup(strip_boilerplate(text)), stops));
    TokenList out;
    out.reserve(stemmed.size());
    for (auto& t : stemmed)
        if (t.size() >= 2 && !stops.contains(t)) out.push_back(std::move(t));
    return out;
}

} // namespace sectortag
