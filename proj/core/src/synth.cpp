#include "sectortag/synth.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "sectortag/corpus_io.hpp"
#include "sectortag/errors.hpp"
#include "sectortag/porter.hpp"
#include "sectortag/rng.hpp"
#include "sectortag/textprep.hpp"

namespace sectortag {
namespace {

constexpr const char* kConsonants = "bcdfghjklmnprstvwz";
constexpr const char* kVowels = "aeiou";

std::string make_word(Rng& rng) {
    size_t len = 5 + rng.next_below(5);
    std::string w;
    w.reserve(len);
    for (size_t i = 0; i < len; ++i) {
        if (i % 2 == 0)
            w.push_back(kConsonants[rng.next_below(18)]);
        else
            w.push_back(kVowels[rng.next_below(5)]);
    }
    return w;
}

// Vocabulary words double as their own stems so that preprocessing leaves
// synthetic text unchanged and recovery tests can match stems directly.
std::vector<std::string> make_vocab(Rng& rng, size_t count, std::set<std::string>& used,
                                    const StopWordList& stops) {
    std::vector<std::string> vocab;
    vocab.reserve(count);
    size_t attempts = 0;
    const size_t max_attempts = 200 * count + 1000;
    while (vocab.size() < count) {
        if (++attempts > max_attempts)
            throw UsageError("requested vocabulary too large to generate distinct stems");
        std::string w = make_word(rng);
        if (stops.contains(w)) continue;
        if (porter_stem(w) != w) continue;
        if (!used.insert(w).second) continue;
        vocab.push_back(std::move(w));
    }
    return vocab;
}

const std::vector<std::string>& raw_names_for(Sector s) {
    static const std::map<Sector, std::vector<std::string>> names = {
        {Sector::financial, {"Banking & Credit", "Securities & Investment"}},
        {Sector::health, {"Healthcare", "Pharmaceuticals & BioTech"}},
        {Sector::technology, {"Technology"}},
        {Sector::property, {"Property"}},
        {Sector::energy, {"Oil & Gas", "Utility"}},
        {Sector::insurance, {"Insurance"}},
    };
    return names.at(s);
}

} // namespace

SyntheticCorpus generate_synthetic(const SynthSpec& spec) {
    if (spec.docs == 0) throw UsageError("synth: docs must be positive");
    if (spec.vocab_per_sector == 0) throw UsageError("synth: vocab_per_sector must be positive");
    if (spec.background_vocab == 0) throw UsageError("synth: background_vocab must be positive");
    if (spec.tokens_per_doc < 4) throw UsageError("synth: tokens_per_doc must be at least 4");
    auto ratio_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (!ratio_ok(spec.multi_label_fraction))
        throw UsageError("synth: multi_label_fraction must be in [0,1]");
    if (!ratio_ok(spec.label_noise)) throw UsageError("synth: label_noise must be in [0,1]");
    if (!ratio_ok(spec.signal_fraction)) throw UsageError("synth: signal_fraction must be in [0,1]");

    SyntheticCorpus out;
    out.spec = spec;
    out.merge_map = SectorMergeMap::builtin();

    Rng rng(spec.seed);
    StopWordList stops = StopWordList::builtin();

    std::set<std::string> used;
    for (Sector s : all_sectors())
        out.planted[s] = make_vocab(rng, spec.vocab_per_sector, used, stops);
    std::vector<std::string> background = make_vocab(rng, spec.background_vocab, used, stops);

    // Two-level topic taxonomy: one parent per sector with three children,
    // plus a small general branch, so topic-feature code paths see real
    // parent-child structure.
    static const char* kChildSuffix[3] = {"regulation", "market", "dispute"};
    std::map<Sector, std::vector<std::string>> sector_topics;
    for (Sector s : all_sectors()) {
        std::string parent = "topic-" + std::string(sector_name(s));
        out.taxonomy.add_topic(parent);
        for (const char* suffix : kChildSuffix) {
            std::string child = parent + "-" + suffix;
            out.taxonomy.add_topic(child);
            out.taxonomy.set_parent(child, parent);
            sector_topics[s].push_back(child);
        }
    }
    out.taxonomy.add_topic("topic-general");
    std::vector<std::string> general_topics;
    for (int i = 1; i <= 4; ++i) {
        std::string t = "topic-general-" + std::to_string(i);
        out.taxonomy.add_topic(t);
        out.taxonomy.set_parent(t, "topic-general");
        general_topics.push_back(t);
    }
    out.taxonomy.validate();

    out.articles.reserve(spec.docs);
    for (size_t d = 0; d < spec.docs; ++d) {
        Article a;
        char idbuf[32];
        std::snprintf(idbuf, sizeof(idbuf), "synth-%06zu", d);
        a.id = idbuf;

        // true sectors drive the text; labels may be perturbed below
        std::vector<Sector> true_sectors;
        Sector first = all_sectors()[rng.next_below(kSectorCount)];
        true_sectors.push_back(first);
        if (rng.next_unit() < spec.multi_label_fraction) {
            Sector second = all_sectors()[rng.next_below(kSectorCount)];
            while (second == first) second = all_sectors()[rng.next_below(kSectorCount)];
            true_sectors.push_back(second);
        }

        size_t lo = std::max<size_t>(4, spec.tokens_per_doc * 3 / 4);
        size_t hi = spec.tokens_per_doc * 5 / 4;
        size_t n_tokens = static_cast<size_t>(
            rng.next_range(static_cast<int64_t>(lo), static_cast<int64_t>(hi)));
        size_t n_signal = static_cast<size_t>(
            spec.signal_fraction * static_cast<double>(n_tokens) + 0.5);
        if (spec.signal_fraction > 0.0 && n_signal == 0) n_signal = 1;
        n_signal = std::min(n_signal, n_tokens);

        std::vector<std::string> tokens;
        tokens.reserve(n_tokens);
        for (size_t i = 0; i < n_signal; ++i) {
            Sector s = true_sectors[i % true_sectors.size()];
            const auto& vocab = out.planted.at(s);
            tokens.push_back(vocab[rng.next_below(vocab.size())]);
        }
        for (size_t i = n_signal; i < n_tokens; ++i)
            tokens.push_back(background[rng.next_below(background.size())]);
        rng.shuffle(tokens);

        // sector-correlated topic tags (1-3 per true sector), occasionally a
        // general one
        for (Sector s : true_sectors) {
            const auto& pool = sector_topics.at(s);
            size_t count = 1 + rng.next_below(3);
            std::vector<std::string> picks = pool;
            rng.shuffle(picks);
            for (size_t i = 0; i < count && i < picks.size(); ++i)
                a.topic_tags.insert(picks[i]);
        }
        if (rng.next_unit() < 0.3)
            a.topic_tags.insert(general_topics[rng.next_below(general_topics.size())]);

        // annotation noise: each true label may be recorded as a different
        // sector
        std::set<Sector> labels;
        for (Sector s : true_sectors) {
            if (rng.next_unit() < spec.label_noise) {
                size_t shift = 1 + rng.next_below(kSectorCount - 1);
                labels.insert(all_sectors()[(static_cast<size_t>(s) + shift) % kSectorCount]);
            } else {
                labels.insert(s);
            }
        }
        for (Sector s : labels) {
            const auto& names = raw_names_for(s);
            a.raw_sector_tags.insert(names[rng.next_below(names.size())]);
        }
        a.sectors = out.merge_map.derive(a.raw_sector_tags);

        std::string body;
        body.reserve(n_tokens * 8 + 64);
        for (size_t i = 0; i < tokens.size(); ++i) {
            if (i > 0) body.push_back(' ');
            body.append(tokens[i]);
            if (i % 12 == 11) body.push_back('.');
        }
        // Some documents carry markup and a trailing boilerplate section so
        // the cleaning steps are exercised end to end.
        if (rng.next_unit() < 0.3) body = "<p>" + body + " &amp; appendix</p>";
        if (rng.next_unit() < 0.25) body += " Disclaimer: synthetic fixture text, not legal advice.";

        a.title = tokens.empty() ? "untitled" : tokens[0] + " briefing";
        a.body = std::move(body);
        out.articles.push_back(std::move(a));
    }
    return out;
}

void save_synthetic(const SyntheticCorpus& synth, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    save_corpus_jsonl(synth.articles, (fs::path(out_dir) / "corpus.jsonl").string());
    synth.taxonomy.save_json_file((fs::path(out_dir) / "taxonomy.json").string());

    nlohmann::json merge;
    for (const auto& [raw, s] : synth.merge_map.entries()) merge[raw] = sector_name(s);
    std::ofstream mf(fs::path(out_dir) / "merge_map.json");
    if (!mf) throw DataError("cannot write merge_map.json under " + out_dir);
    mf << merge.dump(2) << "\n";

    nlohmann::json planted;
    for (const auto& [s, vocab] : synth.planted) planted[std::string(sector_name(s))] = vocab;
    std::ofstream pf(fs::path(out_dir) / "planted_vocabulary.json");
    if (!pf) throw DataError("cannot write planted_vocabulary.json under " + out_dir);
    pf << planted.dump(2) << "\n";
}

} // namespace sectortag
