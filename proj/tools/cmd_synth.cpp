#include "commands.hpp"
#include "sectortag/synth.hpp"

namespace sectortag::cli {

int cmd_synth(const GlobalOpts& g, const SynthOpts& o) {
    SynthSpec spec;
    spec.docs = o.docs;
    spec.vocab_per_sector = o.vocab_per_sector;
    spec.background_vocab = o.background_vocab;
    spec.multi_label_fraction = o.multi_label_fraction;
    spec.label_noise = o.label_noise;
    spec.signal_fraction = o.signal_fraction;
    spec.tokens_per_doc = o.tokens_per_doc;
    spec.seed = o.seed;

    SyntheticCorpus synth = generate_synthetic(spec);
    save_synthetic(synth, o.out_dir);
    log_info(g, "wrote " + std::to_string(synth.articles.size()) +
                    " synthetic articles to " + o.out_dir);
    return kExitOk;
}

} // namespace sectortag::cli
