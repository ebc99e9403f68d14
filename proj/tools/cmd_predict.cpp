#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "sectortag/errors.hpp"
#include "sectortag/model_io.hpp"
#include "sectortag/selection.hpp"
#include "sectortag/textprep.hpp"

namespace sectortag::cli {

using nlohmann::json;

int cmd_predict(const GlobalOpts& g, const PredictOpts& o) {
    SavedModel model = load_model_json(o.model);
    FeatureSpace space = FeatureSpace::load_json(o.features);
    if (!o.selected.empty()) {
        std::set<uint32_t> cols = load_selected_columns(o.selected, space);
        space = space.restrict_to(cols);
    }
    if (space.dimension() != model.feature_dimension())
        throw DataError("feature space dimension (" + std::to_string(space.dimension()) +
                        ") does not match the model (" +
                        std::to_string(model.feature_dimension()) + ")");

    double grey_lo = 0.4, grey_hi = 0.6;
    {
        auto comma = o.grey.find(',');
        if (comma == std::string::npos)
            throw UsageError("--grey expects two comma-separated bounds, e.g. 0.4,0.6");
        try {
            grey_lo = std::stod(o.grey.substr(0, comma));
            grey_hi = std::stod(o.grey.substr(comma + 1));
        } catch (const std::exception&) {
            throw UsageError("--grey expects numeric bounds, e.g. 0.4,0.6");
        }
        if (grey_lo < 0.0 || grey_hi > 1.0 || grey_lo > grey_hi)
            throw UsageError("--grey must be an interval within [0,1]");
    }
    if (o.threshold <= 0.0 || o.threshold >= 1.0)
        throw UsageError("--threshold must be in (0,1)");

    StopWordList stops = o.stopwords.empty() ? StopWordList::builtin()
                                             : StopWordList::from_file(o.stopwords);

    std::ifstream in(o.input);
    if (!in) throw DataError("cannot open input file: " + o.input);
    std::ofstream out_file;
    std::ostream* out = &std::cout;
    if (!o.out.empty()) {
        out_file.open(o.out);
        if (!out_file) throw DataError("cannot write output file: " + o.out);
        out = &out_file;
    }

    // input records are parsed leniently: unseen topic tags simply activate
    // no columns, which is the right behaviour at inference time
    std::string line;
    size_t line_no = 0, scored = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError(o.input + ":" + std::to_string(line_no) +
                            ": malformed record: " + e.what());
        }
        Article a;
        a.id = j.value("id", "line-" + std::to_string(line_no));
        a.title = j.value("title", "");
        a.body = j.value("body", "");
        if (j.contains("topics"))
            for (const auto& t : j["topics"]) a.topic_tags.insert(t.get<std::string>());

        TokenList tokens = preprocess(a, stops);
        double score = predict_score(model, vectorize(a, tokens, space));

        json rec;
        rec["id"] = a.id;
        rec["sector"] = model.sector;
        rec["score"] = score;
        rec["decision"] = score >= o.threshold;
        rec["grey_zone"] = score >= grey_lo && score <= grey_hi;
        (*out) << rec.dump() << "\n";
        ++scored;
    }
    log_info(g, "scored " + std::to_string(scored) + " articles");
    return kExitOk;
}

} // namespace sectortag::cli
