#include "regkit/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "regkit/io.hpp"

namespace regkit {

using ordered_json = nlohmann::ordered_json;

std::string serialize_config(const PipelineConfig& cfg) {
    ordered_json j;
    j["seed"] = cfg.seed;
    j["embedder"] = {{"dim", cfg.embedder.dim},
                     {"hash_seed", cfg.embedder.hash_seed},
                     {"idf_smoothing", cfg.embedder.idf_smoothing}};
    j["chunking"] = {{"max_tokens", cfg.chunking.max_tokens}, {"overlap", cfg.chunking.overlap}};
    j["retrieval"] = {{"alpha", cfg.retrieval.alpha},     {"beta", cfg.retrieval.beta},
                      {"k", cfg.retrieval.k},             {"bm25_k1", cfg.retrieval.bm25_k1},
                      {"bm25_b", cfg.retrieval.bm25_b},   {"rerank_pool", cfg.retrieval.rerank_pool}};
    ordered_json je;
    je["lambda1"] = cfg.extraction.lambda1;
    je["lambda2"] = cfg.extraction.lambda2;
    je["lambda3"] = cfg.extraction.lambda3;
    je["link_threshold"] = cfg.extraction.link_threshold;
    ordered_json lex = ordered_json::object();
    for (const auto& [etype, phrases] : cfg.extraction.lexicons) {
        lex[to_string(etype)] = phrases;
    }
    je["lexicons"] = std::move(lex);
    je["penalty_context"] = cfg.extraction.penalty_context;
    j["extraction"] = std::move(je);
    ordered_json jg;
    jg["delta"] = cfg.gap.delta;
    jg["delta_deploy"] = cfg.gap.delta_deploy;
    jg["delta_full"] = cfg.gap.delta_full;
    jg["tau"] = cfg.gap.tau;
    jg["type_floor"] = cfg.gap.type_floor;
    jg["context_top"] = cfg.gap.context_top;
    jg["context_floor_ratio"] = cfg.gap.context_floor_ratio;
    ordered_json syn = ordered_json::array();
    for (const auto& s : cfg.gap.synonym_map) {
        syn.push_back({s.term_a, s.term_b, s.score});
    }
    jg["synonyms"] = std::move(syn);
    j["gap"] = std::move(jg);
    j["specdec"] = {{"heads", cfg.specdec.heads},
                    {"step_overhead", cfg.specdec.step_overhead},
                    {"base_token_cost", cfg.specdec.base_token_cost},
                    {"prompt_count", cfg.specdec.prompt_count},
                    {"gen_length", cfg.specdec.gen_length},
                    {"order", cfg.specdec.order},
                    {"smoothing_k", cfg.specdec.smoothing_k}};
    return j.dump(2) + "\n";
}

PipelineConfig parse_config(const std::string& json_text) {
    const ordered_json j = ordered_json::parse(json_text);
    PipelineConfig cfg;
    cfg.seed = j.value("seed", std::uint64_t{42});
    if (j.contains("embedder")) {
        const auto& je = j["embedder"];
        cfg.embedder.dim = je.value("dim", cfg.embedder.dim);
        cfg.embedder.hash_seed = je.value("hash_seed", cfg.embedder.hash_seed);
        cfg.embedder.idf_smoothing = je.value("idf_smoothing", cfg.embedder.idf_smoothing);
    }
    if (j.contains("chunking")) {
        const auto& jc = j["chunking"];
        cfg.chunking.max_tokens = jc.value("max_tokens", cfg.chunking.max_tokens);
        cfg.chunking.overlap = jc.value("overlap", cfg.chunking.overlap);
    }
    if (j.contains("retrieval")) {
        const auto& jr = j["retrieval"];
        cfg.retrieval.alpha = jr.value("alpha", cfg.retrieval.alpha);
        cfg.retrieval.beta = jr.value("beta", cfg.retrieval.beta);
        cfg.retrieval.k = jr.value("k", cfg.retrieval.k);
        cfg.retrieval.bm25_k1 = jr.value("bm25_k1", cfg.retrieval.bm25_k1);
        cfg.retrieval.bm25_b = jr.value("bm25_b", cfg.retrieval.bm25_b);
        cfg.retrieval.rerank_pool = jr.value("rerank_pool", cfg.retrieval.rerank_pool);
    }
    if (j.contains("extraction")) {
        const auto& je = j["extraction"];
        cfg.extraction.lambda1 = je.value("lambda1", cfg.extraction.lambda1);
        cfg.extraction.lambda2 = je.value("lambda2", cfg.extraction.lambda2);
        cfg.extraction.lambda3 = je.value("lambda3", cfg.extraction.lambda3);
        cfg.extraction.link_threshold = je.value("link_threshold", cfg.extraction.link_threshold);
        if (je.contains("lexicons")) {
            cfg.extraction.lexicons.clear();
            for (const auto& [name, phrases] : je["lexicons"].items()) {
                std::vector<std::string> list;
                for (const auto& p : phrases) list.push_back(p.get<std::string>());
                cfg.extraction.lexicons[entity_type_from_string(name)] = std::move(list);
            }
        }
        if (je.contains("penalty_context")) {
            cfg.extraction.penalty_context.clear();
            for (const auto& w : je["penalty_context"]) {
                cfg.extraction.penalty_context.push_back(w.get<std::string>());
            }
        }
    }
    if (j.contains("gap")) {
        const auto& jg = j["gap"];
        cfg.gap.delta = jg.value("delta", cfg.gap.delta);
        cfg.gap.delta_deploy = jg.value("delta_deploy", cfg.gap.delta_deploy);
        cfg.gap.delta_full = jg.value("delta_full", cfg.gap.delta_full);
        cfg.gap.tau = jg.value("tau", cfg.gap.tau);
        cfg.gap.type_floor = jg.value("type_floor", cfg.gap.type_floor);
        cfg.gap.context_top = jg.value("context_top", cfg.gap.context_top);
        cfg.gap.context_floor_ratio = jg.value("context_floor_ratio", cfg.gap.context_floor_ratio);
        if (jg.contains("synonyms")) {
            cfg.gap.synonym_map.clear();
            for (const auto& s : jg["synonyms"]) {
                cfg.gap.synonym_map.push_back(
                    {s.at(0).get<std::string>(), s.at(1).get<std::string>(), s.at(2).get<double>()});
            }
        }
    }
    if (j.contains("specdec")) {
        const auto& js = j["specdec"];
        cfg.specdec.heads = js.value("heads", cfg.specdec.heads);
        cfg.specdec.step_overhead = js.value("step_overhead", cfg.specdec.step_overhead);
        cfg.specdec.base_token_cost = js.value("base_token_cost", cfg.specdec.base_token_cost);
        cfg.specdec.prompt_count = js.value("prompt_count", cfg.specdec.prompt_count);
        cfg.specdec.gen_length = js.value("gen_length", cfg.specdec.gen_length);
        cfg.specdec.order = js.value("order", cfg.specdec.order);
        cfg.specdec.smoothing_k = js.value("smoothing_k", cfg.specdec.smoothing_k);
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

void save_config(const PipelineConfig& cfg, const std::string& path) {
    write_file(path, serialize_config(cfg));
}

}  // namespace regkit
