// regkit: regulatory compliance analysis toolkit.
//
// Subcommands cover the full pipeline: corpus ingestion into a typed
// knowledge graph, hybrid retrieval with KG re-ranking, rule-based
// obligation extraction, compliance gap analysis, a draft-and-verify
// decoding simulator, and the evaluation harness.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "regkit/config.hpp"
#include "regkit/eval.hpp"
#include "regkit/fixture.hpp"
#include "regkit/io.hpp"
#include "regkit/pipeline.hpp"
#include "regkit/specdec.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta;
};

regkit::PipelineConfig resolve_config(const CommonOpts& opts) {
    regkit::PipelineConfig cfg =
        opts.config_path.empty() ? regkit::PipelineConfig::defaults()
                                 : regkit::load_config(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.delta) cfg.gap.delta = *opts.delta;
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Pipeline config JSON");
    cmd->add_option("--seed", opts.seed, "Override the config seed");
    cmd->add_option("--delta", opts.delta, "Override the gap threshold delta");
}

regkit::RegulatoryGraph build_graph_from_documents(const std::vector<regkit::Document>& docs,
                                                   const regkit::PipelineConfig& cfg) {
    regkit::RegulatoryGraph g;
    g.embedder = cfg.embedder;
    for (const auto& doc : docs) {
        for (const auto& prov : doc.provisions) {
            regkit::KgNode node;
            node.node_id = prov.provision_id;
            node.kind = regkit::NodeKind::Provision;
            node.text = prov.text;
            node.framework = doc.framework;
            g.upsert_node(std::move(node));
        }
    }
    g.nightly_rebuild();
    // Citation spans become CrossReferences edges when the linker accepts a
    // target; unresolved citations stay edge-free.
    for (const auto& doc : docs) {
        for (const auto& prov : doc.provisions) {
            for (const auto& sent_text : regkit::split_sentences(prov.text)) {
                const auto sent = regkit::Sentence::parse(sent_text);
                for (const auto& ref :
                     regkit::resolve_crossrefs(sent, prov.provision_id, g, cfg.extraction)) {
                    if (!ref.target || *ref.target == prov.provision_id) continue;
                    g.add_edge({"", regkit::EdgeKind::CrossReferences, prov.provision_id,
                                *ref.target, ref.link_confidence});
                }
            }
        }
    }
    return g;
}

std::vector<regkit::Chunk> chunk_all(const std::vector<regkit::Document>& docs,
                                     const regkit::PipelineConfig& cfg) {
    std::vector<regkit::Chunk> chunks;
    for (const auto& doc : docs) {
        for (auto& c : regkit::chunk_document(doc, cfg.chunking.max_tokens, cfg.chunking.overlap)) {
            chunks.push_back(std::move(c));
        }
    }
    return chunks;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) std::cout << text;
    else regkit::write_file(out_path, text);
}

int run_ingest(const std::string& docs_path, const std::string& graph_out,
               const std::string& chunks_out, const CommonOpts& opts) {
    const auto cfg = resolve_config(opts);
    const auto docs = regkit::load_documents(docs_path);
    const auto g = build_graph_from_documents(docs, cfg);
    if (!graph_out.empty()) regkit::save_graph(g, graph_out);
    if (!chunks_out.empty()) {
        std::ostringstream os;
        for (const auto& c : chunk_all(docs, cfg)) {
            ordered_json j;
            j["chunk_id"] = c.chunk_id;
            j["doc_id"] = c.doc_id;
            j["provision_id"] = c.provision_id;
            j["token_count"] = c.token_count;
            j["text"] = c.text;
            os << j.dump() << "\n";
        }
        regkit::write_file(chunks_out, os.str());
    }
    ordered_json stats;
    stats["documents"] = docs.size();
    for (const auto& [kind, count] : g.node_counts()) stats["nodes"][to_string(kind)] = count;
    for (const auto& [kind, count] : g.edge_counts()) stats["edges"][to_string(kind)] = count;
    std::cout << stats.dump(2) << "\n";
    return 0;
}

int run_kg_stats(const std::string& graph_path) {
    const auto g = regkit::load_graph(graph_path);
    ordered_json j;
    j["node_total"] = g.nodes().size();
    j["edge_total"] = g.edges().size();
    for (const auto& [kind, count] : g.node_counts()) j["nodes"][to_string(kind)] = count;
    for (const auto& [kind, count] : g.edge_counts()) j["edges"][to_string(kind)] = count;
    int pending = 0;
    for (const auto& [id, n] : g.nodes())
        if (n.pending_validation) ++pending;
    j["pending_validation"] = pending;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_kg_rebuild(const std::string& graph_path, const std::string& out_path) {
    auto g = regkit::load_graph(graph_path);
    g.nightly_rebuild();
    regkit::save_graph(g, out_path.empty() ? graph_path : out_path);
    std::cout << "rebuilt " << g.nodes().size() << " nodes\n";
    return 0;
}

int run_kg_incremental(const std::string& graph_path, const std::string& batch_path,
                       const std::string& out_path) {
    auto g = regkit::load_graph(graph_path);
    const ordered_json batch = ordered_json::parse(regkit::read_file(batch_path));
    std::vector<regkit::KgNode> nodes;
    for (const auto& jn : batch.value("nodes", ordered_json::array())) {
        regkit::KgNode n;
        n.node_id = jn.at("node_id").get<std::string>();
        n.kind = regkit::node_kind_from_string(jn.at("kind").get<std::string>());
        n.text = jn.value("text", "");
        n.framework = regkit::framework_from_string(jn.value("framework", "OTHER"));
        nodes.push_back(std::move(n));
    }
    std::vector<regkit::KgEdge> edges;
    for (const auto& je : batch.value("edges", ordered_json::array())) {
        regkit::KgEdge e;
        e.edge_id = je.value("edge_id", "");
        e.kind = regkit::edge_kind_from_string(je.at("kind").get<std::string>());
        e.source = je.at("source").get<std::string>();
        e.target = je.at("target").get<std::string>();
        e.confidence = je.value("confidence", 1.0);
        edges.push_back(std::move(e));
    }
    const auto recompute = g.incremental_ingest(nodes, edges);
    regkit::save_graph(g, out_path.empty() ? graph_path : out_path);
    ordered_json j;
    j["recomputed"] = recompute;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_kg_anomaly(const std::string& stream_path, int window) {
    const auto stream = regkit::load_number_array(stream_path);
    ordered_json j;
    j["triggers"] = regkit::detect_anomaly(stream, window);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_retrieve(const std::string& docs_path, const std::string& graph_path,
                 const std::string& query, const std::string& provision, int k,
                 const CommonOpts& opts) {
    auto cfg = resolve_config(opts);
    if (k > 0) cfg.retrieval.k = k;
    const auto docs = regkit::load_documents(docs_path);
    const auto index = regkit::build_index(chunk_all(docs, cfg), cfg.embedder);
    regkit::RetrievalConfig rc = cfg.retrieval;
    rc.k = std::max(rc.k, rc.rerank_pool);
    auto candidates = regkit::retrieve_topk(query, index, rc);
    if (!provision.empty()) {
        const auto g = graph_path.empty() ? build_graph_from_documents(docs, cfg)
                                          : regkit::load_graph(graph_path);
        candidates = regkit::kg_rerank(std::move(candidates), provision, g, cfg.retrieval);
    }
    if (static_cast<int>(candidates.size()) > cfg.retrieval.k) {
        candidates.resize(static_cast<std::size_t>(cfg.retrieval.k));
    }
    std::cout << regkit::candidates_to_jsonl(candidates);
    return 0;
}

int run_extract(const std::string& docs_path, const std::string& graph_path,
                const std::string& out_path, const CommonOpts& opts) {
    const auto cfg = resolve_config(opts);
    const auto docs = regkit::load_documents(docs_path);
    const auto g = graph_path.empty() ? build_graph_from_documents(docs, cfg)
                                      : regkit::load_graph(graph_path);
    std::ostringstream os;
    for (const auto& doc : docs) {
        for (const auto& o : regkit::extract_obligations(doc, g, cfg.extraction)) {
            os << regkit::obligation_to_json(o) << "\n";
        }
    }
    emit(os.str(), out_path);
    return 0;
}

int run_gap(const std::string& docs_path, const std::string& policies_path,
            const std::string& graph_path, const std::string& out_path,
            const std::string& text_out, bool no_kg, bool no_grounding, const CommonOpts& opts) {
    const auto cfg = resolve_config(opts);
    const auto docs = regkit::load_documents(docs_path);
    auto policies = regkit::load_policies(policies_path);
    const auto g = graph_path.empty() ? build_graph_from_documents(docs, cfg)
                                      : regkit::load_graph(graph_path);
    regkit::PipelineToggles toggles;
    toggles.kg_rerank = !no_kg;
    toggles.grounding = !no_grounding;
    std::vector<regkit::Obligation> obligations;
    for (const auto& doc : docs) {
        for (auto& o : regkit::extract_obligations(doc, g, cfg.extraction)) {
            obligations.push_back(std::move(o));
        }
    }
    const auto index = regkit::build_provision_index(g, cfg);
    regkit::embed_policies(policies, cfg.embedder);
    const auto report = regkit::run_gap_stage(obligations, index, policies, g, cfg, toggles);
    emit(regkit::report_to_json(report), out_path);
    if (!text_out.empty()) regkit::write_file(text_out, regkit::render_report_text(report));
    return 0;
}

int run_specdec(const std::string& low_path, const std::string& high_path,
                const CommonOpts& opts) {
    const auto cfg = resolve_config(opts);
    const auto low = regkit::corpus_from_lines(regkit::read_lines(low_path));
    const auto high = regkit::corpus_from_lines(regkit::read_lines(high_path));
    const auto run_one = [&](const std::vector<regkit::TokenSeq>& corpus) {
        const auto verifier =
            regkit::train_ngram(corpus, cfg.specdec.order, cfg.specdec.smoothing_k);
        const auto heads = regkit::HeadSet::train(corpus, cfg.specdec.order, cfg.specdec.heads,
                                                  cfg.specdec.smoothing_k);
        std::vector<regkit::TokenSeq> prompts;
        for (std::size_t i = 0; i < corpus.size() && static_cast<int>(prompts.size()) <
                                                         cfg.specdec.prompt_count; ++i) {
            const auto& s = corpus[i];
            prompts.emplace_back(s.begin(), s.begin() + std::min<std::size_t>(s.size(), 4));
        }
        const auto sim = regkit::simulate_decoding(verifier, heads, prompts, cfg.specdec);
        const double entropy = regkit::corpus_entropy(verifier, corpus);
        return std::make_pair(entropy, sim);
    };
    const auto [entropy_low, sim_low] = run_one(low);
    const auto [entropy_high, sim_high] = run_one(high);
    ordered_json j;
    j["entropy_low"] = entropy_low;
    j["entropy_high"] = entropy_high;
    j["acceptance_low"] = sim_low.acceptance_rate;
    j["acceptance_high"] = sim_high.acceptance_rate;
    j["speedup_low"] = sim_low.speedup;
    j["speedup_high"] = sim_high.speedup;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_eval_metrics(const std::string& gold_path, const std::string& report_path,
                     const std::string& out_path) {
    const auto gold = regkit::load_labels(gold_path);
    const auto items = regkit::load_report_items(report_path);
    std::vector<regkit::LabeledPair> pairs;
    for (const auto& item : items) {
        auto it = gold.find(item.item_id);
        if (it == gold.end()) continue;
        pairs.push_back({item.item_id, it->second, item.gap_class});
    }
    if (pairs.empty()) throw std::runtime_error("eval: no overlapping item ids");
    const auto metrics = regkit::classification_metrics(pairs);
    emit(regkit::metrics_to_json(metrics), out_path);
    std::cerr << regkit::render_metrics_text(metrics);
    return 0;
}

int run_eval_bootstrap(const std::string& a_path, const std::string& b_path, int n,
                       std::uint64_t seed) {
    const auto a = regkit::load_number_array(a_path);
    const auto b = regkit::load_number_array(b_path);
    const auto result = regkit::paired_bootstrap(a, b, n, seed);
    ordered_json j;
    j["delta_observed"] = result.delta_observed;
    j["p_value"] = result.p_value;
    j["n_resamples"] = result.n_resamples;
    j["seed"] = result.seed;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_eval_propagate(const std::string& fixture_dir, const std::string& pred_path,
                       const CommonOpts& opts) {
    const auto cfg = resolve_config(opts);
    const auto fixture = regkit::load_fixture(fixture_dir);
    std::vector<regkit::Obligation> predicted;
    if (!pred_path.empty()) {
        predicted = regkit::load_obligations(pred_path);
    } else {
        for (const auto& doc : fixture.documents) {
            for (auto& o : regkit::extract_obligations(doc, fixture.graph, cfg.extraction)) {
                predicted.push_back(std::move(o));
            }
        }
    }
    const auto report =
        regkit::error_propagation_report(fixture.gold_obligations, fixture.gold_labels, predicted,
                                         fixture.policies, fixture.graph, cfg);
    ordered_json j;
    j["gold_macro_f1"] = report.gold_input.macro_f1;
    j["predicted_macro_f1"] = report.predicted_input.macro_f1;
    j["delta_f1"] = report.delta_f1;
    j["attribution"] = {{"missing_obligation", report.missing_obligation},
                        {"wrong_span", report.wrong_span},
                        {"wrong_modality", report.wrong_modality},
                        {"unresolved_crossref", report.unresolved_crossref},
                        {"clean_matches", report.clean_matches}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_sweep(const std::string& report_path, const std::string& gold_path,
              const std::string& deltas_csv, const CommonOpts& opts) {
    const auto cfg = resolve_config(opts);
    const auto gold = regkit::load_labels(gold_path);
    const auto items = regkit::load_report_items(report_path);
    std::vector<regkit::AlignmentRecord> records;
    for (const auto& item : items) {
        auto it = gold.find(item.item_id);
        if (it == gold.end()) continue;
        records.push_back({item.item_id, item.alignment, it->second});
    }
    std::vector<double> deltas;
    std::stringstream ss(deltas_csv);
    std::string part;
    while (std::getline(ss, part, ',')) deltas.push_back(std::stod(part));
    const auto rows = regkit::threshold_sweep(records, deltas, cfg.gap);
    ordered_json j = ordered_json::array();
    for (const auto& row : rows) {
        j.push_back({{"delta", row.delta},
                     {"flagged", row.flagged},
                     {"macro_f1", row.metrics.macro_f1},
                     {"accuracy", row.metrics.accuracy}});
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_ablate(const std::string& fixture_dir, const CommonOpts& opts) {
    const auto cfg = resolve_config(opts);
    const auto fixture = regkit::load_fixture(fixture_dir);
    const auto matrix = regkit::ablation_matrix(fixture.as_ablation_fixture(), cfg);
    ordered_json j;
    j["grid"] = ordered_json::array();
    for (const auto& row : matrix.grid) {
        j["grid"].push_back({{"config", row.name}, {"macro_f1", row.metrics.macro_f1}});
    }
    j["additive"] = ordered_json::array();
    for (const auto& row : matrix.additive) {
        ordered_json r = {{"config", row.name}, {"macro_f1", row.metrics.macro_f1}};
        if (row.marginal_f1) r["marginal_f1"] = *row.marginal_f1;
        j["additive"].push_back(std::move(r));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_fixture(const std::string& out_dir, const std::string& preset, int docs, int compliant,
                int partial, int full, const CommonOpts& opts) {
    const auto cfg = resolve_config(opts);
    regkit::Fixture fixture;
    if (preset == "kg-dependent") {
        fixture = regkit::kg_dependent_fixture(cfg.seed, cfg);
    } else {
        regkit::FixtureSpec spec;
        spec.n_docs = docs;
        spec.n_compliant = compliant;
        spec.n_partial = partial;
        spec.n_full = full;
        fixture = regkit::generate_fixture(spec, cfg.seed, cfg);
    }
    regkit::save_fixture(fixture, cfg, out_dir);
    ordered_json j;
    j["documents"] = fixture.documents.size();
    j["policies"] = fixture.policies.size();
    j["obligations"] = fixture.gold_obligations.size();
    j["nodes"] = fixture.graph.nodes().size();
    j["edges"] = fixture.graph.edges().size();
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regkit: regulatory compliance analysis toolkit"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Build a knowledge graph and chunk index");
    std::string in_docs, in_graph_out, in_chunks_out;
    CommonOpts in_opts;
    ingest->add_option("--docs", in_docs, "Documents JSON")->required();
    ingest->add_option("--graph-out", in_graph_out, "Graph snapshot output path");
    ingest->add_option("--chunks-out", in_chunks_out, "Chunk listing output path (JSONL)");
    add_common(ingest, in_opts);

    // kg
    auto* kg = app.add_subcommand("kg", "Knowledge graph maintenance");
    kg->require_subcommand(1);
    auto* kg_stats = kg->add_subcommand("stats", "Node and edge counts");
    std::string kg_graph;
    kg_stats->add_option("--graph", kg_graph, "Graph snapshot")->required();
    auto* kg_rebuild = kg->add_subcommand("rebuild", "Recompute embeddings, clear pending flags");
    std::string kgr_graph, kgr_out;
    kg_rebuild->add_option("--graph", kgr_graph, "Graph snapshot")->required();
    kg_rebuild->add_option("--out", kgr_out, "Output path (defaults to --graph)");
    auto* kg_inc = kg->add_subcommand("ingest-incremental", "Apply a node/edge batch");
    std::string kgi_graph, kgi_batch, kgi_out;
    kg_inc->add_option("--graph", kgi_graph, "Graph snapshot")->required();
    kg_inc->add_option("--batch", kgi_batch, "Batch JSON {nodes, edges}")->required();
    kg_inc->add_option("--out", kgi_out, "Output path (defaults to --graph)");
    auto* kg_anom = kg->add_subcommand("anomaly-check", "Confidence-stream anomaly triggers");
    std::string kga_stream;
    int kga_window = 5;
    kg_anom->add_option("--stream", kga_stream, "JSON array of confidence values")->required();
    kg_anom->add_option("--window", kga_window, "Rolling window size");

    // retrieve
    auto* retrieve = app.add_subcommand("retrieve", "Hybrid retrieval with optional KG re-ranking");
    std::string r_docs, r_graph, r_query, r_provision;
    int r_k = 0;
    CommonOpts r_opts;
    retrieve->add_option("--docs", r_docs, "Documents JSON")->required();
    retrieve->add_option("--graph", r_graph, "Graph snapshot (built from docs when omitted)");
    retrieve->add_option("--query", r_query, "Query text")->required();
    retrieve->add_option("--provision", r_provision, "Query provision id enabling KG re-ranking");
    retrieve->add_option("--k", r_k, "Result count");
    add_common(retrieve, r_opts);

    // extract
    auto* extract = app.add_subcommand("extract", "Rule-based obligation extraction");
    std::string e_docs, e_graph, e_out;
    CommonOpts e_opts;
    extract->add_option("--docs", e_docs, "Documents JSON")->required();
    extract->add_option("--graph", e_graph, "Graph snapshot (built from docs when omitted)");
    extract->add_option("--out", e_out, "Output JSONL (stdout when omitted)");
    add_common(extract, e_opts);

    // gap
    auto* gap = app.add_subcommand("gap", "End-to-end compliance gap analysis");
    std::string g_docs, g_policies, g_graph, g_out, g_text;
    bool g_no_kg = false, g_no_grounding = false;
    CommonOpts g_opts;
    gap->add_option("--docs", g_docs, "Documents JSON")->required();
    gap->add_option("--policies", g_policies, "Policy clauses JSON")->required();
    gap->add_option("--graph", g_graph, "Graph snapshot (built from docs when omitted)");
    gap->add_option("--out", g_out, "Report JSON output (stdout when omitted)");
    gap->add_option("--text-out", g_text, "Human-readable report output");
    gap->add_flag("--no-kg", g_no_kg, "Disable KG re-ranking");
    gap->add_flag("--no-grounding", g_no_grounding, "Skip grounding verification");
    add_common(gap, g_opts);

    // specdec
    auto* specdec = app.add_subcommand("specdec", "Draft-and-verify decoding simulation");
    std::string s_low, s_high;
    CommonOpts s_opts;
    specdec->add_option("--low", s_low, "Low-entropy corpus (one sentence per line)")->required();
    specdec->add_option("--high", s_high, "High-entropy corpus")->required();
    add_common(specdec, s_opts);

    // eval
    auto* eval = app.add_subcommand("eval", "Metrics, significance and propagation");
    eval->require_subcommand(1);
    auto* ev_metrics = eval->add_subcommand("metrics", "Per-class P/R/F1 from a report");
    std::string em_gold, em_report, em_out;
    ev_metrics->add_option("--gold", em_gold, "Gold labels JSON")->required();
    ev_metrics->add_option("--report", em_report, "Gap report JSON")->required();
    ev_metrics->add_option("--out", em_out, "Metrics JSON output (stdout when omitted)");
    auto* ev_boot = eval->add_subcommand("bootstrap", "Paired bootstrap significance");
    std::string eb_a, eb_b;
    int eb_n = 10000;
    std::uint64_t eb_seed = 42;
    ev_boot->add_option("--a", eb_a, "System A per-item scores (JSON array)")->required();
    ev_boot->add_option("--b", eb_b, "System B per-item scores (JSON array)")->required();
    ev_boot->add_option("--n", eb_n, "Resample count");
    ev_boot->add_option("--bootstrap-seed", eb_seed, "Resampling seed");
    auto* ev_prop = eval->add_subcommand("propagate", "Gold vs. predicted error propagation");
    std::string ep_fixture, ep_pred;
    CommonOpts ep_opts;
    ev_prop->add_option("--fixture", ep_fixture, "Fixture directory")->required();
    ev_prop->add_option("--pred", ep_pred, "Predicted obligations JSONL (rules when omitted)");
    add_common(ev_prop, ep_opts);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Threshold sensitivity sweep");
    std::string sw_report, sw_gold, sw_deltas = "0.4,0.45,0.5,0.55,0.6,0.65,0.7";
    CommonOpts sw_opts;
    sweep->add_option("--report", sw_report, "Gap report JSON")->required();
    sweep->add_option("--gold", sw_gold, "Gold labels JSON")->required();
    sweep->add_option("--deltas", sw_deltas, "Comma-separated thresholds, ascending");
    add_common(sweep, sw_opts);

    // ablate
    auto* ablate = app.add_subcommand("ablate", "Component ablation matrix");
    std::string ab_fixture;
    CommonOpts ab_opts;
    ablate->add_option("--fixture", ab_fixture, "Fixture directory")->required();
    add_common(ablate, ab_opts);

    // fixture
    auto* fixture = app.add_subcommand("fixture", "Generate a synthetic benchmark");
    std::string fx_out, fx_preset = "standard";
    int fx_docs = 4, fx_compliant = 6, fx_partial = 4, fx_full = 2;
    CommonOpts fx_opts;
    fixture->add_option("--out", fx_out, "Output directory")->required();
    fixture->add_option("--preset", fx_preset, "standard | kg-dependent");
    fixture->add_option("--docs", fx_docs, "Document count");
    fixture->add_option("--compliant", fx_compliant, "Compliant obligations");
    fixture->add_option("--partial", fx_partial, "Partial-gap obligations");
    fixture->add_option("--full", fx_full, "Full-gap obligations");
    add_common(fixture, fx_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return 2;
    }

    try {
        if (*ingest) return run_ingest(in_docs, in_graph_out, in_chunks_out, in_opts);
        if (*kg_stats) return run_kg_stats(kg_graph);
        if (*kg_rebuild) return run_kg_rebuild(kgr_graph, kgr_out);
        if (*kg_inc) return run_kg_incremental(kgi_graph, kgi_batch, kgi_out);
        if (*kg_anom) return run_kg_anomaly(kga_stream, kga_window);
        if (*retrieve) return run_retrieve(r_docs, r_graph, r_query, r_provision, r_k, r_opts);
        if (*extract) return run_extract(e_docs, e_graph, e_out, e_opts);
        if (*gap)
            return run_gap(g_docs, g_policies, g_graph, g_out, g_text, g_no_kg, g_no_grounding,
                           g_opts);
        if (*specdec) return run_specdec(s_low, s_high, s_opts);
        if (*ev_metrics) return run_eval_metrics(em_gold, em_report, em_out);
        if (*ev_boot) return run_eval_bootstrap(eb_a, eb_b, eb_n, eb_seed);
        if (*ev_prop) return run_eval_propagate(ep_fixture, ep_pred, ep_opts);
        if (*sweep) return run_sweep(sw_report, sw_gold, sw_deltas, sw_opts);
        if (*ablate) return run_ablate(ab_fixture, ab_opts);
        if (*fixture)
            return run_fixture(fx_out, fx_preset, fx_docs, fx_compliant, fx_partial, fx_full,
                               fx_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help() << "\n";
    return 2;
}
