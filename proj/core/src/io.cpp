#include "regkit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace regkit {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

namespace {

ordered_json parse_json(const std::string& path) {
    try {
        return ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("invalid JSON in " + path + ": " + e.what());
    }
}

}  // namespace

std::vector<Document> load_documents(const std::string& path) {
    const ordered_json j = parse_json(path);
    std::vector<Document> docs;
    for (const auto& jd : j) {
        Document d;
        d.doc_id = jd.at("doc_id").get<std::string>();
        d.framework = framework_from_string(jd.value("framework", "OTHER"));
        d.title = jd.value("title", "");
        for (const auto& jp : jd.at("provisions")) {
            d.provisions.push_back(
                {jp.at("provision_id").get<std::string>(), jp.at("text").get<std::string>()});
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

void save_documents(const std::vector<Document>& docs, const std::string& path) {
    ordered_json j = ordered_json::array();
    for (const auto& d : docs) {
        ordered_json jd;
        jd["doc_id"] = d.doc_id;
        jd["framework"] = to_string(d.framework);
        jd["title"] = d.title;
        jd["provisions"] = ordered_json::array();
        for (const auto& p : d.provisions) {
            jd["provisions"].push_back({{"provision_id", p.provision_id}, {"text", p.text}});
        }
        j.push_back(std::move(jd));
    }
    write_file(path, j.dump(2) + "\n");
}

std::vector<PolicyClause> load_policies(const std::string& path) {
    const ordered_json j = parse_json(path);
    std::vector<PolicyClause> policies;
    for (const auto& jp : j) {
        PolicyClause p;
        p.clause_id = jp.at("clause_id").get<std::string>();
        p.section = jp.value("section", "");
        p.text = jp.at("text").get<std::string>();
        for (const auto& t : jp.value("entity_tags", ordered_json::array())) {
            p.entity_tags.push_back(t.get<std::string>());
        }
        policies.push_back(std::move(p));
    }
    return policies;
}

void save_policies(const std::vector<PolicyClause>& policies, const std::string& path) {
    ordered_json j = ordered_json::array();
    for (const auto& p : policies) {
        ordered_json jp;
        jp["clause_id"] = p.clause_id;
        jp["section"] = p.section;
        jp["text"] = p.text;
        jp["entity_tags"] = p.entity_tags;
        j.push_back(std::move(jp));
    }
    write_file(path, j.dump(2) + "\n");
}

RegulatoryGraph load_graph(const std::string& path) {
    const ordered_json j = parse_json(path);
    RegulatoryGraph g;
    g.max_traversal_depth = j.value("max_traversal_depth", 5);
    g.smoothing_mu = j.value("smoothing_mu", 0.25);
    if (j.contains("embedder")) {
        const auto& je = j["embedder"];
        g.embedder.dim = je.value("dim", 256);
        g.embedder.hash_seed = je.value("hash_seed", std::uint64_t{0});
        g.embedder.idf_smoothing = je.value("idf_smoothing", 1.0);
    }
    for (const auto& jn : j.at("nodes")) {
        KgNode n;
        n.node_id = jn.at("node_id").get<std::string>();
        n.kind = node_kind_from_string(jn.at("kind").get<std::string>());
        n.text = jn.value("text", "");
        n.framework = framework_from_string(jn.value("framework", "OTHER"));
        n.pending_validation = jn.value("pending_validation", false);
        if (jn.contains("attributes")) {
            for (const auto& [k, v] : jn["attributes"].items()) {
                n.attributes[k] = v.get<std::string>();
            }
        }
        g.upsert_node(std::move(n));
    }
    for (const auto& je : j.at("edges")) {
        KgEdge e;
        e.edge_id = je.value("edge_id", "");
        e.kind = edge_kind_from_string(je.at("kind").get<std::string>());
        e.source = je.at("source").get<std::string>();
        e.target = je.at("target").get<std::string>();
        e.confidence = je.value("confidence", 1.0);
        g.add_edge(std::move(e));
    }
    // Embeddings are a deterministic function of the stored texts.
    for (const auto& [id, n] : g.nodes()) g.node_mut(id).embedding = g.node_embedding(id);
    return g;
}

void save_graph(const RegulatoryGraph& g, const std::string& path) {
    ordered_json j;
    j["embedder"] = {{"dim", g.embedder.dim},
                     {"hash_seed", g.embedder.hash_seed},
                     {"idf_smoothing", g.embedder.idf_smoothing}};
    j["smoothing_mu"] = g.smoothing_mu;
    j["max_traversal_depth"] = g.max_traversal_depth;
    j["nodes"] = ordered_json::array();
    for (const auto& [id, n] : g.nodes()) {  // std::map: already sorted by id
        ordered_json jn;
        jn["node_id"] = n.node_id;
        jn["kind"] = to_string(n.kind);
        jn["text"] = n.text;
        jn["framework"] = to_string(n.framework);
        jn["pending_validation"] = n.pending_validation;
        if (!n.attributes.empty()) {
            ordered_json ja = ordered_json::object();
            for (const auto& [k, v] : n.attributes) ja[k] = v;
            jn["attributes"] = std::move(ja);
        }
        j["nodes"].push_back(std::move(jn));
    }
    std::vector<const KgEdge*> edges;
    for (const auto& e : g.edges()) edges.push_back(&e);
    std::sort(edges.begin(), edges.end(),
              [](const KgEdge* a, const KgEdge* b) { return a->edge_id < b->edge_id; });
    j["edges"] = ordered_json::array();
    for (const KgEdge* e : edges) {
        j["edges"].push_back({{"edge_id", e->edge_id},
                              {"kind", to_string(e->kind)},
                              {"source", e->source},
                              {"target", e->target},
                              {"confidence", e->confidence}});
    }
    write_file(path, j.dump(2) + "\n");
}

namespace {

ordered_json obligation_json(const Obligation& o) {
    ordered_json j;
    j["obligation_id"] = o.obligation_id;
    j["entity"] = {{"surface", o.entity_surface}, {"type", to_string(o.entity_type)}};
    j["action"] = o.action;
    j["modality"] = to_string(o.modality);
    j["condition"] = o.condition;
    j["source_provision"] = o.source_provision;
    j["crossrefs"] = ordered_json::array();
    for (const auto& r : o.crossrefs) {
        ordered_json jr;
        jr["citation"] = r.citation_text;
        if (r.target) jr["target"] = *r.target;
        else jr["target"] = nullptr;
        jr["confidence"] = r.link_confidence;
        j["crossrefs"].push_back(std::move(jr));
    }
    j["confidence"] = o.confidence;
    ordered_json types = ordered_json::array();
    for (EntityType t : o.mention_types) types.push_back(to_string(t));
    j["mention_types"] = std::move(types);
    j["sentence"] = o.sentence;
    return j;
}

Obligation obligation_from_json(const ordered_json& j) {
    Obligation o;
    o.obligation_id = j.at("obligation_id").get<std::string>();
    o.entity_surface = j.at("entity").at("surface").get<std::string>();
    o.entity_type = entity_type_from_string(j.at("entity").at("type").get<std::string>());
    o.action = j.at("action").get<std::string>();
    o.modality = modality_from_string(j.at("modality").get<std::string>());
    o.condition = j.value("condition", "");
    o.source_provision = j.at("source_provision").get<std::string>();
    for (const auto& jr : j.value("crossrefs", ordered_json::array())) {
        CrossRef r;
        r.citation_text = jr.at("citation").get<std::string>();
        if (jr.contains("target") && !jr["target"].is_null()) {
            r.target = jr["target"].get<std::string>();
        }
        r.link_confidence = jr.value("confidence", 0.0);
        o.crossrefs.push_back(std::move(r));
    }
    o.confidence = j.value("confidence", 0.0);
    for (const auto& t : j.value("mention_types", ordered_json::array())) {
        o.mention_types.push_back(entity_type_from_string(t.get<std::string>()));
    }
    o.sentence = j.value("sentence", "");
    return o;
}

}  // namespace

std::string obligation_to_json(const Obligation& o) { return obligation_json(o).dump(); }

std::vector<Obligation> load_obligations(const std::string& path) {
    std::vector<Obligation> out;
    for (const auto& line : read_lines(path)) {
        if (line.empty()) continue;
        out.push_back(obligation_from_json(ordered_json::parse(line)));
    }
    return out;
}

void save_obligations(const std::vector<Obligation>& obligations, const std::string& path) {
    std::ostringstream os;
    for (const auto& o : obligations) os << obligation_to_json(o) << "\n";
    write_file(path, os.str());
}

std::string report_to_json(const GapReport& report) {
    ordered_json j;
    ordered_json summary;
    summary["total"] = report.findings.size();
    ordered_json by_class = ordered_json::object();
    for (GapClass c : {GapClass::Compliant, GapClass::PartialGap, GapClass::FullGap}) {
        auto it = report.class_counts.find(c);
        by_class[to_string(c)] = it == report.class_counts.end() ? 0 : it->second;
    }
    summary["by_class"] = std::move(by_class);
    ordered_json by_sev = ordered_json::object();
    for (Severity s : {Severity::Critical, Severity::Major, Severity::Moderate, Severity::Minor}) {
        auto it = report.severity_counts.find(s);
        by_sev[to_string(s)] = it == report.severity_counts.end() ? 0 : it->second;
    }
    summary["by_severity"] = std::move(by_sev);
    j["summary"] = std::move(summary);

    j["findings"] = ordered_json::array();
    for (const auto& f : report.findings) {
        ordered_json jf;
        jf["item_id"] = f.obligation.obligation_id;
        jf["obligation"] = obligation_json(f.obligation);
        jf["best_clause"] = f.best_clause;
        jf["alignment"] = f.alignment;
        jf["gap_class"] = to_string(f.gap_class);
        if (f.severity) jf["severity"] = to_string(*f.severity);
        else jf["severity"] = nullptr;
        jf["description"] = f.description;
        jf["recommendation"] = f.recommendation;
        ordered_json jg;
        jg["cited_provisions"] = f.grounding.cited_provisions;
        jg["sentences"] = ordered_json::array();
        for (const auto& s : f.grounding.sentences) {
            jg["sentences"].push_back({{"text", s.sentence},
                                       {"score", s.score},
                                       {"grounded", s.grounded},
                                       {"flagged_for_review", s.flagged_for_review}});
        }
        jf["grounding"] = std::move(jg);
        jf["citations"] = f.citations;
        ordered_json jc = ordered_json::array();
        for (const auto& c : f.context) {
            jc.push_back({{"chunk_id", c.chunk_id}, {"score", c.final}});
        }
        jf["context"] = std::move(jc);
        j["findings"].push_back(std::move(jf));
    }
    return j.dump(2) + "\n";
}

void save_report(const GapReport& report, const std::string& path) {
    write_file(path, report_to_json(report));
}

std::vector<ReportItem> load_report_items(const std::string& path) {
    const ordered_json j = parse_json(path);
    std::vector<ReportItem> items;
    for (const auto& jf : j.at("findings")) {
        ReportItem item;
        item.item_id = jf.at("item_id").get<std::string>();
        item.gap_class = gap_class_from_string(jf.at("gap_class").get<std::string>());
        item.alignment = jf.value("alignment", 0.0);
        items.push_back(std::move(item));
    }
    return items;
}

std::map<std::string, GapClass> load_labels(const std::string& path) {
    const ordered_json j = parse_json(path);
    std::map<std::string, GapClass> labels;
    for (const auto& jl : j) {
        labels[jl.at("item_id").get<std::string>()] =
            gap_class_from_string(jl.at("label").get<std::string>());
    }
    return labels;
}

void save_labels(const std::map<std::string, GapClass>& labels, const std::string& path) {
    ordered_json j = ordered_json::array();
    for (const auto& [item, label] : labels) {
        j.push_back({{"item_id", item}, {"label", to_string(label)}});
    }
    write_file(path, j.dump(2) + "\n");
}

std::vector<double> load_number_array(const std::string& path) {
    const ordered_json j = parse_json(path);
    std::vector<double> out;
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

std::string candidates_to_jsonl(const std::vector<Candidate>& candidates) {
    std::ostringstream os;
    for (const auto& c : candidates) {
        ordered_json j;
        j["chunk_id"] = c.chunk_id;
        j["dense"] = c.dense;
        j["sparse_norm"] = c.sparse_norm;
        j["hybrid"] = c.hybrid;
        j["kg"] = c.kg;
        j["final"] = c.final;
        j["linked_provisions"] = c.linked_provisions;
        os << j.dump() << "\n";
    }
    return os.str();
}

std::string metrics_to_json(const MetricsTable& table) {
    ordered_json j;
    j["per_class"] = ordered_json::object();
    for (const auto& [c, m] : table.per_class) {
        j["per_class"][to_string(c)] = {{"precision", m.precision}, {"recall", m.recall},
                                        {"f1", m.f1},               {"support", m.support},
                                        {"predicted", m.predicted_count},
                                        {"zero_support", m.zero_support}};
    }
    j["macro"] = {{"precision", table.macro_precision},
                  {"recall", table.macro_recall},
                  {"f1", table.macro_f1}};
    j["accuracy"] = table.accuracy;
    j["total"] = table.total;
    return j.dump(2) + "\n";
}

}  // namespace regkit
