#pragma once

#include <map>
#include <string>
#include <vector>

#include "regkit/corpus.hpp"
#include "regkit/eval.hpp"
#include "regkit/extraction.hpp"
#include "regkit/gap.hpp"
#include "regkit/graph.hpp"

namespace regkit {

/// File-level failures carry the offending path in the message.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::vector<std::string> read_lines(const std::string& path);

// Documents: JSON array of {doc_id, framework, title, provisions:[{provision_id, text}]}.
std::vector<Document> load_documents(const std::string& path);
void save_documents(const std::vector<Document>& docs, const std::string& path);

// Policies: JSON array of {clause_id, section, text, entity_tags}.
std::vector<PolicyClause> load_policies(const std::string& path);
void save_policies(const std::vector<PolicyClause>& policies, const std::string& path);

// Graph snapshot: {embedder, smoothing_mu, max_traversal_depth, nodes, edges},
// nodes and edges sorted by id so snapshots diff cleanly. Embeddings are
// recomputed on load (they are deterministic); pending flags persist.
RegulatoryGraph load_graph(const std::string& path);
void save_graph(const RegulatoryGraph& g, const std::string& path);

// Obligations: JSON lines, one record per obligation.
std::vector<Obligation> load_obligations(const std::string& path);
void save_obligations(const std::vector<Obligation>& obligations, const std::string& path);
std::string obligation_to_json(const Obligation& o);

// Gap report: deterministic JSON document; text rendering saved separately.
std::string report_to_json(const GapReport& report);
void save_report(const GapReport& report, const std::string& path);

struct ReportItem {
    std::string item_id;
    GapClass gap_class = GapClass::Compliant;
    double alignment = 0.0;
};
std::vector<ReportItem> load_report_items(const std::string& path);

// Gold labels: JSON array of {item_id, label}.
std::map<std::string, GapClass> load_labels(const std::string& path);
void save_labels(const std::map<std::string, GapClass>& labels, const std::string& path);

// Plain JSON array of numbers (anomaly streams, score vectors).
std::vector<double> load_number_array(const std::string& path);

/// Ranked candidates as JSON lines with every score component.
std::string candidates_to_jsonl(const std::vector<Candidate>& candidates);

std::string metrics_to_json(const MetricsTable& table);

}  // namespace regkit
