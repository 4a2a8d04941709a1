#include "regkit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <unordered_map>

namespace regkit {

std::string to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Provision: return "Provision";
        case NodeKind::Entity: return "Entity";
        case NodeKind::Obligation: return "Obligation";
        case NodeKind::Threshold: return "Threshold";
        case NodeKind::Enforcement: return "Enforcement";
    }
    return "Provision";
}

std::string to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::Amends: return "Amends";
        case EdgeKind::Supersedes: return "Supersedes";
        case EdgeKind::CrossReferences: return "CrossReferences";
        case EdgeKind::Implements: return "Implements";
        case EdgeKind::AppliesTo: return "AppliesTo";
    }
    return "CrossReferences";
}

NodeKind node_kind_from_string(std::string_view s) {
    if (s == "Provision") return NodeKind::Provision;
    if (s == "Entity") return NodeKind::Entity;
    if (s == "Obligation") return NodeKind::Obligation;
    if (s == "Threshold") return NodeKind::Threshold;
    if (s == "Enforcement") return NodeKind::Enforcement;
    throw SchemaError("unknown node kind: " + std::string(s));
}

EdgeKind edge_kind_from_string(std::string_view s) {
    if (s == "Amends") return EdgeKind::Amends;
    if (s == "Supersedes") return EdgeKind::Supersedes;
    if (s == "CrossReferences") return EdgeKind::CrossReferences;
    if (s == "Implements") return EdgeKind::Implements;
    if (s == "AppliesTo") return EdgeKind::AppliesTo;
    throw SchemaError("unknown edge kind: " + std::string(s));
}

namespace {

struct EndpointSchema {
    std::vector<NodeKind> sources;
    NodeKind target;
};

// CrossReferences additionally admits Enforcement and Threshold sources:
// enforcement actions and threshold definitions cite the provision they
// concern, which is the only way those node kinds attach to the graph.
EndpointSchema schema_for(EdgeKind k) {
    switch (k) {
        case EdgeKind::Amends:
        case EdgeKind::Supersedes:
            return {{NodeKind::Provision}, NodeKind::Provision};
        case EdgeKind::CrossReferences:
            return {{NodeKind::Provision, NodeKind::Enforcement, NodeKind::Threshold},
                    NodeKind::Provision};
        case EdgeKind::Implements:
            return {{NodeKind::Provision}, NodeKind::Obligation};
        case EdgeKind::AppliesTo:
            return {{NodeKind::Obligation}, NodeKind::Entity};
    }
    return {{NodeKind::Provision}, NodeKind::Provision};
}

}  // namespace

const KgNode& RegulatoryGraph::node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNodeError("unknown node id: " + id);
    return it->second;
}

KgNode& RegulatoryGraph::node_mut(const std::string& id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNodeError("unknown node id: " + id);
    return it->second;
}

void RegulatoryGraph::upsert_node(KgNode node) {
    if (node.node_id.empty()) throw SchemaError("node_id must be nonempty");
    nodes_[node.node_id] = std::move(node);
}

void RegulatoryGraph::check_edge(const KgEdge& edge,
                                 const std::map<std::string, NodeKind>* extra) const {
    auto kind_of = [&](const std::string& id) -> const NodeKind* {
        auto it = nodes_.find(id);
        if (it != nodes_.end()) return &it->second.kind;
        if (extra) {
            auto jt = extra->find(id);
            if (jt != extra->end()) return &jt->second;
        }
        return nullptr;
    };
    const NodeKind* src = kind_of(edge.source);
    const NodeKind* tgt = kind_of(edge.target);
    if (!src || !tgt) {
        throw SchemaError("dangling edge endpoint: " + edge.source + " -> " + edge.target);
    }
    const EndpointSchema want = schema_for(edge.kind);
    const bool src_ok =
        std::find(want.sources.begin(), want.sources.end(), *src) != want.sources.end();
    if (!src_ok || *tgt != want.target) {
        throw SchemaError("edge kind " + to_string(edge.kind) + " rejects endpoints " +
                          to_string(*src) + " -> " + to_string(*tgt));
    }
    if (edge.confidence < 0.0 || edge.confidence > 1.0) {
        throw SchemaError("edge confidence must be in [0,1]");
    }
}

void RegulatoryGraph::link(const std::string& a, const std::string& b) {
    adjacency_[a].insert(b);
    adjacency_[b].insert(a);
}

void RegulatoryGraph::add_edge(KgEdge edge) {
    check_edge(edge, nullptr);
    if (edge.edge_id.empty()) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "e%06d", next_edge_seq_++);
        edge.edge_id = buf;
    }
    link(edge.source, edge.target);
    edges_.push_back(std::move(edge));
}

std::vector<std::string> RegulatoryGraph::neighbors(const std::string& id) const {
    std::vector<std::string> out;
    auto it = adjacency_.find(id);
    if (it == adjacency_.end()) return out;
    for (const auto& n : it->second)
        if (n != id) out.push_back(n);
    return out;
}

std::optional<int> RegulatoryGraph::graph_distance(const std::string& a, const std::string& b,
                                                   int max_depth) const {
    if (!contains(a)) throw UnknownNodeError("unknown node id: " + a);
    if (!contains(b)) throw UnknownNodeError("unknown node id: " + b);
    if (a == b) return 0;
    if (max_depth <= 0) return std::nullopt;
    std::unordered_map<std::string, int> dist;
    std::deque<std::string> queue;
    dist[a] = 0;
    queue.push_back(a);
    while (!queue.empty()) {
        std::string cur = std::move(queue.front());
        queue.pop_front();
        int d = dist[cur];
        if (d >= max_depth) continue;
        auto it = adjacency_.find(cur);
        if (it == adjacency_.end()) continue;
        for (const auto& next : it->second) {
            if (dist.count(next)) continue;
            if (next == b) return d + 1;
            dist[next] = d + 1;
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

double RegulatoryGraph::kg_proximity(const std::string& query_provision,
                                     const std::set<std::string>& passage_provisions) const {
    if (!contains(query_provision)) {
        throw UnknownNodeError("unknown query provision: " + query_provision);
    }
    if (passage_provisions.empty()) return 0.0;
    // Single BFS from the query, capped at max_traversal_depth.
    std::unordered_map<std::string, int> dist;
    std::deque<std::string> queue;
    dist[query_provision] = 0;
    queue.push_back(query_provision);
    int best = -1;
    auto consider = [&](const std::string& id, int d) {
        if (passage_provisions.count(id) && (best < 0 || d < best)) best = d;
    };
    consider(query_provision, 0);
    while (!queue.empty() && best != 0) {
        std::string cur = std::move(queue.front());
        queue.pop_front();
        int d = dist[cur];
        if (d >= max_traversal_depth) continue;
        auto it = adjacency_.find(cur);
        if (it == adjacency_.end()) continue;
        for (const auto& next : it->second) {
            if (dist.count(next)) continue;
            dist[next] = d + 1;
            consider(next, d + 1);
            queue.push_back(next);
        }
    }
    if (best < 0) return 0.0;
    return 1.0 / (1.0 + static_cast<double>(best));
}

Embedding RegulatoryGraph::node_embedding(const std::string& id) const {
    const KgNode& n = node(id);
    Embedding own = embed_text(n.text, embedder);
    const auto nbrs = neighbors(id);  // sorted: canonical summation order
    if (nbrs.empty() || smoothing_mu == 0.0) {
        return own;  // embed_text output is already normalized
    }
    std::vector<double> acc(own.values.size(), 0.0);
    for (const auto& nbr : nbrs) {
        Embedding e = embed_text(node(nbr).text, embedder);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += e.values[i];
    }
    const double scale = smoothing_mu / static_cast<double>(nbrs.size());
    std::vector<double> mixed(own.values.size());
    for (std::size_t i = 0; i < mixed.size(); ++i) {
        mixed[i] = own.values[i] + scale * acc[i];
    }
    Embedding out = Embedding::of(std::move(mixed));
    if (out.norm > 0.0) {
        for (double& x : out.values) x /= out.norm;
        out.norm = 1.0;
    }
    return out;
}

std::vector<std::string> RegulatoryGraph::ball(const std::vector<std::string>& seeds,
                                               int hops) const {
    std::set<std::string> seen;
    std::deque<std::pair<std::string, int>> queue;
    for (const auto& s : seeds) {
        if (!contains(s) || seen.count(s)) continue;
        seen.insert(s);
        queue.emplace_back(s, 0);
    }
    while (!queue.empty()) {
        auto [cur, d] = queue.front();
        queue.pop_front();
        if (d >= hops) continue;
        auto it = adjacency_.find(cur);
        if (it == adjacency_.end()) continue;
        for (const auto& next : it->second) {
            if (seen.count(next)) continue;
            seen.insert(next);
            queue.emplace_back(next, d + 1);
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<std::string> RegulatoryGraph::incremental_ingest(
    const std::vector<KgNode>& new_nodes, const std::vector<KgEdge>& new_edges) {
    // Validate the whole batch before mutating anything.
    std::map<std::string, NodeKind> incoming;
    for (const auto& n : new_nodes) {
        if (n.node_id.empty()) throw SchemaError("node_id must be nonempty");
        incoming[n.node_id] = n.kind;
    }
    for (const auto& e : new_edges) check_edge(e, &incoming);

    std::vector<std::string> touched;
    for (const auto& n : new_nodes) {
        KgNode copy = n;
        copy.pending_validation = true;
        touched.push_back(copy.node_id);
        nodes_[copy.node_id] = std::move(copy);
    }
    for (const auto& e : new_edges) {
        touched.push_back(e.source);
        touched.push_back(e.target);
        add_edge(e);
    }

    std::vector<std::string> recompute = ball(touched, 2);
    for (const auto& id : recompute) {
        nodes_.at(id).embedding = node_embedding(id);
    }
    return recompute;
}

void RegulatoryGraph::nightly_rebuild() {
    for (auto& [id, n] : nodes_) {
        n.embedding = node_embedding(id);
        n.pending_validation = false;
    }
}

void RegulatoryGraph::nightly_rebuild(const EmbedderConfig& cfg) {
    embedder = cfg;
    nightly_rebuild();
}

std::map<NodeKind, int> RegulatoryGraph::node_counts() const {
    std::map<NodeKind, int> counts;
    for (const auto& [id, n] : nodes_) counts[n.kind]++;
    return counts;
}

std::map<EdgeKind, int> RegulatoryGraph::edge_counts() const {
    std::map<EdgeKind, int> counts;
    for (const auto& e : edges_) counts[e.kind]++;
    return counts;
}

std::vector<int> detect_anomaly(const std::vector<double>& confidence_stream, int window) {
    if (window < 2) throw std::invalid_argument("detect_anomaly: window must be >= 2");
    std::vector<int> triggers;
    const int n = static_cast<int>(confidence_stream.size());
    for (int i = window; i < n; ++i) {
        double sum = 0.0;
        for (int j = i - window; j < i; ++j) sum += confidence_stream[j];
        const double mean = sum / window;
        double sq = 0.0;
        for (int j = i - window; j < i; ++j) {
            const double d = confidence_stream[j] - mean;
            sq += d * d;
        }
        const double sd = std::sqrt(sq / window);
        if (confidence_stream[i] < mean - 2.0 * sd) triggers.push_back(i);
    }
    return triggers;
}

}  // namespace regkit
