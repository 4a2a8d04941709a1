#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "regkit/corpus.hpp"

namespace regkit {

class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownNodeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class NodeKind { Provision, Entity, Obligation, Threshold, Enforcement };
enum class EdgeKind { Amends, Supersedes, CrossReferences, Implements, AppliesTo };

std::string to_string(NodeKind k);
std::string to_string(EdgeKind k);
NodeKind node_kind_from_string(std::string_view s);
EdgeKind edge_kind_from_string(std::string_view s);

struct KgNode {
    std::string node_id;
    NodeKind kind = NodeKind::Provision;
    std::string text;
    Framework framework = Framework::OTHER;
    std::map<std::string, std::string> attributes;  // e.g. penalty_amount, threshold value
    bool pending_validation = false;
    Embedding embedding;
};

struct KgEdge {
    std::string edge_id;
    EdgeKind kind = EdgeKind::CrossReferences;
    std::string source;
    std::string target;
    double confidence = 1.0;
};

/**
 * @brief Typed multigraph of provisions, entities, obligations, thresholds
 * and enforcement actions.
 *
 * Edge endpoints must satisfy the kind schema:
 *   Amends / Supersedes : Provision -> Provision
 *   CrossReferences     : Provision | Enforcement | Threshold -> Provision
 *   Implements          : Provision -> Obligation
 *   AppliesTo           : Obligation -> Entity
 *
 * Traversal treats every edge as bidirectional. Mutations require exclusive
 * access; queries are safe concurrently between mutations.
 */
class RegulatoryGraph {
public:
    int max_traversal_depth = 5;
    double smoothing_mu = 0.25;   // 1-hop neighbour mix-in for node embeddings
    EmbedderConfig embedder;

    /// Insert or replace a node; adjacency of other nodes is untouched.
    void upsert_node(KgNode node);

    /// Append an edge. Throws SchemaError on endpoint-schema violations or
    /// dangling endpoints. Empty edge_id is auto-assigned.
    void add_edge(KgEdge edge);

    /**
     * @brief Minimum hop count between two nodes, all edges bidirectional.
     *
     * Returns nullopt when the distance exceeds max_depth or the nodes are
     * disconnected. Throws UnknownNodeError for unknown ids.
     */
    std::optional<int> graph_distance(const std::string& a, const std::string& b,
                                      int max_depth) const;

    /**
     * @brief Proximity score 1/(1+d_min) in [0,1].
     *
     * d_min is the minimum graph distance from the query provision to any
     * passage-linked provision within max_traversal_depth; 0 when the set is
     * empty or all unreachable. Throws UnknownNodeError for an unknown query.
     */
    double kg_proximity(const std::string& query_provision,
                        const std::set<std::string>& passage_provisions) const;

    /**
     * @brief Text embedding smoothed over the 1-hop neighbourhood:
     * normalize(embed(text) + mu * mean(embed(neighbour texts))).
     */
    Embedding node_embedding(const std::string& id) const;

    /**
     * @brief Atomically insert a schema-valid batch.
     *
     * New nodes carry pending_validation = true. Embeddings are recomputed
     * for exactly the nodes within 2 hops of any inserted node or edge
     * endpoint; that neighbourhood is returned (sorted). A schema violation
     * anywhere rejects the whole batch and leaves the graph unchanged.
     */
    std::vector<std::string> incremental_ingest(const std::vector<KgNode>& new_nodes,
                                                const std::vector<KgEdge>& new_edges);

    /// Recompute every embedding from scratch and clear all pending flags.
    void nightly_rebuild();
    void nightly_rebuild(const EmbedderConfig& cfg);

    const std::map<std::string, KgNode>& nodes() const { return nodes_; }
    const std::vector<KgEdge>& edges() const { return edges_; }
    bool contains(const std::string& id) const { return nodes_.count(id) > 0; }
    const KgNode& node(const std::string& id) const;
    KgNode& node_mut(const std::string& id);

    /// Sorted unique neighbour ids (both edge directions).
    std::vector<std::string> neighbors(const std::string& id) const;

    /// Sorted ids within `hops` of any seed id (seeds included).
    std::vector<std::string> ball(const std::vector<std::string>& seeds, int hops) const;

    std::map<NodeKind, int> node_counts() const;
    std::map<EdgeKind, int> edge_counts() const;

private:
    void check_edge(const KgEdge& edge,
                    const std::map<std::string, NodeKind>* extra) const;
    void link(const std::string& a, const std::string& b);

    std::map<std::string, KgNode> nodes_;
    std::vector<KgEdge> edges_;
    std::map<std::string, std::set<std::string>> adjacency_;
    int next_edge_seq_ = 0;
};

/**
 * @brief Confidence-stream anomaly triggers.
 *
 * Index i triggers when value[i] drops strictly below the rolling mean of
 * the previous `window` values minus twice their standard deviation. The
 * first `window` indices never trigger. Requires window >= 2.
 */
std::vector<int> detect_anomaly(const std::vector<double>& confidence_stream, int window);

}  // namespace regkit
