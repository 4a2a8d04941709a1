#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "regkit/corpus.hpp"
#include "regkit/graph.hpp"

namespace regkit {

struct RetrievalConfig {
    double alpha = 0.7;     // dense weight in the hybrid score
    double beta = 0.3;      // KG weight in the re-ranked score
    int k = 5;              // result count
    double bm25_k1 = 1.2;
    double bm25_b = 0.75;
    int rerank_pool = 10;   // candidates scored before KG re-ranking truncates to k
};

/**
 * @brief A retrieved chunk with every score component kept for audit.
 *
 * hybrid = alpha*dense + (1-alpha)*sparse_norm. After KG re-ranking,
 * final = beta*kg + (1-beta)*hybrid; before it, final = hybrid.
 */
struct Candidate {
    std::string chunk_id;
    double dense = 0.0;
    double sparse_norm = 0.0;
    double hybrid = 0.0;
    double kg = 0.0;
    double final = 0.0;
    std::set<std::string> linked_provisions;
};

/// Corpus-level statistics BM25 needs: per-term document frequency and
/// average chunk length over the indexed set.
struct CorpusStats {
    std::unordered_map<std::string, int> doc_freq;
    double avg_len = 0.0;
    int chunk_count = 0;
};

struct IndexedChunk {
    Chunk chunk;
    Embedding embedding;
    std::unordered_map<std::string, int> term_freq;
    std::set<std::string> linked_provisions;
};

/**
 * @brief Exhaustive-scan retrieval index (desk-scale corpora).
 *
 * Build is exclusive; queries are pure reads.
 */
struct ChunkIndex {
    EmbedderConfig embedder;
    std::vector<IndexedChunk> chunks;   // sorted by chunk_id
    CorpusStats stats;
};

ChunkIndex build_index(const std::vector<Chunk>& chunks, const EmbedderConfig& embedder);

/**
 * @brief Okapi BM25 with plus-one IDF smoothing.
 *
 * idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5)), summed over query tokens
 * with multiplicity. Always non-negative.
 */
double bm25_score(const std::vector<std::string>& query_tokens, const IndexedChunk& chunk,
                  const CorpusStats& stats, const RetrievalConfig& cfg);

/**
 * @brief Min-max normalization into [0,1]; an all-equal list maps to 1.0.
 *
 * Throws std::invalid_argument on an empty list.
 */
std::vector<double> normalize_sparse(const std::vector<double>& scores);

/// alpha*dense + (1-alpha)*sparse_norm.
double hybrid_score(double dense, double sparse_norm, double alpha);

/**
 * @brief Top-k candidates by hybrid score, descending, ties broken by
 * chunk_id ascending. Sparse scores are min-max normalized over the whole
 * scored set. An empty index yields an empty list.
 */
std::vector<Candidate> retrieve_topk(const std::string& query, const ChunkIndex& index,
                                     const RetrievalConfig& cfg);

/**
 * @brief Blend KG proximity into candidate scores and re-sort.
 *
 * final = beta*kg_proximity + (1-beta)*hybrid. A candidate whose linked
 * provisions are all pending validation (or absent from the graph), or a
 * query provision that is itself pending, contributes kg = 0 and is scored
 * on the hybrid component alone. Throws UnknownNodeError when the query
 * provision is not in the graph.
 */
std::vector<Candidate> kg_rerank(std::vector<Candidate> candidates,
                                 const std::string& query_provision,
                                 const RegulatoryGraph& g, const RetrievalConfig& cfg);

}  // namespace regkit
