#include "regkit/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regkit {

ChunkIndex build_index(const std::vector<Chunk>& chunks, const EmbedderConfig& embedder) {
    ChunkIndex index;
    index.embedder = embedder;
    index.chunks.reserve(chunks.size());
    double total_len = 0.0;
    for (const auto& c : chunks) {
        IndexedChunk ic;
        ic.chunk = c;
        ic.embedding = embed_text(c.text, embedder);
        for (const auto& tok : tokenize(c.text)) ic.term_freq[tok]++;
        ic.linked_provisions.insert(c.provision_id);
        total_len += c.token_count;
        index.chunks.push_back(std::move(ic));
    }
    std::sort(index.chunks.begin(), index.chunks.end(),
              [](const IndexedChunk& a, const IndexedChunk& b) {
                  return a.chunk.chunk_id < b.chunk.chunk_id;
              });
    for (const auto& ic : index.chunks) {
        for (const auto& [term, tf] : ic.term_freq) index.stats.doc_freq[term]++;
    }
    index.stats.chunk_count = static_cast<int>(index.chunks.size());
    index.stats.avg_len =
        index.chunks.empty() ? 0.0 : total_len / static_cast<double>(index.chunks.size());
    return index;
}

double bm25_score(const std::vector<std::string>& query_tokens, const IndexedChunk& chunk,
                  const CorpusStats& stats, const RetrievalConfig& cfg) {
    if (stats.chunk_count == 0 || stats.avg_len <= 0.0) return 0.0;
    const double n = static_cast<double>(stats.chunk_count);
    const double len_norm =
        1.0 - cfg.bm25_b + cfg.bm25_b * static_cast<double>(chunk.chunk.token_count) / stats.avg_len;
    double score = 0.0;
    for (const auto& term : query_tokens) {
        auto tf_it = chunk.term_freq.find(term);
        if (tf_it == chunk.term_freq.end()) continue;
        const double tf = static_cast<double>(tf_it->second);
        auto df_it = stats.doc_freq.find(term);
        const double df = df_it == stats.doc_freq.end() ? 0.0 : static_cast<double>(df_it->second);
        const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
        score += idf * tf * (cfg.bm25_k1 + 1.0) / (tf + cfg.bm25_k1 * len_norm);
    }
    return score;
}

std::vector<double> normalize_sparse(const std::vector<double>& scores) {
    if (scores.empty()) throw std::invalid_argument("normalize_sparse: empty score list");
    const auto [mn, mx] = std::minmax_element(scores.begin(), scores.end());
    std::vector<double> out(scores.size());
    if (*mx == *mn) {
        std::fill(out.begin(), out.end(), 1.0);
        return out;
    }
    const double range = *mx - *mn;
    for (std::size_t i = 0; i < scores.size(); ++i) out[i] = (scores[i] - *mn) / range;
    return out;
}

double hybrid_score(double dense, double sparse_norm, double alpha) {
    return alpha * dense + (1.0 - alpha) * sparse_norm;
}

std::vector<Candidate> retrieve_topk(const std::string& query, const ChunkIndex& index,
                                     const RetrievalConfig& cfg) {
    std::vector<Candidate> out;
    if (index.chunks.empty()) return out;
    const auto query_tokens = tokenize(query);
    const Embedding query_emb = embed_text(query, index.embedder);

    std::vector<double> sparse(index.chunks.size());
    for (std::size_t i = 0; i < index.chunks.size(); ++i) {
        sparse[i] = bm25_score(query_tokens, index.chunks[i], index.stats, cfg);
    }
    const std::vector<double> sparse_norm = normalize_sparse(sparse);

    out.reserve(index.chunks.size());
    for (std::size_t i = 0; i < index.chunks.size(); ++i) {
        Candidate c;
        c.chunk_id = index.chunks[i].chunk.chunk_id;
        c.dense = cosine_sim(query_emb, index.chunks[i].embedding);
        c.sparse_norm = sparse_norm[i];
        c.hybrid = hybrid_score(c.dense, c.sparse_norm, cfg.alpha);
        c.kg = 0.0;
        c.final = c.hybrid;
        c.linked_provisions = index.chunks[i].linked_provisions;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.hybrid != b.hybrid) return a.hybrid > b.hybrid;
        return a.chunk_id < b.chunk_id;
    });
    if (static_cast<int>(out.size()) > cfg.k) out.resize(static_cast<std::size_t>(cfg.k));
    return out;
}

std::vector<Candidate> kg_rerank(std::vector<Candidate> candidates,
                                 const std::string& query_provision,
                                 const RegulatoryGraph& g, const RetrievalConfig& cfg) {
    if (!g.contains(query_provision)) {
        throw UnknownNodeError("kg_rerank: unknown query provision: " + query_provision);
    }
    const bool query_pending = g.node(query_provision).pending_validation;
    for (auto& c : candidates) {
        double kg = 0.0;
        if (!query_pending) {
            // Provision-granular fallback: freshly ingested provisions are
            // excluded until the next rebuild validates them.
            std::set<std::string> validated;
            for (const auto& p : c.linked_provisions) {
                if (g.contains(p) && !g.node(p).pending_validation) validated.insert(p);
            }
            if (!validated.empty()) kg = g.kg_proximity(query_provision, validated);
        }
        c.kg = kg;
        c.final = cfg.beta * kg + (1.0 - cfg.beta) * c.hybrid;
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.final != b.final) return a.final > b.final;
        return a.chunk_id < b.chunk_id;
    });
    return candidates;
}

}  // namespace regkit
