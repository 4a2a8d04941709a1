#include "regkit/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

namespace regkit {

namespace {

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

ChunkIndex build_provision_index(const RegulatoryGraph& g, const PipelineConfig& cfg) {
    std::vector<Chunk> chunks;
    for (const auto& [id, node] : g.nodes()) {
        if (node.kind != NodeKind::Provision) continue;
        Document holder;
        holder.doc_id = "kg";
        holder.provisions.push_back({id, node.text});
        for (auto& c : chunk_document(holder, cfg.chunking.max_tokens, cfg.chunking.overlap)) {
            chunks.push_back(std::move(c));
        }
    }
    return build_index(chunks, cfg.embedder);
}

StageTwoResult stage2_retrieve(const Obligation& o, const ChunkIndex& index,
                               const RegulatoryGraph& g, const PipelineConfig& cfg,
                               bool use_kg_rerank) {
    StageTwoResult result;
    std::string query = o.entity_surface;
    if (!o.action.empty()) query += " " + o.action;
    if (!o.condition.empty()) query += " " + o.condition;
    RetrievalConfig pool_cfg = cfg.retrieval;
    pool_cfg.k = std::max(cfg.retrieval.k, cfg.retrieval.rerank_pool);
    std::vector<Candidate> candidates = retrieve_topk(query, index, pool_cfg);
    if (use_kg_rerank && g.contains(o.source_provision)) {
        candidates = kg_rerank(std::move(candidates), o.source_provision, g, cfg.retrieval);
    }
    if (static_cast<int>(candidates.size()) > cfg.retrieval.k) {
        candidates.resize(static_cast<std::size_t>(cfg.retrieval.k));
    }
    std::unordered_map<std::string, const IndexedChunk*> by_id;
    for (const auto& ic : index.chunks) by_id[ic.chunk.chunk_id] = &ic;
    const double floor =
        candidates.empty() ? 0.0 : cfg.gap.context_floor_ratio * candidates.front().final;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Candidate& c = candidates[i];
        if (static_cast<int>(result.context_texts.size()) >= cfg.gap.context_top) break;
        if (i > 0 && c.final < floor) break;
        auto it = by_id.find(c.chunk_id);
        if (it != by_id.end()) result.context_texts.push_back(it->second->chunk.text);
    }
    result.topk = std::move(candidates);
    return result;
}

GapReport run_gap_stage(const std::vector<Obligation>& obligations, const ChunkIndex& index,
                        const std::vector<PolicyClause>& policies, const RegulatoryGraph& g,
                        const PipelineConfig& cfg, const PipelineToggles& toggles) {
    std::vector<GapFinding> findings;
    for (const auto& o : obligations) {
        GapFinding f;
        f.obligation = o;

        // Stage 2: hybrid retrieval over a pool, then KG re-ranking.
        StageTwoResult stage2 = stage2_retrieve(o, index, g, cfg, toggles.kg_rerank);
        for (const auto& c : stage2.topk) f.context.push_back({c.chunk_id, c.final});
        const std::vector<std::string>& context_texts = stage2.context_texts;

        // Stage 3: best clause by contextual alignment.
        double best_score = 0.0;
        const PolicyClause* best = nullptr;
        for (const auto& p : policies) {
            const double a = contextual_alignment_score(o, context_texts, p, cfg.gap, cfg.embedder);
            if (!best || a > best_score || (a == best_score && p.clause_id < best->clause_id)) {
                best = &p;
                best_score = a;
            }
        }
        f.alignment = best ? best_score : 0.0;
        f.best_clause = best ? best->clause_id : "";
        f.gap_class = classify_gap(f.alignment, cfg.gap);
        if (f.gap_class != GapClass::Compliant) f.severity = score_severity(f, g);

        f.citations.push_back(o.source_provision);
        for (const auto& ref : o.crossrefs) {
            if (ref.target && std::find(f.citations.begin(), f.citations.end(), *ref.target) ==
                                  f.citations.end()) {
                f.citations.push_back(*ref.target);
            }
        }

        const std::string clause_name = f.best_clause.empty() ? "none" : f.best_clause;
        switch (f.gap_class) {
            case GapClass::Compliant:
                f.description = "Policy clause " + clause_name + " covers obligation " +
                                o.obligation_id + " (alignment " + fmt2(f.alignment) + ").";
                f.recommendation = "No action required.";
                break;
            case GapClass::PartialGap:
                f.description = "Obligation " + o.obligation_id +
                                " is only partially covered by policy clause " + clause_name +
                                " (alignment " + fmt2(f.alignment) +
                                "). The policy does not fully address: " + o.action + ".";
                f.recommendation =
                    "Update policy clause " + clause_name + " to fully address: " + o.action + ".";
                break;
            case GapClass::FullGap:
                f.description = "No policy clause adequately covers obligation " + o.obligation_id +
                                " (best alignment " + fmt2(f.alignment) + " with " + clause_name +
                                "). Required: " + o.action + ".";
                f.recommendation = "Draft a new policy clause addressing: " + o.action +
                                   ". Cite " + join(f.citations, ", ") + ".";
                break;
        }

        if (toggles.grounding) {
            // Claims restate the obligation in the provision's own words, so
            // a faithful extraction grounds cleanly against its citations.
            std::vector<std::string> claims;
            claims.push_back(o.sentence.empty() ? o.action : o.sentence);
            std::string restatement = o.entity_surface + " shall";
            if (o.modality == DeonticModality::Prohibition) restatement += " not";
            restatement += " " + o.action;
            if (!o.condition.empty()) restatement += " " + o.condition;
            claims.push_back(restatement + ".");
            f.grounding = verify_grounding(claims, f.citations, g, cfg.gap,
                                           static_cast<int>(o.crossrefs.size()));
        } else {
            f.grounding.cited_provisions = f.citations;
        }

        findings.push_back(std::move(f));
    }
    return compile_report(std::move(findings));
}

GapReport run_pipeline(const Document& doc, std::vector<PolicyClause> policies,
                       const RegulatoryGraph& g, const PipelineConfig& cfg,
                       const PipelineToggles& toggles) {
    const std::vector<Obligation> obligations = extract_obligations(doc, g, cfg.extraction);
    const ChunkIndex index = build_provision_index(g, cfg);
    embed_policies(policies, cfg.embedder);
    return run_gap_stage(obligations, index, policies, g, cfg, toggles);
}

}  // namespace regkit
