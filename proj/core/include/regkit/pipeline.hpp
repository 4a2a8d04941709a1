#pragma once

#include <vector>

#include "regkit/config.hpp"
#include "regkit/gap.hpp"
#include "regkit/retrieval.hpp"

namespace regkit {

/// Ablation switches for the gap stage.
struct PipelineToggles {
    bool kg_rerank = true;
    bool grounding = true;
};

/// Index every Provision node's text, one chunk set per provision.
ChunkIndex build_provision_index(const RegulatoryGraph& g, const PipelineConfig& cfg);

struct StageTwoResult {
    std::vector<Candidate> topk;             // re-ranked, truncated to k
    std::vector<std::string> context_texts;  // score-gated top chunks
};

/// Stage 2 for one obligation: hybrid retrieval over the re-rank pool, KG
/// re-ranking, truncation to k, and selection of the context chunks whose
/// final score clears context_floor_ratio of the best candidate.
StageTwoResult stage2_retrieve(const Obligation& o, const ChunkIndex& index,
                               const RegulatoryGraph& g, const PipelineConfig& cfg,
                               bool use_kg_rerank);

/**
 * @brief Stages 2-3: retrieval, KG re-ranking, alignment, classification,
 * severity, grounding, report compilation.
 *
 * Policies must be embedded with cfg.embedder. Retrieval context from the
 * re-ranked top candidates is folded into the alignment text.
 */
GapReport run_gap_stage(const std::vector<Obligation>& obligations, const ChunkIndex& index,
                        const std::vector<PolicyClause>& policies, const RegulatoryGraph& g,
                        const PipelineConfig& cfg, const PipelineToggles& toggles = {});

/**
 * @brief End-to-end run: extraction, retrieval + re-ranking, gap analysis.
 *
 * A document yielding zero obligations produces an empty report.
 */
GapReport run_pipeline(const Document& doc, std::vector<PolicyClause> policies,
                       const RegulatoryGraph& g, const PipelineConfig& cfg,
                       const PipelineToggles& toggles = {});

}  // namespace regkit
