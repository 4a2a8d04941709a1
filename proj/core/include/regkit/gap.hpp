#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regkit/corpus.hpp"
#include "regkit/extraction.hpp"
#include "regkit/graph.hpp"

namespace regkit {

struct PolicyClause {
    std::string clause_id;
    std::string section;
    std::string text;
    std::vector<std::string> entity_tags;
    Embedding embedding;
};

struct SynonymEntry {
    std::string term_a;
    std::string term_b;
    double score = 0.9;
};

struct GapConfig {
    double delta = 0.6;         // evaluation threshold
    double delta_deploy = 0.45; // recall-optimized deployment threshold
    double delta_full = 0.35;   // below this, Full Gap
    double tau = 0.85;          // grounding threshold
    double type_floor = 0.2;
    std::vector<SynonymEntry> synonym_map = {{"credit institution", "bank", 0.9}};
    int context_top = 3;        // retrieved chunks folded into the alignment text
    // A chunk joins the alignment context only when its score holds up
    // against the best candidate; junk-tier matches stay out.
    double context_floor_ratio = 0.4;

    static GapConfig defaults() { return GapConfig{}; }
};

enum class GapClass { Compliant, PartialGap, FullGap };
enum class Severity { Minor, Moderate, Major, Critical };

std::string to_string(GapClass c);
std::string to_string(Severity s);
GapClass gap_class_from_string(std::string_view s);
Severity severity_from_string(std::string_view s);

struct SentenceGrounding {
    std::string sentence;
    double score = 0.0;
    bool grounded = false;
    bool flagged_for_review = false;
};

struct GroundingResult {
    std::vector<SentenceGrounding> sentences;
    std::vector<std::string> cited_provisions;

    bool all_grounded() const;
    bool any_flagged() const;
    int grounded_count() const;
};

struct RetrievedContext {
    std::string chunk_id;
    double final = 0.0;
};

struct GapFinding {
    Obligation obligation;
    std::string best_clause;
    double alignment = 0.0;
    GapClass gap_class = GapClass::Compliant;
    std::optional<Severity> severity;  // present iff gap_class != Compliant
    std::string description;
    std::string recommendation;
    GroundingResult grounding;
    std::vector<std::string> citations;
    std::vector<RetrievedContext> context;
};

struct GapReport {
    std::vector<GapFinding> findings;  // severity desc, alignment asc
    std::map<GapClass, int> class_counts;
    std::map<Severity, int> severity_counts;
};

/// Embed policy clause texts in place with the given config.
void embed_policies(std::vector<PolicyClause>& policies, const EmbedderConfig& cfg);

/**
 * @brief Fuzzy entity-type match in [type_floor, 1].
 *
 * 1.0 on an exact surface or type-name match against any tag; the
 * configured synonym score on a synonym-map hit (either direction);
 * type_floor otherwise.
 */
double type_match_score(const std::string& entity_surface, EntityType entity_type,
                        const std::vector<std::string>& clause_tags, const GapConfig& cfg);

/**
 * @brief max(0, cosine(embed(action + condition), clause)) * type_match.
 *
 * Both embeddings must come from the same embedder config.
 */
double alignment_score(const Obligation& o, const PolicyClause& p, const GapConfig& cfg,
                       const EmbedderConfig& emb);

/// Stage-3 variant: retrieved context text is folded into the obligation
/// side of the embedding, so promoted passages can pull in the vocabulary a
/// clause needs. With empty context this equals alignment_score.
double contextual_alignment_score(const Obligation& o, const std::vector<std::string>& context,
                                  const PolicyClause& p, const GapConfig& cfg,
                                  const EmbedderConfig& emb);

/**
 * @brief Two-cutpoint classification of the best alignment.
 *
 * Compliant iff >= delta; FullGap iff < delta_full; PartialGap otherwise.
 */
GapClass classify_gap(double max_alignment, const GapConfig& cfg);
GapClass classify_gap(double max_alignment, double delta, double delta_full);

/**
 * @brief Additive severity rubric for non-compliant findings.
 *
 * Base 1; +1 for Prohibition modality or a Threshold_Value /
 * Capital_Requirement mention; +1 for an Enforcement node within 2 hops of
 * the source provision; +1 for a Full Gap. 1 Minor, 2 Moderate, 3 Major,
 * >=4 Critical. Throws std::invalid_argument on a Compliant finding.
 */
Severity score_severity(const GapFinding& finding, const RegulatoryGraph& g);

/**
 * @brief Lexical grounding verifier.
 *
 * A sentence's score is the fraction of its content tokens (stopwords
 * removed) present in the union of the cited provisions' texts. Grounded
 * iff score >= tau and every cited id exists. Sentences are flagged for
 * review when ungrounded or when the source obligation carries >= 3
 * cross-references.
 */
GroundingResult verify_grounding(const std::vector<std::string>& claim_sentences,
                                 const std::vector<std::string>& cited,
                                 const RegulatoryGraph& g, const GapConfig& cfg,
                                 int crossref_count = 0);

/**
 * @brief Order findings, render templates and tally summary counts.
 *
 * Findings sort by severity descending then alignment ascending; byte
 * deterministic for identical inputs.
 */
GapReport compile_report(std::vector<GapFinding> findings);

/// Human-readable rendering of a report, one block per finding.
std::string render_report_text(const GapReport& report);

}  // namespace regkit
