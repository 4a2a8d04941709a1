#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regkit/corpus.hpp"
#include "regkit/graph.hpp"

namespace regkit {

/**
 * @brief Regulatory NER inventory: role types, finance-specific span types,
 * and structural reference types. Serialized names are stable.
 */
enum class EntityType {
    Regulatory_Body,
    Reporting_Entity,
    Effective_Date,
    Threshold_Value,
    Financial_Instrument,
    Obligation_Action,
    Compliance_Period,
    Jurisdiction,
    Penalty_Amount,
    Risk_Category,
    Capital_Requirement,
    Disclosure_Item,
    Filing_Type,
    Counterparty,
    Supervisory_Authority,
    Market_Type,
    Transaction_Type,
    Governance_Role,
    Audit_Requirement,
    Reporting_Frequency,
    Legal_Reference,
    Cross_Border_Provision,
    Exemption_Clause,
    Regulated_Entity,
};

std::string to_string(EntityType t);
EntityType entity_type_from_string(std::string_view s);
const std::vector<EntityType>& all_entity_types();

enum class DeonticModality { Obligation, Permission, Prohibition, Recommendation };

std::string to_string(DeonticModality m);
DeonticModality modality_from_string(std::string_view s);

struct EntityMention {
    int begin = 0;  // token offsets, [begin, end)
    int end = 0;
    EntityType etype = EntityType::Regulated_Entity;
    std::string surface;
    double confidence = 0.0;
};

struct CrossRef {
    int begin = 0;  // token offsets of the citation span
    int end = 0;
    std::string citation_text;
    std::optional<std::string> target;  // RKG provision id when linked
    double link_confidence = 0.0;
};

/**
 * @brief Structured obligation tuple.
 *
 * Only Obligation/Prohibition modalities are gap-relevant; Permission and
 * Recommendation sentences never produce a record.
 */
struct Obligation {
    std::string obligation_id;  // "<source_provision>#<ordinal>"
    std::string entity_surface;
    EntityType entity_type = EntityType::Regulated_Entity;
    std::string action;
    DeonticModality modality = DeonticModality::Obligation;
    std::string condition;  // empty when no subordinate clause
    std::string source_provision;
    std::vector<CrossRef> crossrefs;
    double confidence = 0.0;
    // Every entity type seen in the source sentence; feeds severity scoring.
    std::vector<EntityType> mention_types;
    std::string sentence;
};

/// Bilinear linker weights; empty means identity.
struct LinkerWeights {
    int dim = 0;
    std::vector<double> values;  // row-major dim x dim

    bool is_identity() const { return values.empty(); }
};

struct ExtractionConfig {
    double lambda1 = 0.4;  // NER loss weight
    double lambda2 = 0.3;  // deontic loss weight
    double lambda3 = 0.3;  // cross-reference loss weight
    double link_threshold = 0.6;
    std::map<EntityType, std::vector<std::string>> lexicons;
    std::vector<std::string> penalty_context = {"penalty", "penalties", "fine",
                                                "fines",   "sanction",  "sanctions"};
    LinkerWeights linker;

    /// Desk lexicon covering the frequent role and span types.
    static ExtractionConfig defaults();
};

/// Tokenized sentence with the raw text kept for span-level rules.
struct Sentence {
    std::string raw;
    std::vector<TokenSpan> tokens;

    static Sentence parse(std::string_view text);
};

/**
 * @brief Longest-match gazetteer plus pattern entity pass.
 *
 * Patterns: percents and currency amounts (Threshold_Value, or
 * Penalty_Amount for currency in penalty context), dates (Effective_Date)
 * and citations (Legal_Reference). Overlaps resolve longest-first then
 * leftmost. Gazetteer hits carry confidence 1.0, pattern hits 0.8.
 */
std::vector<EntityMention> extract_entities(const Sentence& sentence,
                                            const ExtractionConfig& cfg);

/**
 * @brief Modal-cue deontic classification.
 *
 * Negated modals ("may not", "shall not", "must not") take precedence as
 * Prohibition; then shall/must -> Obligation, may -> Permission,
 * should -> Recommendation. Confidence 0.95, or 0.6 when the cue sits in a
 * subordinate clause. Returns nullopt when no cue is present.
 */
std::optional<std::pair<DeonticModality, double>> classify_deontic(const Sentence& sentence);

/// Citation spans: "Article N(M)", "Art. N", paragraph marks, CFR sections,
/// "Item N(x)", "Rule Na-M" and accord ids ("d424 ¶50").
std::vector<CrossRef> detect_citations(const Sentence& sentence);

/// Canonical citation form used for target matching: lowercase
/// alphanumerics, "¶" -> "p", "article" -> "art".
std::string normalize_citation(std::string_view citation);

/**
 * @brief logistic(e_src^T W e_tgt); W defaults to identity.
 *
 * Throws std::invalid_argument on dimension mismatch.
 */
double bilinear_link_score(const Embedding& e_src, const Embedding& e_tgt,
                           const LinkerWeights& weights);

/**
 * @brief Resolve citation spans to RKG provisions.
 *
 * Candidates are provisions whose id or text contains the normalized
 * citation; the bilinear argmax is linked when its score reaches
 * link_threshold, otherwise the best score is recorded with no target.
 * Implicit (citation-free) references are not attempted.
 */
std::vector<CrossRef> resolve_crossrefs(const Sentence& sentence,
                                        const std::string& source_provision,
                                        const RegulatoryGraph& g,
                                        const ExtractionConfig& cfg);

/// lambda1*l_ner + lambda2*l_deontic + lambda3*l_xref. Negative losses are
/// rejected.
double multitask_loss(double l_ner, double l_deontic, double l_xref,
                      const ExtractionConfig& cfg);

/**
 * @brief Full rule-based extraction over a document.
 *
 * One record per sentence classified Obligation or Prohibition. The entity
 * is the highest-confidence Regulated_Entity/Reporting_Entity mention, else
 * the first mention, else the sentence subject span. The action runs from
 * the modal cue to sentence end with the condition clause removed; the
 * condition is the first subordinate clause introduced by
 * if/when/where/unless/subject-to.
 */
std::vector<Obligation> extract_obligations(const Document& doc, const RegulatoryGraph& g,
                                            const ExtractionConfig& cfg);

}  // namespace regkit
