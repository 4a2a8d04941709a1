#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regkit/gap.hpp"
#include "regkit/pipeline.hpp"

namespace regkit {

struct LabeledPair {
    std::string item_id;
    GapClass gold = GapClass::Compliant;
    GapClass predicted = GapClass::Compliant;
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int support = 0;
    int predicted_count = 0;
    bool zero_support = false;
};

struct MetricsTable {
    std::map<GapClass, ClassMetrics> per_class;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double accuracy = 0.0;  // micro: confusion-matrix trace / total
    int total = 0;
};

/**
 * @brief One-vs-rest precision/recall/F1 per class with unweighted macro
 * averages. Zero-support classes report 0 and are flagged. Throws
 * std::invalid_argument on an empty list.
 */
MetricsTable classification_metrics(const std::vector<LabeledPair>& pairs);

struct BootstrapResult {
    double delta_observed = 0.0;  // mean(A) - mean(B)
    double p_value = 0.0;
    int n_resamples = 10000;
    std::uint64_t seed = 0;
};

/**
 * @brief One-sided paired bootstrap: p = fraction of resamples where system
 * B's mean >= system A's mean (A hypothesized better).
 *
 * Deterministic given the seed; resampling uses a fully specified
 * mt19937_64 + multiply-shift index draw. Requires equal lengths and
 * n >= 1000.
 */
BootstrapResult paired_bootstrap(const std::vector<double>& per_item_scores_a,
                                 const std::vector<double>& per_item_scores_b, int n,
                                 std::uint64_t seed);

struct AlignmentRecord {
    std::string item_id;
    double alignment = 0.0;
    GapClass gold = GapClass::Compliant;
};

struct SweepRow {
    double delta = 0.0;
    MetricsTable metrics;
    int flagged = 0;  // non-Compliant count at this threshold
};

/**
 * @brief Re-classify alignments at each threshold and recompute metrics.
 *
 * Deltas must be sorted ascending; delta_full comes from cfg. Flagged-set
 * sizes are non-decreasing in delta.
 */
std::vector<SweepRow> threshold_sweep(const std::vector<AlignmentRecord>& alignments,
                                      const std::vector<double>& deltas, const GapConfig& cfg);

enum class ExtractionMode { Gold, Rules };

struct AblationToggles {
    bool kg_rerank = true;
    ExtractionMode extraction = ExtractionMode::Rules;
    bool grounding = true;
};

struct AblationFixture {
    std::vector<Document> documents;
    std::vector<PolicyClause> policies;
    const RegulatoryGraph* graph = nullptr;
    std::vector<Obligation> gold_obligations;
    std::map<std::string, GapClass> gold_labels;  // item_id -> class
};

struct AblationRow {
    AblationToggles toggles;
    std::string name;
    MetricsTable metrics;
    std::optional<double> marginal_f1;  // vs. the previous additive row
};

struct AblationMatrix {
    std::vector<AblationRow> grid;      // every toggle combination, fixed order
    std::vector<AblationRow> additive;  // base -> +kg -> +rule extraction -> +grounding
};

/**
 * @brief Run the pipeline once per toggle combination and report per-row
 * metrics plus additive marginal deltas on macro gap F1.
 */
AblationMatrix ablation_matrix(const AblationFixture& fixture, const PipelineConfig& cfg);

struct PropagationReport {
    MetricsTable gold_input;
    MetricsTable predicted_input;
    double delta_f1 = 0.0;  // predicted - gold, macro F1
    int missing_obligation = 0;
    int wrong_span = 0;
    int wrong_modality = 0;
    int unresolved_crossref = 0;
    int clean_matches = 0;
};

/**
 * @brief Gap metrics under gold vs. predicted obligations, with the delta
 * attributed to extraction-stage categories by matching on
 * (source_provision, modality) keys.
 */
PropagationReport error_propagation_report(const std::vector<Obligation>& gold_obligations,
                                           const std::map<std::string, GapClass>& gold_labels,
                                           const std::vector<Obligation>& predicted_obligations,
                                           const std::vector<PolicyClause>& policies,
                                           const RegulatoryGraph& g, const PipelineConfig& cfg);

/**
 * @brief caught / (caught + missed / manual_recall).
 *
 * Adjusts the naive recall estimate for an imperfect manual process.
 * Rejects manual_recall outside (0,1] and an empty (0,0) tally.
 */
double estimate_production_recall(int caught, int missed, double manual_recall);

struct CostPhase {
    std::string name;
    double infra_monthly = 0.0;
    double analyst_monthly = 0.0;
    int docs_per_month = 0;
};

struct CostRow {
    std::string name;
    double total = 0.0;
    double delta_pct = 0.0;               // vs. baseline total, signed fraction
    std::optional<double> per_doc;        // infra / docs, absent when docs == 0
};

/**
 * @brief Monthly cost table: total, percent delta vs. baseline, and
 * per-document infrastructure cost.
 */
std::vector<CostRow> cost_model(const std::vector<CostPhase>& phases, const CostPhase& baseline);

/// Aligned-column text rendering of a metrics table.
std::string render_metrics_text(const MetricsTable& table);

}  // namespace regkit
