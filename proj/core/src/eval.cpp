#include "regkit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace regkit {

namespace {

const std::vector<GapClass>& all_classes() {
    static const std::vector<GapClass> kClasses = {GapClass::Compliant, GapClass::PartialGap,
                                                   GapClass::FullGap};
    return kClasses;
}

// Unbiased bounded draw from fully specified 64-bit outputs (multiply-shift).
inline std::size_t next_below(std::mt19937_64& rng, std::size_t n) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * n;
    return static_cast<std::size_t>(wide >> 64);
}

}  // namespace

MetricsTable classification_metrics(const std::vector<LabeledPair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("classification_metrics: empty pair list");
    MetricsTable table;
    table.total = static_cast<int>(pairs.size());
    int correct = 0;
    for (const auto& p : pairs)
        if (p.gold == p.predicted) ++correct;
    table.accuracy = static_cast<double>(correct) / table.total;

    double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
    for (GapClass c : all_classes()) {
        int tp = 0, fp = 0, fn = 0, support = 0, predicted = 0;
        for (const auto& p : pairs) {
            const bool g = p.gold == c;
            const bool d = p.predicted == c;
            if (g) ++support;
            if (d) ++predicted;
            if (g && d) ++tp;
            if (!g && d) ++fp;
            if (g && !d) ++fn;
        }
        ClassMetrics m;
        m.support = support;
        m.predicted_count = predicted;
        m.zero_support = support == 0;
        m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
        m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
        m.f1 = m.precision + m.recall == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        sum_p += m.precision;
        sum_r += m.recall;
        sum_f += m.f1;
        table.per_class[c] = m;
    }
    const double k = static_cast<double>(all_classes().size());
    table.macro_precision = sum_p / k;
    table.macro_recall = sum_r / k;
    table.macro_f1 = sum_f / k;
    return table;
}

BootstrapResult paired_bootstrap(const std::vector<double>& per_item_scores_a,
                                 const std::vector<double>& per_item_scores_b, int n,
                                 std::uint64_t seed) {
    if (per_item_scores_a.size() != per_item_scores_b.size()) {
        throw std::invalid_argument("paired_bootstrap: score vectors differ in length");
    }
    if (per_item_scores_a.empty()) {
        throw std::invalid_argument("paired_bootstrap: empty score vectors");
    }
    if (n < 1000) throw std::invalid_argument("paired_bootstrap: n must be >= 1000");

    const std::size_t items = per_item_scores_a.size();
    std::vector<double> diff(items);
    double observed = 0.0;
    for (std::size_t i = 0; i < items; ++i) {
        diff[i] = per_item_scores_a[i] - per_item_scores_b[i];
        observed += diff[i];
    }
    observed /= static_cast<double>(items);

    std::mt19937_64 rng(seed);
    int b_wins = 0;  // resamples where mean(B) >= mean(A)
    for (int r = 0; r < n; ++r) {
        double sum = 0.0;
        for (std::size_t i = 0; i < items; ++i) sum += diff[next_below(rng, items)];
        if (sum <= 0.0) ++b_wins;
    }
    BootstrapResult result;
    result.delta_observed = observed;
    result.p_value = static_cast<double>(b_wins) / static_cast<double>(n);
    result.n_resamples = n;
    result.seed = seed;
    return result;
}

std::vector<SweepRow> threshold_sweep(const std::vector<AlignmentRecord>& alignments,
                                      const std::vector<double>& deltas, const GapConfig& cfg) {
    if (!std::is_sorted(deltas.begin(), deltas.end())) {
        throw std::invalid_argument("threshold_sweep: deltas must be sorted ascending");
    }
    std::vector<SweepRow> rows;
    for (double delta : deltas) {
        SweepRow row;
        row.delta = delta;
        std::vector<LabeledPair> pairs;
        for (const auto& rec : alignments) {
            LabeledPair p;
            p.item_id = rec.item_id;
            p.gold = rec.gold;
            p.predicted = classify_gap(rec.alignment, delta, cfg.delta_full);
            if (p.predicted != GapClass::Compliant) ++row.flagged;
            pairs.push_back(std::move(p));
        }
        if (!pairs.empty()) row.metrics = classification_metrics(pairs);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

MetricsTable metrics_against_gold(const GapReport& report,
                                  const std::map<std::string, GapClass>& gold_labels) {
    // Missing predictions count against the gold class's recall.
    std::map<std::string, GapClass> predicted;
    for (const auto& f : report.findings) {
        predicted[f.obligation.obligation_id] = f.gap_class;
    }
    MetricsTable table;
    table.total = static_cast<int>(gold_labels.size());
    int correct = 0;
    double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
    for (GapClass c : all_classes()) {
        int tp = 0, fp = 0, fn = 0, support = 0, pred_count = 0;
        for (const auto& [item, gold] : gold_labels) {
            auto it = predicted.find(item);
            const bool has = it != predicted.end();
            const bool g = gold == c;
            const bool d = has && it->second == c;
            if (g) ++support;
            if (d) ++pred_count;
            if (g && d) ++tp;
            if (!g && d) ++fp;
            if (g && !d) ++fn;
        }
        ClassMetrics m;
        m.support = support;
        m.predicted_count = pred_count;
        m.zero_support = support == 0;
        m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
        m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
        m.f1 = m.precision + m.recall == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        sum_p += m.precision;
        sum_r += m.recall;
        sum_f += m.f1;
        table.per_class[c] = m;
    }
    for (const auto& [item, gold] : gold_labels) {
        auto it = predicted.find(item);
        if (it != predicted.end() && it->second == gold) ++correct;
    }
    table.accuracy = table.total == 0 ? 0.0 : static_cast<double>(correct) / table.total;
    const double k = static_cast<double>(all_classes().size());
    table.macro_precision = sum_p / k;
    table.macro_recall = sum_r / k;
    table.macro_f1 = sum_f / k;
    return table;
}

}  // namespace

AblationMatrix ablation_matrix(const AblationFixture& fixture, const PipelineConfig& cfg) {
    if (!fixture.graph) throw std::invalid_argument("ablation_matrix: fixture has no graph");
    const RegulatoryGraph& g = *fixture.graph;
    const ChunkIndex index = build_provision_index(g, cfg);
    std::vector<PolicyClause> policies = fixture.policies;
    embed_policies(policies, cfg.embedder);

    std::vector<Obligation> rule_obligations;
    for (const auto& doc : fixture.documents) {
        for (auto& o : extract_obligations(doc, g, cfg.extraction)) {
            rule_obligations.push_back(std::move(o));
        }
    }

    auto run = [&](const AblationToggles& t) {
        PipelineToggles pt;
        pt.kg_rerank = t.kg_rerank;
        pt.grounding = t.grounding;
        const auto& obligations =
            t.extraction == ExtractionMode::Gold ? fixture.gold_obligations : rule_obligations;
        const GapReport report = run_gap_stage(obligations, index, policies, g, cfg, pt);
        return metrics_against_gold(report, fixture.gold_labels);
    };
    auto name_of = [](const AblationToggles& t) {
        std::string name = t.kg_rerank ? "kg" : "no-kg";
        name += t.extraction == ExtractionMode::Gold ? "/gold" : "/rules";
        name += t.grounding ? "/grounding" : "/no-grounding";
        return name;
    };

    AblationMatrix out;
    for (bool kg : {false, true}) {
        for (ExtractionMode mode : {ExtractionMode::Gold, ExtractionMode::Rules}) {
            for (bool grounding : {false, true}) {
                AblationRow row;
                row.toggles = {kg, mode, grounding};
                row.name = name_of(row.toggles);
                row.metrics = run(row.toggles);
                out.grid.push_back(std::move(row));
            }
        }
    }

    // Additive chain from the bare configuration.
    std::vector<AblationToggles> chain = {
        {false, ExtractionMode::Gold, false},
        {true, ExtractionMode::Gold, false},
        {true, ExtractionMode::Rules, false},
        {true, ExtractionMode::Rules, true},
    };
    double prev_f1 = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        AblationRow row;
        row.toggles = chain[i];
        row.name = name_of(chain[i]);
        row.metrics = run(chain[i]);
        if (i > 0) row.marginal_f1 = row.metrics.macro_f1 - prev_f1;
        prev_f1 = row.metrics.macro_f1;
        out.additive.push_back(std::move(row));
    }
    return out;
}

PropagationReport error_propagation_report(const std::vector<Obligation>& gold_obligations,
                                           const std::map<std::string, GapClass>& gold_labels,
                                           const std::vector<Obligation>& predicted_obligations,
                                           const std::vector<PolicyClause>& policies,
                                           const RegulatoryGraph& g, const PipelineConfig& cfg) {
    const ChunkIndex index = build_provision_index(g, cfg);
    std::vector<PolicyClause> embedded = policies;
    embed_policies(embedded, cfg.embedder);

    PropagationReport report;
    report.gold_input = metrics_against_gold(
        run_gap_stage(gold_obligations, index, embedded, g, cfg), gold_labels);
    report.predicted_input = metrics_against_gold(
        run_gap_stage(predicted_obligations, index, embedded, g, cfg), gold_labels);
    report.delta_f1 = report.predicted_input.macro_f1 - report.gold_input.macro_f1;

    // Attribute extraction drift by (source_provision, modality) keys.
    std::vector<bool> used(predicted_obligations.size(), false);
    auto find_match = [&](const Obligation& gold, bool require_modality) -> const Obligation* {
        for (std::size_t i = 0; i < predicted_obligations.size(); ++i) {
            if (used[i]) continue;
            const Obligation& p = predicted_obligations[i];
            if (p.source_provision != gold.source_provision) continue;
            if (require_modality && p.modality != gold.modality) continue;
            used[i] = true;
            return &p;
        }
        return nullptr;
    };
    for (const auto& gold : gold_obligations) {
        const Obligation* match = find_match(gold, true);
        if (!match) {
            if (find_match(gold, false)) {
                report.wrong_modality++;
            } else {
                report.missing_obligation++;
            }
            continue;
        }
        if (match->action != gold.action || match->condition != gold.condition) {
            report.wrong_span++;
            continue;
        }
        bool unresolved = false;
        for (const auto& gref : gold.crossrefs) {
            if (!gref.target) continue;
            bool found = false;
            for (const auto& pref : match->crossrefs) {
                if (pref.target && *pref.target == *gref.target) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                unresolved = true;
                break;
            }
        }
        if (unresolved) {
            report.unresolved_crossref++;
        } else {
            report.clean_matches++;
        }
    }
    return report;
}

double estimate_production_recall(int caught, int missed, double manual_recall) {
    if (caught < 0 || missed < 0) {
        throw std::invalid_argument("estimate_production_recall: negative counts");
    }
    if (manual_recall <= 0.0 || manual_recall > 1.0) {
        throw std::invalid_argument("estimate_production_recall: manual_recall must be in (0,1]");
    }
    if (caught == 0 && missed == 0) {
        throw std::invalid_argument("estimate_production_recall: empty tally");
    }
    return static_cast<double>(caught) /
           (static_cast<double>(caught) + static_cast<double>(missed) / manual_recall);
}

std::vector<CostRow> cost_model(const std::vector<CostPhase>& phases, const CostPhase& baseline) {
    const double base_total = baseline.infra_monthly + baseline.analyst_monthly;
    if (base_total <= 0.0) {
        throw std::invalid_argument("cost_model: baseline total cost must be positive");
    }
    std::vector<CostRow> rows;
    for (const auto& phase : phases) {
        CostRow row;
        row.name = phase.name;
        row.total = phase.infra_monthly + phase.analyst_monthly;
        row.delta_pct = (row.total - base_total) / base_total;
        if (phase.docs_per_month > 0) {
            row.per_doc = phase.infra_monthly / static_cast<double>(phase.docs_per_month);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_metrics_text(const MetricsTable& table) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %9s %9s %9s %9s\n", "Class", "P", "R", "F1",
                  "Support");
    os << line;
    auto row = [&](const std::string& name, double p, double r, double f, int support,
                   bool flagged) {
        std::snprintf(line, sizeof(line), "%-12s %9.3f %9.3f %9.3f %9d%s\n", name.c_str(), p, r, f,
                      support, flagged ? "  [no support]" : "");
        os << line;
    };
    for (const auto& [c, m] : table.per_class) {
        row(to_string(c), m.precision, m.recall, m.f1, m.support, m.zero_support);
    }
    std::snprintf(line, sizeof(line), "%-12s %9.3f %9.3f %9.3f %9d\n", "Macro avg.",
                  table.macro_precision, table.macro_recall, table.macro_f1, table.total);
    os << line;
    std::snprintf(line, sizeof(line), "%-12s %9.3f\n", "Accuracy", table.accuracy);
    os << line;
    return os.str();
}

}  // namespace regkit
