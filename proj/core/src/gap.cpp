#include "regkit/gap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace regkit {

std::string to_string(GapClass c) {
    switch (c) {
        case GapClass::Compliant: return "Compliant";
        case GapClass::PartialGap: return "PartialGap";
        case GapClass::FullGap: return "FullGap";
    }
    return "Compliant";
}

std::string to_string(Severity s) {
    switch (s) {
        case Severity::Minor: return "Minor";
        case Severity::Moderate: return "Moderate";
        case Severity::Major: return "Major";
        case Severity::Critical: return "Critical";
    }
    return "Minor";
}

GapClass gap_class_from_string(std::string_view s) {
    if (s == "Compliant") return GapClass::Compliant;
    if (s == "PartialGap") return GapClass::PartialGap;
    if (s == "FullGap") return GapClass::FullGap;
    throw std::invalid_argument("unknown gap class: " + std::string(s));
}

Severity severity_from_string(std::string_view s) {
    if (s == "Minor") return Severity::Minor;
    if (s == "Moderate") return Severity::Moderate;
    if (s == "Major") return Severity::Major;
    if (s == "Critical") return Severity::Critical;
    throw std::invalid_argument("unknown severity: " + std::string(s));
}

namespace {

std::string display_name(GapClass c) {
    switch (c) {
        case GapClass::Compliant: return "Compliant";
        case GapClass::PartialGap: return "Partial Gap";
        case GapClass::FullGap: return "Full Gap";
    }
    return "Compliant";
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

bool GroundingResult::all_grounded() const {
    for (const auto& s : sentences)
        if (!s.grounded) return false;
    return true;
}

bool GroundingResult::any_flagged() const {
    for (const auto& s : sentences)
        if (s.flagged_for_review) return true;
    return false;
}

int GroundingResult::grounded_count() const {
    int n = 0;
    for (const auto& s : sentences)
        if (s.grounded) ++n;
    return n;
}

void embed_policies(std::vector<PolicyClause>& policies, const EmbedderConfig& cfg) {
    for (auto& p : policies) p.embedding = embed_text(p.text, cfg);
}

double type_match_score(const std::string& entity_surface, EntityType entity_type,
                        const std::vector<std::string>& clause_tags, const GapConfig& cfg) {
    const std::string surface = lower_copy(entity_surface);
    const std::string type_name = lower_copy(to_string(entity_type));
    double best = cfg.type_floor;
    for (const auto& raw_tag : clause_tags) {
        const std::string tag = lower_copy(raw_tag);
        if (tag == surface || tag == type_name) return 1.0;
        for (const auto& syn : cfg.synonym_map) {
            const std::string a = lower_copy(syn.term_a);
            const std::string b = lower_copy(syn.term_b);
            if ((a == surface && b == tag) || (b == surface && a == tag)) {
                best = std::max(best, syn.score);
            }
        }
    }
    return best;
}

namespace {

std::string obligation_text(const Obligation& o) {
    std::string text = o.action;
    if (!o.condition.empty()) {
        if (!text.empty()) text.push_back(' ');
        text += o.condition;
    }
    return text;
}

double alignment_of_text(const std::string& text, const Obligation& o, const PolicyClause& p,
                         const GapConfig& cfg, const EmbedderConfig& emb) {
    const double sim = cosine_sim(embed_text(text, emb), p.embedding);
    const double f_type = type_match_score(o.entity_surface, o.entity_type, p.entity_tags, cfg);
    return std::max(0.0, sim) * f_type;
}

}  // namespace

double alignment_score(const Obligation& o, const PolicyClause& p, const GapConfig& cfg,
                       const EmbedderConfig& emb) {
    return alignment_of_text(obligation_text(o), o, p, cfg, emb);
}

double contextual_alignment_score(const Obligation& o, const std::vector<std::string>& context,
                                  const PolicyClause& p, const GapConfig& cfg,
                                  const EmbedderConfig& emb) {
    std::string text = obligation_text(o);
    for (const auto& c : context) {
        if (c.empty()) continue;
        if (!text.empty()) text.push_back(' ');
        text += c;
    }
    return alignment_of_text(text, o, p, cfg, emb);
}

GapClass classify_gap(double max_alignment, double delta, double delta_full) {
    if (max_alignment >= delta) return GapClass::Compliant;
    if (max_alignment < delta_full) return GapClass::FullGap;
    return GapClass::PartialGap;
}

GapClass classify_gap(double max_alignment, const GapConfig& cfg) {
    return classify_gap(max_alignment, cfg.delta, cfg.delta_full);
}

Severity score_severity(const GapFinding& finding, const RegulatoryGraph& g) {
    if (finding.gap_class == GapClass::Compliant) {
        throw std::invalid_argument("score_severity: finding is Compliant");
    }
    int score = 1;
    bool threshold_entity = false;
    for (EntityType t : finding.obligation.mention_types) {
        if (t == EntityType::Threshold_Value || t == EntityType::Capital_Requirement) {
            threshold_entity = true;
            break;
        }
    }
    if (finding.obligation.modality == DeonticModality::Prohibition || threshold_entity) ++score;
    if (g.contains(finding.obligation.source_provision)) {
        for (const auto& id : g.ball({finding.obligation.source_provision}, 2)) {
            if (g.node(id).kind == NodeKind::Enforcement) {
                ++score;
                break;
            }
        }
    }
    if (finding.gap_class == GapClass::FullGap) ++score;
    if (score <= 1) return Severity::Minor;
    if (score == 2) return Severity::Moderate;
    if (score == 3) return Severity::Major;
    return Severity::Critical;
}

GroundingResult verify_grounding(const std::vector<std::string>& claim_sentences,
                                 const std::vector<std::string>& cited,
                                 const RegulatoryGraph& g, const GapConfig& cfg,
                                 int crossref_count) {
    GroundingResult result;
    result.cited_provisions = cited;
    bool all_exist = true;
    std::unordered_set<std::string> support;
    for (const auto& id : cited) {
        if (!g.contains(id)) {
            all_exist = false;
            continue;
        }
        for (const auto& tok : tokenize(g.node(id).text)) support.insert(tok);
    }
    for (const auto& claim : claim_sentences) {
        SentenceGrounding sg;
        sg.sentence = claim;
        int content = 0;
        int matched = 0;
        for (const auto& tok : tokenize(claim)) {
            if (is_stopword(tok)) continue;
            ++content;
            if (support.count(tok)) ++matched;
        }
        sg.score = content == 0 ? 1.0 : static_cast<double>(matched) / content;
        sg.grounded = all_exist && sg.score >= cfg.tau;
        sg.flagged_for_review = !sg.grounded || crossref_count >= 3;
        result.sentences.push_back(std::move(sg));
    }
    return result;
}

GapReport compile_report(std::vector<GapFinding> findings) {
    auto severity_rank = [](const GapFinding& f) {
        return f.severity ? static_cast<int>(*f.severity) : -1;
    };
    std::sort(findings.begin(), findings.end(), [&](const GapFinding& a, const GapFinding& b) {
        const int ra = severity_rank(a);
        const int rb = severity_rank(b);
        if (ra != rb) return ra > rb;
        if (a.alignment != b.alignment) return a.alignment < b.alignment;
        return a.obligation.obligation_id < b.obligation.obligation_id;
    });
    GapReport report;
    for (const auto& f : findings) {
        report.class_counts[f.gap_class]++;
        if (f.severity) report.severity_counts[*f.severity]++;
    }
    report.findings = std::move(findings);
    return report;
}

std::string render_report_text(const GapReport& report) {
    std::ostringstream os;
    os << "Compliance gap report\n";
    os << "  Findings: " << report.findings.size();
    for (GapClass c : {GapClass::Compliant, GapClass::PartialGap, GapClass::FullGap}) {
        auto it = report.class_counts.find(c);
        os << "  " << display_name(c) << ": " << (it == report.class_counts.end() ? 0 : it->second);
    }
    os << "\n";
    for (Severity s : {Severity::Critical, Severity::Major, Severity::Moderate, Severity::Minor}) {
        auto it = report.severity_counts.find(s);
        if (it != report.severity_counts.end() && it->second > 0) {
            os << "  " << to_string(s) << ": " << it->second;
        }
    }
    os << "\n";
    int idx = 1;
    for (const auto& f : report.findings) {
        os << "\n[" << idx++ << "] Obligation " << f.obligation.obligation_id << " ("
           << to_string(f.obligation.modality) << ")\n";
        os << "  Entity: " << f.obligation.entity_surface << " ["
           << to_string(f.obligation.entity_type) << "]\n";
        os << "  Action: " << f.obligation.action << "\n";
        if (!f.obligation.condition.empty()) {
            os << "  Condition: " << f.obligation.condition << "\n";
        }
        os << "  Classification: " << display_name(f.gap_class)
           << " [alignment score: " << fmt2(f.alignment) << "]\n";
        os << "  Severity: " << (f.severity ? to_string(*f.severity) : std::string("N/A")) << "\n";
        os << "  Matched policy: " << (f.best_clause.empty() ? std::string("none") : f.best_clause)
           << "\n";
        os << "  Gap description: " << f.description << "\n";
        os << "  Recommended action: " << f.recommendation << "\n";
        if (!f.grounding.sentences.empty()) {
            os << "  Grounding: " << f.grounding.grounded_count() << "/"
               << f.grounding.sentences.size() << " sentences verified";
            if (f.grounding.any_flagged()) os << "; flagged for analyst review";
            os << "\n";
        }
        os << "  Citations: ";
        for (std::size_t i = 0; i < f.citations.size(); ++i) {
            if (i) os << ", ";
            os << f.citations[i];
        }
        if (f.citations.empty()) os << "none";
        os << "\n";
    }
    return os.str();
}

}  // namespace regkit
