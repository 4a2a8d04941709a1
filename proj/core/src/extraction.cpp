#include "regkit/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace regkit {

namespace {

const std::vector<std::pair<EntityType, const char*>>& entity_type_table() {
    static const std::vector<std::pair<EntityType, const char*>> kTable = {
        {EntityType::Regulatory_Body, "Regulatory_Body"},
        {EntityType::Reporting_Entity, "Reporting_Entity"},
        {EntityType::Effective_Date, "Effective_Date"},
        {EntityType::Threshold_Value, "Threshold_Value"},
        {EntityType::Financial_Instrument, "Financial_Instrument"},
        {EntityType::Obligation_Action, "Obligation_Action"},
        {EntityType::Compliance_Period, "Compliance_Period"},
        {EntityType::Jurisdiction, "Jurisdiction"},
        {EntityType::Penalty_Amount, "Penalty_Amount"},
        {EntityType::Risk_Category, "Risk_Category"},
        {EntityType::Capital_Requirement, "Capital_Requirement"},
        {EntityType::Disclosure_Item, "Disclosure_Item"},
        {EntityType::Filing_Type, "Filing_Type"},
        {EntityType::Counterparty, "Counterparty"},
        {EntityType::Supervisory_Authority, "Supervisory_Authority"},
        {EntityType::Market_Type, "Market_Type"},
        {EntityType::Transaction_Type, "Transaction_Type"},
        {EntityType::Governance_Role, "Governance_Role"},
        {EntityType::Audit_Requirement, "Audit_Requirement"},
        {EntityType::Reporting_Frequency, "Reporting_Frequency"},
        {EntityType::Legal_Reference, "Legal_Reference"},
        {EntityType::Cross_Border_Provision, "Cross_Border_Provision"},
        {EntityType::Exemption_Clause, "Exemption_Clause"},
        {EntityType::Regulated_Entity, "Regulated_Entity"},
    };
    return kTable;
}

}  // namespace

std::string to_string(EntityType t) {
    for (const auto& [k, name] : entity_type_table()) {
        if (k == t) return name;
    }
    return "Regulated_Entity";
}

EntityType entity_type_from_string(std::string_view s) {
    for (const auto& [k, name] : entity_type_table()) {
        if (s == name) return k;
    }
    throw std::invalid_argument("unknown entity type: " + std::string(s));
}

const std::vector<EntityType>& all_entity_types() {
    static const std::vector<EntityType> kAll = [] {
        std::vector<EntityType> v;
        for (const auto& [k, name] : entity_type_table()) v.push_back(k);
        return v;
    }();
    return kAll;
}

std::string to_string(DeonticModality m) {
    switch (m) {
        case DeonticModality::Obligation: return "Obligation";
        case DeonticModality::Permission: return "Permission";
        case DeonticModality::Prohibition: return "Prohibition";
        case DeonticModality::Recommendation: return "Recommendation";
    }
    return "Obligation";
}

DeonticModality modality_from_string(std::string_view s) {
    if (s == "Obligation") return DeonticModality::Obligation;
    if (s == "Permission") return DeonticModality::Permission;
    if (s == "Prohibition") return DeonticModality::Prohibition;
    if (s == "Recommendation") return DeonticModality::Recommendation;
    throw std::invalid_argument("unknown modality: " + std::string(s));
}

ExtractionConfig ExtractionConfig::defaults() {
    ExtractionConfig cfg;
    auto& lex = cfg.lexicons;
    lex[EntityType::Regulated_Entity] = {
        "investment firm", "credit institution", "bank", "internationally active bank",
        "financial institution", "regulated entity", "broker dealer", "insurance undertaking"};
    lex[EntityType::Reporting_Entity] = {"registrant", "issuer", "reporting entity",
                                         "reporting company", "filer"};
    lex[EntityType::Regulatory_Body] = {
        "securities and exchange commission", "commission", "basel committee",
        "european commission", "esma", "european banking authority"};
    lex[EntityType::Supervisory_Authority] = {"competent authority", "supervisory authority",
                                              "supervisor", "jurisdictional supervisor",
                                              "national regulator"};
    lex[EntityType::Financial_Instrument] = {"financial instrument", "financial instruments",
                                             "derivative", "derivatives",
                                             "transferable securities"};
    lex[EntityType::Capital_Requirement] = {
        "common equity tier 1", "cet1", "tier 1 capital", "capital requirement",
        "capital requirements", "capital ratio", "liquidity coverage ratio", "lcr",
        "leverage ratio", "hqla", "high quality liquid assets"};
    lex[EntityType::Risk_Category] = {"credit risk", "market risk", "operational risk",
                                      "liquidity risk", "concentration risk"};
    lex[EntityType::Governance_Role] = {"board of directors", "senior management",
                                        "chief compliance officer", "management body"};
    lex[EntityType::Filing_Type] = {"annual report", "proxy statement", "registration statement",
                                    "information statement"};
    lex[EntityType::Disclosure_Item] = {"executive compensation", "financial statements",
                                        "pay versus performance", "related party transactions"};
    lex[EntityType::Jurisdiction] = {"member state", "member states", "united states",
                                     "european union", "third country"};
    lex[EntityType::Reporting_Frequency] = {"annually", "quarterly", "monthly"};
    lex[EntityType::Counterparty] = {"counterparty", "counterparties"};
    lex[EntityType::Market_Type] = {"regulated market", "trading venue",
                                    "multilateral trading facility"};
    lex[EntityType::Audit_Requirement] = {"external audit", "independent audit",
                                          "statutory audit"};
    lex[EntityType::Compliance_Period] = {"within 30 days", "within 90 days",
                                          "each calendar year"};
    lex[EntityType::Transaction_Type] = {"securities financing transaction",
                                         "repurchase agreement"};
    lex[EntityType::Cross_Border_Provision] = {"cross border"};
    lex[EntityType::Exemption_Clause] = {"exemption", "waiver"};
    return cfg;
}

Sentence Sentence::parse(std::string_view text) {
    Sentence s;
    s.raw = std::string(text);
    s.tokens = tokenize_spans(s.raw);
    return s;
}

namespace {

bool numeric_token(const std::string& tok) {
    if (tok.empty()) return false;
    bool digit = false;
    for (char c : tok) {
        if (std::isdigit(static_cast<unsigned char>(c))) digit = true;
        else if (c != '.') return false;
    }
    return digit;
}

bool all_digits(const std::string& tok) {
    if (tok.empty()) return false;
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

int month_index(const std::string& tok) {
    static const char* kMonths[] = {"january", "february", "march",     "april",
                                    "may",     "june",     "july",      "august",
                                    "september", "october", "november", "december"};
    for (int i = 0; i < 12; ++i)
        if (tok == kMonths[i]) return i;
    return -1;
}

bool year_token(const std::string& tok) {
    if (tok.size() != 4 || !all_digits(tok)) return false;
    int y = std::stoi(tok);
    return y >= 1900 && y <= 2099;
}

bool day_token(const std::string& tok) {
    if (tok.size() > 2 || !all_digits(tok)) return false;
    int d = std::stoi(tok);
    return d >= 1 && d <= 31;
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct MentionCandidate {
    EntityMention mention;
    int priority = 0;  // lower wins on exact ties
};

std::string surface_of(const Sentence& s, int begin, int end) {
    if (begin >= end) return {};
    const std::size_t a = s.tokens[begin].begin;
    const std::size_t b = s.tokens[end - 1].end;
    return lower_copy(std::string_view(s.raw).substr(a, b - a));
}

struct CueInfo {
    DeonticModality modality;
    int cue_index = -1;
    bool negated = false;
    double confidence = 0.0;
};

// Subordinate clause token ranges: introducer to the next comma (or the
// sentence end). "subject to" counts as an introducer.
std::vector<std::pair<int, int>> clause_ranges(const Sentence& s) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(s.tokens.size());
    auto comma_before = [&](int i) {
        const std::size_t from = s.tokens[i - 1].end;
        const std::size_t to = s.tokens[i].begin;
        return s.raw.find(',', from) < to;
    };
    for (int i = 0; i < n; ++i) {
        const std::string& t = s.tokens[i].text;
        bool intro = t == "if" || t == "when" || t == "where" || t == "unless" ||
                     (t == "subject" && i + 1 < n && s.tokens[i + 1].text == "to");
        if (!intro) continue;
        int end = n;
        for (int j = i + 1; j < n; ++j) {
            if (comma_before(j)) {
                end = j;
                break;
            }
        }
        out.emplace_back(i, end);
    }
    return out;
}

std::optional<CueInfo> find_cue(const Sentence& s) {
    const int n = static_cast<int>(s.tokens.size());
    auto is_modal = [&](int i, const char* m) { return s.tokens[i].text == m; };
    CueInfo info;
    info.cue_index = -1;
    // Negated modals first.
    for (int i = 0; i + 1 < n; ++i) {
        if ((is_modal(i, "may") || is_modal(i, "shall") || is_modal(i, "must")) &&
            s.tokens[i + 1].text == "not") {
            info.modality = DeonticModality::Prohibition;
            info.cue_index = i;
            info.negated = true;
            break;
        }
    }
    if (info.cue_index < 0) {
        for (int i = 0; i < n; ++i) {
            if (is_modal(i, "shall") || is_modal(i, "must")) {
                info.modality = DeonticModality::Obligation;
                info.cue_index = i;
                break;
            }
        }
    }
    if (info.cue_index < 0) {
        for (int i = 0; i < n; ++i) {
            if (is_modal(i, "may")) {
                info.modality = DeonticModality::Permission;
                info.cue_index = i;
                break;
            }
        }
    }
    if (info.cue_index < 0) {
        for (int i = 0; i < n; ++i) {
            if (is_modal(i, "should")) {
                info.modality = DeonticModality::Recommendation;
                info.cue_index = i;
                break;
            }
        }
    }
    if (info.cue_index < 0) return std::nullopt;
    info.confidence = 0.95;
    for (const auto& [b, e] : clause_ranges(s)) {
        if (info.cue_index > b && info.cue_index < e) {
            info.confidence = 0.6;
            break;
        }
    }
    return info;
}

}  // namespace

std::optional<std::pair<DeonticModality, double>> classify_deontic(const Sentence& sentence) {
    auto cue = find_cue(sentence);
    if (!cue) return std::nullopt;
    return std::make_pair(cue->modality, cue->confidence);
}

std::vector<CrossRef> detect_citations(const Sentence& sentence) {
    struct Pattern {
        std::regex re;
    };
    static const std::vector<Pattern> kPatterns = [] {
        const auto f = std::regex::ECMAScript | std::regex::icase;
        std::vector<Pattern> v;
        v.push_back({std::regex(R"((Article\s+|Art\.\s*)\d+(\((\d+|[a-z])\))*)", f)});
        v.push_back({std::regex("\\d+\\s+CFR\\s+(\xC2\xA7\\s*)?\\d+\\.\\d+", f)});
        v.push_back({std::regex(R"(Item\s+\d+(\([a-z0-9]+\))*)", f)});
        v.push_back({std::regex(R"(Rule\s+\d+[a-z]+-\d+)", f)});
        v.push_back({std::regex("\\bd\\d{3}\\b(\\s*\xC2\xB6\\s*\\d+(\\s*(-|\xE2\x80\x93)\\s*\\d+)?)?", f)});
        v.push_back({std::regex("\xC2\xB6\\s*\\d+(\\s*(-|\xE2\x80\x93)\\s*\\d+)?")});
        return v;
    }();

    struct RawMatch {
        std::size_t begin;
        std::size_t end;
    };
    std::vector<RawMatch> matches;
    for (const auto& p : kPatterns) {
        auto it = std::sregex_iterator(sentence.raw.begin(), sentence.raw.end(), p.re);
        for (; it != std::sregex_iterator(); ++it) {
            matches.push_back({static_cast<std::size_t>(it->position()),
                               static_cast<std::size_t>(it->position() + it->length())});
        }
    }
    std::sort(matches.begin(), matches.end(), [](const RawMatch& a, const RawMatch& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.end > b.end;
    });
    std::vector<RawMatch> kept;
    for (const auto& m : matches) {
        if (!kept.empty() && m.begin < kept.back().end) continue;
        kept.push_back(m);
    }

    std::vector<CrossRef> out;
    for (const auto& m : kept) {
        CrossRef ref;
        ref.citation_text = sentence.raw.substr(m.begin, m.end - m.begin);
        ref.begin = -1;
        const int n = static_cast<int>(sentence.tokens.size());
        for (int i = 0; i < n; ++i) {
            const auto& t = sentence.tokens[i];
            if (t.end > m.begin && t.begin < m.end) {
                if (ref.begin < 0) ref.begin = i;
                ref.end = i + 1;
            }
        }
        if (ref.begin < 0) {
            ref.begin = 0;
            ref.end = 0;
        }
        out.push_back(std::move(ref));
    }
    return out;
}

std::string normalize_citation(std::string_view citation) {
    std::string out;
    const std::size_t n = citation.size();
    for (std::size_t i = 0; i < n; ++i) {
        unsigned char c = static_cast<unsigned char>(citation[i]);
        if (c == 0xC2 && i + 1 < n &&
            static_cast<unsigned char>(citation[i + 1]) == 0xB6) {
            out.push_back('p');  // paragraph mark
            ++i;
            continue;
        }
        if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
    }
    // Stem the long form so "Article 25(2)" and "Art25-2" agree.
    std::size_t pos = 0;
    while ((pos = out.find("article", pos)) != std::string::npos) {
        out.erase(pos + 3, 4);
        pos += 3;
    }
    return out;
}

double bilinear_link_score(const Embedding& e_src, const Embedding& e_tgt,
                           const LinkerWeights& weights) {
    const std::size_t d = e_src.values.size();
    if (e_tgt.values.size() != d) {
        throw std::invalid_argument("bilinear_link_score: embedding dimension mismatch");
    }
    double x = 0.0;
    if (weights.is_identity()) {
        for (std::size_t i = 0; i < d; ++i) x += e_src.values[i] * e_tgt.values[i];
    } else {
        if (static_cast<std::size_t>(weights.dim) != d ||
            weights.values.size() != d * d) {
            throw std::invalid_argument("bilinear_link_score: weight matrix dimension mismatch");
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (e_src.values[i] == 0.0) continue;
            const double* row = weights.values.data() + i * d;
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += row[j] * e_tgt.values[j];
            x += e_src.values[i] * acc;
        }
    }
    return 1.0 / (1.0 + std::exp(-x));
}

std::vector<CrossRef> resolve_crossrefs(const Sentence& sentence,
                                        const std::string& source_provision,
                                        const RegulatoryGraph& g,
                                        const ExtractionConfig& cfg) {
    std::vector<CrossRef> refs = detect_citations(sentence);
    if (refs.empty()) return refs;

    Embedding e_src;
    if (g.contains(source_provision)) {
        const KgNode& src = g.node(source_provision);
        e_src = src.embedding.values.empty() ? embed_text(src.text, g.embedder) : src.embedding;
    } else {
        e_src = Embedding::of(std::vector<double>(static_cast<std::size_t>(g.embedder.dim), 0.0));
    }

    for (auto& ref : refs) {
        const std::string norm = normalize_citation(ref.citation_text);
        ref.link_confidence = 0.0;
        if (norm.empty()) continue;
        std::string best_id;
        double best_score = -1.0;
        for (const auto& [id, node] : g.nodes()) {
            if (node.kind != NodeKind::Provision) continue;
            if (normalize_citation(id).find(norm) == std::string::npos &&
                normalize_citation(node.text).find(norm) == std::string::npos) {
                continue;
            }
            const Embedding e_tgt =
                node.embedding.values.empty() ? embed_text(node.text, g.embedder) : node.embedding;
            const double s = bilinear_link_score(e_src, e_tgt, cfg.linker);
            if (s > best_score) {
                best_score = s;
                best_id = id;
            }
        }
        if (best_score >= 0.0) {
            ref.link_confidence = best_score;
            if (best_score >= cfg.link_threshold) ref.target = best_id;
        }
    }
    return refs;
}

double multitask_loss(double l_ner, double l_deontic, double l_xref,
                      const ExtractionConfig& cfg) {
    if (l_ner < 0.0 || l_deontic < 0.0 || l_xref < 0.0) {
        throw std::invalid_argument("multitask_loss: losses must be non-negative");
    }
    return cfg.lambda1 * l_ner + cfg.lambda2 * l_deontic + cfg.lambda3 * l_xref;
}

std::vector<EntityMention> extract_entities(const Sentence& sentence,
                                            const ExtractionConfig& cfg) {
    const int n = static_cast<int>(sentence.tokens.size());
    std::vector<MentionCandidate> candidates;

    // Gazetteer pass: contiguous token-sequence matches, confidence 1.0.
    int priority = 0;
    for (const auto& [etype, phrases] : cfg.lexicons) {
        for (const auto& phrase : phrases) {
            const auto ptoks = tokenize(phrase);
            if (ptoks.empty()) continue;
            const int m = static_cast<int>(ptoks.size());
            for (int s = 0; s + m <= n; ++s) {
                bool ok = true;
                for (int j = 0; j < m; ++j) {
                    if (sentence.tokens[s + j].text != ptoks[j]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                EntityMention mention{s, s + m, etype, surface_of(sentence, s, s + m), 1.0};
                candidates.push_back({std::move(mention), priority});
            }
        }
        ++priority;
    }

    // Pattern pass, confidence 0.8.
    bool penalty_context = false;
    for (const auto& t : sentence.tokens) {
        for (const auto& w : cfg.penalty_context) {
            if (t.text == w) {
                penalty_context = true;
                break;
            }
        }
    }
    const std::string& raw = sentence.raw;
    for (int i = 0; i < n; ++i) {
        const auto& tok = sentence.tokens[i];
        if (!numeric_token(tok.text)) continue;
        // Percent: "4.5%"
        if (tok.end < raw.size() && raw[tok.end] == '%') {
            candidates.push_back(
                {EntityMention{i, i + 1, EntityType::Threshold_Value,
                               surface_of(sentence, i, i + 1) + "%", 0.8},
                 100});
            continue;
        }
        // Currency: "$45", "$2,800", "$4.67"
        if (tok.begin > 0 && raw[tok.begin - 1] == '$') {
            int end = i + 1;
            while (end < n && all_digits(sentence.tokens[end].text) &&
                   sentence.tokens[end].begin == sentence.tokens[end - 1].end + 1 &&
                   raw[sentence.tokens[end - 1].end] == ',') {
                ++end;
            }
            const EntityType etype =
                penalty_context ? EntityType::Penalty_Amount : EntityType::Threshold_Value;
            candidates.push_back(
                {EntityMention{i, end, etype, "$" + surface_of(sentence, i, end), 0.8}, 100});
        }
    }
    // Dates: "January 1, 2024", "1 January 2024", "effective 2023".
    for (int i = 0; i < n; ++i) {
        const std::string& t = sentence.tokens[i].text;
        if (month_index(t) >= 0 && i + 2 < n && day_token(sentence.tokens[i + 1].text) &&
            year_token(sentence.tokens[i + 2].text)) {
            candidates.push_back({EntityMention{i, i + 3, EntityType::Effective_Date,
                                                surface_of(sentence, i, i + 3), 0.8},
                                  100});
        } else if (day_token(t) && i + 2 < n && month_index(sentence.tokens[i + 1].text) >= 0 &&
                   year_token(sentence.tokens[i + 2].text)) {
            candidates.push_back({EntityMention{i, i + 3, EntityType::Effective_Date,
                                                surface_of(sentence, i, i + 3), 0.8},
                                  100});
        } else if (t == "effective" && i + 1 < n && year_token(sentence.tokens[i + 1].text)) {
            candidates.push_back({EntityMention{i + 1, i + 2, EntityType::Effective_Date,
                                                surface_of(sentence, i + 1, i + 2), 0.8},
                                  100});
        }
    }
    // Citations become Legal_Reference mentions.
    for (const auto& ref : detect_citations(sentence)) {
        if (ref.begin >= ref.end) continue;
        candidates.push_back({EntityMention{ref.begin, ref.end, EntityType::Legal_Reference,
                                            lower_copy(ref.citation_text), 0.8},
                              100});
    }

    // Longest-first, then leftmost, greedy non-overlap.
    std::sort(candidates.begin(), candidates.end(),
              [](const MentionCandidate& a, const MentionCandidate& b) {
                  const int la = a.mention.end - a.mention.begin;
                  const int lb = b.mention.end - b.mention.begin;
                  if (la != lb) return la > lb;
                  if (a.mention.begin != b.mention.begin) return a.mention.begin < b.mention.begin;
                  if (a.mention.confidence != b.mention.confidence)
                      return a.mention.confidence > b.mention.confidence;
                  return a.priority < b.priority;
              });
    std::vector<EntityMention> selected;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& c : candidates) {
        bool overlap = false;
        for (int i = c.mention.begin; i < c.mention.end; ++i) {
            if (used[static_cast<std::size_t>(i)]) {
                overlap = true;
                break;
            }
        }
        if (overlap) continue;
        for (int i = c.mention.begin; i < c.mention.end; ++i) used[static_cast<std::size_t>(i)] = true;
        selected.push_back(c.mention);
    }
    std::sort(selected.begin(), selected.end(),
              [](const EntityMention& a, const EntityMention& b) { return a.begin < b.begin; });
    return selected;
}

std::vector<Obligation> extract_obligations(const Document& doc, const RegulatoryGraph& g,
                                            const ExtractionConfig& cfg) {
    std::vector<Obligation> out;
    static const std::unordered_set<std::string> kDeterminers = {"the", "a",   "an",
                                                                 "each", "every", "all", "any"};
    for (const auto& prov : doc.provisions) {
        int ordinal = 0;
        for (const auto& sent_text : split_sentences(prov.text)) {
            const Sentence sent = Sentence::parse(sent_text);
            const auto cue = find_cue(sent);
            if (!cue) continue;
            if (cue->modality != DeonticModality::Obligation &&
                cue->modality != DeonticModality::Prohibition) {
                continue;
            }
            const auto mentions = extract_entities(sent, cfg);
            const auto clauses = clause_ranges(sent);
            const std::pair<int, int> condition =
                clauses.empty() ? std::pair<int, int>{-1, -1} : clauses.front();

            Obligation ob;
            ob.obligation_id = prov.provision_id + "#" + std::to_string(ordinal);
            ob.modality = cue->modality;
            ob.source_provision = prov.provision_id;
            ob.sentence = sent.raw;

            if (condition.first >= 0) {
                std::string cond;
                for (int i = condition.first; i < condition.second; ++i) {
                    if (!cond.empty()) cond.push_back(' ');
                    cond += sent.tokens[i].text;
                }
                ob.condition = cond;
            }

            int action_start = cue->cue_index + (cue->negated ? 2 : 1);
            std::string action;
            for (int i = action_start; i < static_cast<int>(sent.tokens.size()); ++i) {
                if (condition.first >= 0 && i >= condition.first && i < condition.second) continue;
                if (!action.empty()) action.push_back(' ');
                action += sent.tokens[i].text;
            }
            ob.action = action;

            // Entity: prefer role mentions, else the first mention, else the
            // sentence subject span before the cue.
            const EntityMention* best = nullptr;
            for (const auto& m : mentions) {
                if (m.etype != EntityType::Regulated_Entity &&
                    m.etype != EntityType::Reporting_Entity) {
                    continue;
                }
                if (!best || m.confidence > best->confidence) best = &m;
            }
            if (!best && !mentions.empty()) best = &mentions.front();
            double entity_conf;
            if (best) {
                ob.entity_surface = best->surface;
                ob.entity_type = best->etype;
                entity_conf = best->confidence;
            } else {
                std::string subject;
                int sb = 0;
                if (condition.first == 0) sb = condition.second;
                for (int i = sb; i < cue->cue_index; ++i) {
                    if (subject.empty() && kDeterminers.count(sent.tokens[i].text)) continue;
                    if (!subject.empty()) subject.push_back(' ');
                    subject += sent.tokens[i].text;
                }
                ob.entity_surface = subject.empty() ? "unspecified" : subject;
                ob.entity_type = EntityType::Regulated_Entity;
                entity_conf = 0.5;
            }
            ob.confidence = std::min(cue->confidence, entity_conf);

            std::set<EntityType> types;
            for (const auto& m : mentions) types.insert(m.etype);
            ob.mention_types.assign(types.begin(), types.end());

            ob.crossrefs = resolve_crossrefs(sent, prov.provision_id, g, cfg);
            out.push_back(std::move(ob));
            ++ordinal;
        }
    }
    return out;
}

}  // namespace regkit
