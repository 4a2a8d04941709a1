#include "regkit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace regkit {

std::string to_string(Framework f) {
    switch (f) {
        case Framework::SEC: return "SEC";
        case Framework::MIFID2: return "MIFID2";
        case Framework::BASEL3: return "BASEL3";
        case Framework::OTHER: return "OTHER";
    }
    return "OTHER";
}

Framework framework_from_string(std::string_view s) {
    if (s == "SEC") return Framework::SEC;
    if (s == "MIFID2") return Framework::MIFID2;
    if (s == "BASEL3") return Framework::BASEL3;
    return Framework::OTHER;
}

namespace {

inline bool is_alnum(unsigned char c) {
    return std::isalnum(c) != 0;
}

inline char lower(unsigned char c) {
    return static_cast<char>(std::tolower(c));
}

const std::unordered_set<std::string>& stopword_set() {
    static const std::unordered_set<std::string> kStopwords = {
        "a",     "an",    "and",   "any",   "are",   "as",     "at",    "be",
        "been",  "both",  "but",   "by",    "each",  "for",    "from",  "has",
        "have",  "if",    "in",    "into",  "is",    "it",     "its",   "may",
        "must",  "no",    "not",   "of",    "on",    "or",     "shall", "should",
        "so",    "such",  "than",  "that",  "the",   "their",  "them",  "then",
        "there", "these", "they",  "this",  "those", "to",     "under", "unless",
        "upon",  "was",   "were",  "when",  "where", "which",  "while", "who",
        "will",  "with",  "within", "would",
    };
    return kStopwords;
}

// Abbreviations whose trailing period does not end a sentence.
const std::unordered_set<std::string>& abbreviation_set() {
    static const std::unordered_set<std::string> kAbbrev = {
        "art", "no", "para", "cf", "vs", "etc", "eg", "ie",
    };
    return kAbbrev;
}

}  // namespace

bool is_stopword(std::string_view token) {
    return stopword_set().count(std::string(token)) > 0;
}

std::vector<TokenSpan> tokenize_spans(std::string_view text) {
    std::vector<TokenSpan> out;
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!is_alnum(c)) {
            ++i;
            continue;
        }
        std::size_t begin = i;
        std::string tok;
        while (i < n) {
            c = static_cast<unsigned char>(text[i]);
            if (is_alnum(c)) {
                tok.push_back(lower(c));
                ++i;
                continue;
            }
            // Keep a period flanked by digits ("229.402" is one token).
            if (c == '.' && i > begin && i + 1 < n &&
                std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                tok.push_back('.');
                ++i;
                continue;
            }
            break;
        }
        out.push_back(TokenSpan{std::move(tok), begin, i});
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    for (auto& span : tokenize_spans(text)) out.push_back(std::move(span.text));
    return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    std::string current;
    const std::size_t n = text.size();
    auto flush = [&]() {
        std::size_t a = current.find_first_not_of(" \t\r");
        if (a == std::string::npos) {
            current.clear();
            return;
        }
        std::size_t b = current.find_last_not_of(" \t\r");
        sentences.push_back(current.substr(a, b - a + 1));
        current.clear();
    };
    for (std::size_t i = 0; i < n; ++i) {
        char c = text[i];
        if (c == '\n' || c == '!' || c == '?') {
            if (c != '\n') current.push_back(c);
            flush();
            continue;
        }
        if (c == '.') {
            bool digit_left = i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1]));
            bool digit_right = i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1]));
            if (digit_left && digit_right) {
                current.push_back(c);
                continue;
            }
            // Trailing word before the period, lowercased.
            std::string word;
            for (std::size_t j = current.size(); j > 0; --j) {
                unsigned char w = static_cast<unsigned char>(current[j - 1]);
                if (!std::isalpha(w)) break;
                word.insert(word.begin(), lower(w));
            }
            if (abbreviation_set().count(word) > 0) {
                current.push_back(c);
                continue;
            }
            current.push_back(c);
            flush();
            continue;
        }
        current.push_back(c);
    }
    flush();
    return sentences;
}

std::vector<Chunk> chunk_document(const Document& doc, int max_tokens, int overlap) {
    if (overlap < 0 || max_tokens <= overlap) {
        throw std::invalid_argument("chunk_document: require max_tokens > overlap >= 0");
    }
    std::vector<Chunk> chunks;
    for (const auto& prov : doc.provisions) {
        const auto tokens = tokenize(prov.text);
        const int n = static_cast<int>(tokens.size());
        if (n == 0) continue;
        int start = 0;
        int index = 0;
        while (true) {
            const int end = std::min(start + max_tokens, n);
            std::string text;
            for (int t = start; t < end; ++t) {
                if (t > start) text.push_back(' ');
                text += tokens[t];
            }
            char id[32];
            std::snprintf(id, sizeof(id), ":%04d", index);
            chunks.push_back(Chunk{doc.doc_id + ":" + prov.provision_id + id,
                                   doc.doc_id, prov.provision_id, std::move(text),
                                   end - start});
            ++index;
            if (end == n) break;
            start += max_tokens - overlap;
        }
    }
    return chunks;
}

std::uint64_t hash64(std::string_view data, std::uint64_t seed) {
    // FNV-1a over the seed bytes followed by the data bytes.
    std::uint64_t h = 14695981039346656037ull;
    for (int i = 0; i < 8; ++i) {
        h ^= (seed >> (i * 8)) & 0xffu;
        h *= 1099511628211ull;
    }
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Embedding Embedding::of(std::vector<double> v) {
    Embedding e;
    e.values = std::move(v);
    double sq = 0.0;
    for (double x : e.values) sq += x * x;
    e.norm = std::sqrt(sq);
    return e;
}

Embedding embed_text(std::string_view text, const EmbedderConfig& cfg) {
    if (cfg.dim < 8) throw std::invalid_argument("embed_text: dim must be >= 8");
    std::unordered_map<std::string, int> tf;
    for (auto& tok : tokenize(text)) tf[tok]++;

    std::vector<double> v(static_cast<std::size_t>(cfg.dim), 0.0);
    // Iterate tokens in sorted order so accumulation order is canonical.
    std::vector<const std::pair<const std::string, int>*> items;
    items.reserve(tf.size());
    for (const auto& kv : tf) items.push_back(&kv);
    std::sort(items.begin(), items.end(),
              [](auto* a, auto* b) { return a->first < b->first; });
    constexpr std::uint64_t kSignSalt = 0x9e3779b97f4a7c15ull;
    for (const auto* kv : items) {
        const std::uint64_t h = hash64(kv->first, cfg.hash_seed);
        const std::uint64_t s = hash64(kv->first, cfg.hash_seed ^ kSignSalt);
        const std::size_t idx = static_cast<std::size_t>(h % static_cast<std::uint64_t>(cfg.dim));
        const double sign = (s >> 63) ? -1.0 : 1.0;
        v[idx] += sign * std::log(cfg.idf_smoothing + static_cast<double>(kv->second));
    }
    Embedding e = Embedding::of(std::move(v));
    if (e.norm > 0.0) {
        for (double& x : e.values) x /= e.norm;
        e.norm = 1.0;
    }
    return e;
}

double cosine_sim(const Embedding& a, const Embedding& b) {
    if (a.values.size() != b.values.size()) {
        throw std::invalid_argument("cosine_sim: dimension mismatch");
    }
    if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
    double c = dot / (a.norm * b.norm);
    return std::clamp(c, -1.0, 1.0);
}

}  // namespace regkit
