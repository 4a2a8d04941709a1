#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace regkit {

enum class Framework { SEC, MIFID2, BASEL3, OTHER };

std::string to_string(Framework f);
Framework framework_from_string(std::string_view s);

/**
 * @brief One regulatory document: an ordered list of provisions.
 *
 * Provisions are the atomic citation targets; chunking never crosses a
 * provision boundary.
 */
struct Provision {
    std::string provision_id;
    std::string text;
};

struct Document {
    std::string doc_id;
    Framework framework = Framework::OTHER;
    std::string title;
    std::vector<Provision> provisions;
};

struct Chunk {
    std::string chunk_id;
    std::string doc_id;
    std::string provision_id;
    std::string text;        // normalized: tokens joined by single spaces
    int token_count = 0;
};

/**
 * @brief Fixed-length dense vector with cached Euclidean norm.
 */
struct Embedding {
    std::vector<double> values;
    double norm = 0.0;

    bool is_zero() const { return norm == 0.0; }
    static Embedding of(std::vector<double> v);
};

/**
 * @brief Deterministic feature-hashing embedder configuration.
 *
 * Identical (text, config) pairs always produce bitwise-identical vectors,
 * so every downstream score is reproducible. The interface is the swap
 * point for a learned encoder.
 */
struct EmbedderConfig {
    int dim = 256;                  // must be >= 8
    std::uint64_t hash_seed = 0;
    double idf_smoothing = 1.0;     // token weight = log(idf_smoothing + tf)
};

/// Token with byte offsets into the original string.
struct TokenSpan {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

/**
 * @brief Lowercase alphanumeric tokenization.
 *
 * Splits on any non-alphanumeric byte, except a period flanked by digits
 * on both sides ("229.402" stays one token). Deterministic; empty input
 * yields an empty list.
 */
std::vector<std::string> tokenize(std::string_view text);

/// Same tokenization, keeping byte offsets for span-level consumers.
std::vector<TokenSpan> tokenize_spans(std::string_view text);

/**
 * @brief Split provision text into sentences.
 *
 * Boundaries are '.', '!', '?' and newlines. A period does not end a
 * sentence inside digit groups ("412(1)." vs "229.402") or after common
 * citation abbreviations ("Art.", "No.", "para.").
 */
std::vector<std::string> split_sentences(std::string_view text);

/// Fixed English stopword set (includes deontic modals).
bool is_stopword(std::string_view token);

/**
 * @brief Sliding-window chunking within provision boundaries.
 *
 * Consecutive chunks of one provision overlap by exactly `overlap` tokens;
 * de-overlapped concatenation reproduces the provision token stream.
 * Throws std::invalid_argument unless max_tokens > overlap >= 0.
 */
std::vector<Chunk> chunk_document(const Document& doc, int max_tokens, int overlap);

/**
 * @brief Feature-hashed bag-of-tokens embedding.
 *
 * Each distinct token is hashed to one coordinate with a hash-derived sign
 * and weight log(idf_smoothing + tf); the result is L2-normalized unless
 * all-zero.
 */
Embedding embed_text(std::string_view text, const EmbedderConfig& cfg);

/**
 * @brief Cosine similarity in [-1, 1]; defined as 0 when either norm is 0.
 *
 * Throws std::invalid_argument on dimension mismatch.
 */
double cosine_sim(const Embedding& a, const Embedding& b);

/// Seeded 64-bit FNV-1a; the project-wide deterministic string hash.
std::uint64_t hash64(std::string_view data, std::uint64_t seed);

}  // namespace regkit
