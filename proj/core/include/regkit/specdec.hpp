#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace regkit {

using TokenSeq = std::vector<std::string>;

struct SpecDecConfig {
    int heads = 3;                 // draft predictors per step
    double step_overhead = 0.15;   // per-verification-step overhead epsilon
    double base_token_cost = 1.0;  // latency units per sequential token
    int prompt_count = 16;
    int gen_length = 64;
    int order = 3;                 // n-gram order of verifier and heads
    double smoothing_k = 0.01;
};

/**
 * @brief Add-k smoothed n-gram model with hierarchical context tables.
 *
 * Counts are kept for every context length in [0, order-1], so truncated
 * contexts (as the draft heads use) query the matching table. Greedy
 * decoding breaks probability ties lexicographically.
 */
class NgramModel {
public:
    NgramModel() = default;
    NgramModel(int order, double smoothing_k) : order_(order), smoothing_k_(smoothing_k) {}

    int order() const { return order_; }
    double smoothing() const { return smoothing_k_; }
    const std::set<std::string>& vocab() const { return vocab_; }

    /// P(token | last min(context_len, order-1) tokens of context), add-k smoothed.
    double probability(const TokenSeq& context, const std::string& token) const;

    /// Deterministic greedy argmax over the vocabulary.
    std::string greedy_next(const TokenSeq& context) const;

    /// Counts for offset predictions: context of length `context_len`
    /// predicting the token `offset` positions ahead (offset >= 1).
    void accumulate(const TokenSeq& sentence, int context_len, int offset);

    static constexpr const char* kBos = "<s>";

private:
    struct Table {
        std::map<std::string, std::map<std::string, int>> counts;  // context -> token -> n
        std::map<std::string, int> totals;
    };
    const Table& table(int context_len) const;
    static std::string key_of(const TokenSeq& context, int len);

    int order_ = 3;
    double smoothing_k_ = 0.01;
    std::vector<Table> tables_;  // indexed by context length
    std::set<std::string> vocab_;
};

/**
 * @brief Train the verifier model on sentence-padded corpus counts.
 *
 * Every context length in [0, order-1] is accumulated so truncated queries
 * are exact. Throws std::invalid_argument on an empty corpus or order < 1.
 */
NgramModel train_ngram(const std::vector<TokenSeq>& corpus, int order,
                       double smoothing_k = 0.01);

/**
 * @brief M parallel draft predictors.
 *
 * Head i proposes the token at offset i from the end of the known context,
 * using a context truncated to (order - i) tokens.
 */
struct HeadSet {
    std::vector<std::function<std::string(const TokenSeq&)>> predictors;

    int size() const { return static_cast<int>(predictors.size()); }

    /// Skip-gram heads trained on the corpus: head i learns
    /// (order - i)-token contexts mapped to the token i positions ahead.
    static HeadSet train(const std::vector<TokenSeq>& corpus, int order, int heads,
                         double smoothing_k = 0.01);

    /// Heads that replay the verifier's own sequential greedy decode;
    /// acceptance is 1.0 by construction.
    static HeadSet oracle(const NgramModel& verifier, int heads);

    /// Heads that always propose one fixed token.
    static HeadSet constant(const std::string& token, int heads);
};

struct SimResult {
    long long proposed = 0;
    long long accepted = 0;
    double acceptance_rate = 0.0;
    double tokens_per_step = 1.0;
    double speedup = 0.0;
    std::vector<double> latency_samples;  // one per prompt
    double p50 = 0.0;
    double p99 = 0.0;
};

/**
 * @brief Mean self-scored cross-entropy in bits per token.
 */
double corpus_entropy(const NgramModel& model, const std::vector<TokenSeq>& corpus);

/**
 * @brief Greedy draft-and-verify simulation.
 *
 * Each step the heads propose M tokens; the verifier decodes the same
 * positions sequentially; the longest matching prefix is accepted and the
 * first corrected token always emits, so the context advances by
 * accepted+1. Deterministic.
 */
SimResult simulate_decoding(const NgramModel& verifier, const HeadSet& heads,
                            const std::vector<TokenSeq>& prompts, const SpecDecConfig& cfg);

/// tokens_per_step / (1 + epsilon): tokens gained per verification pass,
/// discounted by per-step overhead.
double speedup_estimate(const SimResult& result, const SpecDecConfig& cfg);

/// Nearest-rank percentiles; throws std::invalid_argument on empty input.
std::pair<double, double> latency_percentiles(std::vector<double> samples);

/// Whitespace-tokenized lines -> sentences; blank lines dropped.
std::vector<TokenSeq> corpus_from_lines(const std::vector<std::string>& lines);

}  // namespace regkit
