#include "regkit/specdec.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace regkit {

std::string NgramModel::key_of(const TokenSeq& context, int len) {
    std::string key;
    const int n = static_cast<int>(context.size());
    const int start = n - len;
    for (int i = 0; i < len; ++i) {
        if (i) key.push_back('\x1f');
        const int idx = start + i;
        key += idx < 0 ? kBos : context[static_cast<std::size_t>(idx)];
    }
    return key;
}

const NgramModel::Table& NgramModel::table(int context_len) const {
    static const Table kEmpty;
    if (context_len < 0 || context_len >= static_cast<int>(tables_.size())) return kEmpty;
    return tables_[static_cast<std::size_t>(context_len)];
}

void NgramModel::accumulate(const TokenSeq& sentence, int context_len, int offset) {
    if (static_cast<int>(tables_.size()) <= context_len) {
        tables_.resize(static_cast<std::size_t>(context_len) + 1);
    }
    Table& t = tables_[static_cast<std::size_t>(context_len)];
    const int n = static_cast<int>(sentence.size());
    for (int pos = 0; pos < n; ++pos) {
        // Context is the context_len tokens ending `offset` positions before
        // the target, padded with BOS off the left edge.
        TokenSeq ctx;
        for (int i = pos - offset - context_len + 1; i <= pos - offset; ++i) {
            ctx.push_back(i < 0 ? kBos : sentence[static_cast<std::size_t>(i)]);
        }
        const std::string key = key_of(ctx, context_len);
        t.counts[key][sentence[static_cast<std::size_t>(pos)]]++;
        t.totals[key]++;
        vocab_.insert(sentence[static_cast<std::size_t>(pos)]);
    }
}

double NgramModel::probability(const TokenSeq& context, const std::string& token) const {
    const int len = std::min<int>(order_ - 1, static_cast<int>(context.size()));
    const Table& t = table(len);
    const std::string key = key_of(context, len);
    const double v = static_cast<double>(vocab_.size());
    if (v == 0.0) return 0.0;
    int count = 0;
    int total = 0;
    auto it = t.counts.find(key);
    if (it != t.counts.end()) {
        auto jt = it->second.find(token);
        if (jt != it->second.end()) count = jt->second;
        total = t.totals.at(key);
    }
    return (count + smoothing_k_) / (total + smoothing_k_ * v);
}

std::string NgramModel::greedy_next(const TokenSeq& context) const {
    const int len = std::min<int>(order_ - 1, static_cast<int>(context.size()));
    const Table& t = table(len);
    const std::string key = key_of(context, len);
    auto it = t.counts.find(key);
    if (it != t.counts.end()) {
        // Smoothing is uniform across the vocabulary, so the argmax is the
        // highest count; lexicographic tie-break comes from map order.
        int best = -1;
        std::string tok;
        for (const auto& [candidate, count] : it->second) {
            if (count > best) {
                best = count;
                tok = candidate;
            }
        }
        if (best >= 0) return tok;
    }
    // Unseen context: uniform distribution, lexicographically first token.
    return vocab_.empty() ? std::string(kBos) : *vocab_.begin();
}

NgramModel train_ngram(const std::vector<TokenSeq>& corpus, int order, double smoothing_k) {
    if (order < 1) throw std::invalid_argument("train_ngram: order must be >= 1");
    bool any = false;
    for (const auto& s : corpus)
        if (!s.empty()) any = true;
    if (!any) throw std::invalid_argument("train_ngram: empty corpus");
    NgramModel model(order, smoothing_k);
    for (const auto& sentence : corpus) {
        if (sentence.empty()) continue;
        for (int len = 0; len < order; ++len) model.accumulate(sentence, len, 1);
    }
    return model;
}

HeadSet HeadSet::train(const std::vector<TokenSeq>& corpus, int order, int heads,
                       double smoothing_k) {
    if (heads < 1) throw std::invalid_argument("HeadSet::train: need at least one head");
    HeadSet set;
    for (int i = 1; i <= heads; ++i) {
        const int context_len = std::max(0, order - i);
        auto model = std::make_shared<NgramModel>(context_len + 1, smoothing_k);
        for (const auto& sentence : corpus) {
            if (sentence.empty()) continue;
            model->accumulate(sentence, context_len, i);
        }
        set.predictors.push_back(
            [model](const TokenSeq& context) { return model->greedy_next(context); });
    }
    return set;
}

HeadSet HeadSet::oracle(const NgramModel& verifier, int heads) {
    HeadSet set;
    for (int i = 1; i <= heads; ++i) {
        set.predictors.push_back([&verifier, i](const TokenSeq& context) {
            TokenSeq ctx = context;
            std::string tok;
            for (int step = 0; step < i; ++step) {
                tok = verifier.greedy_next(ctx);
                ctx.push_back(tok);
            }
            return tok;
        });
    }
    return set;
}

HeadSet HeadSet::constant(const std::string& token, int heads) {
    HeadSet set;
    for (int i = 0; i < heads; ++i) {
        set.predictors.push_back([token](const TokenSeq&) { return token; });
    }
    return set;
}

double corpus_entropy(const NgramModel& model, const std::vector<TokenSeq>& corpus) {
    double bits = 0.0;
    long long positions = 0;
    for (const auto& sentence : corpus) {
        TokenSeq context;
        for (const auto& token : sentence) {
            const double p = model.probability(context, token);
            bits += -std::log2(std::max(p, 1e-300));
            context.push_back(token);
            ++positions;
        }
    }
    return positions == 0 ? 0.0 : bits / static_cast<double>(positions);
}

SimResult simulate_decoding(const NgramModel& verifier, const HeadSet& heads,
                            const std::vector<TokenSeq>& prompts, const SpecDecConfig& cfg) {
    SimResult result;
    const int m = heads.size();
    long long total_emitted = 0;
    long long total_steps = 0;
    for (const auto& prompt : prompts) {
        TokenSeq context = prompt;
        int emitted = 0;
        int steps = 0;
        while (emitted < cfg.gen_length) {
            // Draft phase: every head proposes from the same frozen context.
            std::vector<std::string> proposals;
            proposals.reserve(static_cast<std::size_t>(m));
            for (const auto& head : heads.predictors) proposals.push_back(head(context));
            // Verify phase: sequential greedy decode of the same positions.
            std::vector<std::string> verified;
            TokenSeq scratch = context;
            for (int i = 0; i < m; ++i) {
                verified.push_back(verifier.greedy_next(scratch));
                scratch.push_back(verified.back());
            }
            int run = 0;
            while (run < m && proposals[static_cast<std::size_t>(run)] ==
                                   verified[static_cast<std::size_t>(run)]) {
                ++run;
            }
            result.proposed += m;
            result.accepted += run;
            // Accepted prefix plus the first verifier-corrected token.
            for (int i = 0; i < run; ++i) context.push_back(verified[static_cast<std::size_t>(i)]);
            if (run < m) {
                context.push_back(verified[static_cast<std::size_t>(run)]);
            } else {
                context.push_back(verifier.greedy_next(context));
            }
            emitted += run + 1;
            ++steps;
        }
        total_emitted += emitted;
        total_steps += steps;
        result.latency_samples.push_back(static_cast<double>(steps) *
                                         (1.0 + cfg.step_overhead) * cfg.base_token_cost);
    }
    result.acceptance_rate =
        result.proposed == 0 ? 0.0
                             : static_cast<double>(result.accepted) /
                                   static_cast<double>(result.proposed);
    result.tokens_per_step =
        total_steps == 0 ? 1.0
                         : static_cast<double>(total_emitted) / static_cast<double>(total_steps);
    result.speedup = speedup_estimate(result, cfg);
    if (!result.latency_samples.empty()) {
        auto [p50, p99] = latency_percentiles(result.latency_samples);
        result.p50 = p50;
        result.p99 = p99;
    }
    return result;
}

double speedup_estimate(const SimResult& result, const SpecDecConfig& cfg) {
    return result.tokens_per_step / (1.0 + cfg.step_overhead);
}

std::pair<double, double> latency_percentiles(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("latency_percentiles: empty samples");
    std::sort(samples.begin(), samples.end());
    const auto nearest_rank = [&](double pct) {
        const double n = static_cast<double>(samples.size());
        std::size_t rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
        if (rank == 0) rank = 1;
        return samples[rank - 1];
    };
    return {nearest_rank(50.0), nearest_rank(99.0)};
}

std::vector<TokenSeq> corpus_from_lines(const std::vector<std::string>& lines) {
    std::vector<TokenSeq> corpus;
    for (const auto& line : lines) {
        TokenSeq sentence;
        std::istringstream is(line);
        std::string tok;
        while (is >> tok) sentence.push_back(tok);
        if (!sentence.empty()) corpus.push_back(std::move(sentence));
    }
    return corpus;
}

}  // namespace regkit
