#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "regkit/config.hpp"
#include "regkit/eval.hpp"
#include "regkit/specdec.hpp"

namespace regkit {

/**
 * @brief Synthetic benchmark request: document count, gold class mix, and
 * frameworks to rotate over.
 */
struct FixtureSpec {
    int n_docs = 4;
    int n_compliant = 6;
    int n_partial = 4;
    int n_full = 2;
    std::vector<Framework> frameworks = {Framework::SEC, Framework::MIFID2, Framework::BASEL3};

    int n_obligations() const { return n_compliant + n_partial + n_full; }
};

struct Fixture {
    std::vector<Document> documents;
    std::vector<PolicyClause> policies;
    RegulatoryGraph graph;
    std::vector<Obligation> gold_obligations;
    std::map<std::string, GapClass> gold_labels;  // obligation_id -> class
    std::uint64_t seed = 0;

    AblationFixture as_ablation_fixture() const;
};

/**
 * @brief Deterministic synthetic corpus with planted ground truth.
 *
 * Sentences carry planted modals, entities, thresholds and citations;
 * policy clauses are tuned at construction time until the pipeline's own
 * scorer lands each obligation in its target class, so gold labels match
 * the engine by construction. Throws std::runtime_error when a requested
 * band is infeasible under the given config.
 */
Fixture generate_fixture(const FixtureSpec& spec, std::uint64_t seed, const PipelineConfig& cfg);

/**
 * @brief Preset where four obligations' correct clauses are reachable only
 * through a KG-promoted context provision.
 *
 * With KG re-ranking on, every gold label is reproduced; with it off, the
 * dependent obligations misclassify. Generation asserts both directions.
 */
Fixture kg_dependent_fixture(std::uint64_t seed, const PipelineConfig& cfg);

/**
 * @brief Token corpus with tunable entropy: a deterministic vocabulary
 * cycle perturbed by noise with probability `noise`.
 */
std::vector<TokenSeq> entropy_corpus(int vocab_size, double noise, int sentences,
                                     int sentence_len, std::uint64_t seed);

/// Write documents.json, policies.json, graph.json, gold_obligations.jsonl,
/// gold_labels.json and config.json into `dir`.
void save_fixture(const Fixture& fixture, const PipelineConfig& cfg, const std::string& dir);

/// Load the files save_fixture wrote.
Fixture load_fixture(const std::string& dir);

}  // namespace regkit
