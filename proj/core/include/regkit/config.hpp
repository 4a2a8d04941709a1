#pragma once

#include <string>

#include "regkit/corpus.hpp"
#include "regkit/extraction.hpp"
#include "regkit/gap.hpp"
#include "regkit/retrieval.hpp"
#include "regkit/specdec.hpp"

namespace regkit {

struct ChunkingConfig {
    int max_tokens = 128;
    int overlap = 16;
};

/**
 * @brief Bundle of all stage configurations plus the run seed.
 *
 * Defaults pin the standard operating point: alpha 0.7, beta 0.3,
 * delta 0.6 (deploy 0.45), tau 0.85, lambda (0.4, 0.3, 0.3), 3 draft heads.
 */
struct PipelineConfig {
    EmbedderConfig embedder;
    ChunkingConfig chunking;
    RetrievalConfig retrieval;
    ExtractionConfig extraction = ExtractionConfig::defaults();
    GapConfig gap;
    SpecDecConfig specdec;
    std::uint64_t seed = 42;

    static PipelineConfig defaults() { return PipelineConfig{}; }
};

/// JSON (de)serialization; parse(serialize(x)) round-trips exactly.
std::string serialize_config(const PipelineConfig& cfg);
PipelineConfig parse_config(const std::string& json_text);
PipelineConfig load_config(const std::string& path);
void save_config(const PipelineConfig& cfg, const std::string& path);

}  // namespace regkit
