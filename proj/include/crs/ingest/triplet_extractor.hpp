#pragma once

#include <string>
#include <vector>

#include "crs/agents/prompt_template.hpp"
#include "crs/core/types.hpp"
#include "crs/ingest/chunker.hpp"
#include "crs/llm/backend.hpp"

namespace crs {

struct TripletExtraction {
    std::vector<SpoTriplet> triplets;
    std::size_t dropped_lines = 0;
};

// Drives the triplet backend over chunks and parses its line-oriented
// response: one triplet per line, three fields separated by `delimiter`.
// Malformed lines are dropped and counted, never fabricated.
class TripletExtractor {
public:
    explicit TripletExtractor(PromptTemplate prompt, std::string delimiter = "|")
        : prompt_(std::move(prompt)), delimiter_(std::move(delimiter)) {}

    TripletExtraction extract(const Chunk& chunk, LlmBackend& backend) const;

    // Chunks are independent; up to `parallelism` backend calls run at a
    // time and results are merged back in chunk order.
    TripletExtraction extract_all(const std::vector<Chunk>& chunks, LlmBackend& backend,
                                  unsigned parallelism) const;

    // Exposed for tests.
    TripletExtraction parse_response(const std::string& response, std::size_t chunk_index) const;

private:
    PromptTemplate prompt_;
    std::string delimiter_;
};

}  // namespace crs
