#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crs/agents/chain.hpp"
#include "crs/llm/backend.hpp"
#include "crs/llm/http_backend.hpp"
#include "crs/selection/ppr.hpp"
#include "crs/selection/selector.hpp"

namespace crs {

// Which provider backs a pipeline stage. type "mock" replays a script file,
// "http" talks to an OpenAI-compatible endpoint. The embeddings binding also
// accepts "exact_match" (a script-less mock, usable for embedding only).
struct BackendBinding {
    std::string type = "mock";
    std::filesystem::path script;  // mock only; may be empty
    HttpBackendConfig http;        // http only
};

// Everything a pipeline run needs. The defaults work with no config file at
// all when the bound backends are mocks.
struct PipelineConfig {
    std::size_t chunk_size = 512;
    std::string triplet_delimiter = "|";
    unsigned parallelism = 4;
    std::filesystem::path output_dir = "out";
    std::filesystem::path prompt_dir;  // empty = built-in templates
    PprConfig ppr;
    DegreeMode degree_mode = DegreeMode::EdgeCount;
    AgentOptions agents;
    bool na_as_zero = false;
    std::map<std::string, BackendBinding> backends;  // triplets / agents / embeddings

    static PipelineConfig defaults();

    // Reads a JSON config; relative paths inside resolve against the config
    // file's directory. Throws IoError / SchemaError.
    static PipelineConfig load(const std::filesystem::path& file);

    const BackendBinding& binding(const std::string& stage) const;
    PromptLibrary prompts() const;
};

// Instantiates the backend for one binding. Throws for unknown types.
std::unique_ptr<LlmBackend> make_backend(const BackendBinding& binding);

}  // namespace crs
