#pragma once

#include <string>

#include "crs/llm/backend.hpp"

namespace crs {

// OpenAI-compatible chat + embeddings endpoint. The API key comes from the
// environment only, never from flags or config values.
struct HttpBackendConfig {
    std::string base_url;             // e.g. "http://localhost:8080/v1"
    std::string model;
    std::string embedding_model;      // defaults to `model` when empty
    std::string api_key_env = "CRS_API_KEY";
    int max_retries = 3;              // transient failures only
    int timeout_ms = 30000;
    int backoff_initial_ms = 250;     // doubles per retry
};

class HttpBackend : public LlmBackend {
public:
    explicit HttpBackend(HttpBackendConfig config);

    Completion complete(const std::string& prompt, const GenerationParams& params = {}) override;
    EmbeddingVector embed(const std::string& text) override;
    std::string id() const override;

private:
    std::string post_json(const std::string& path, const std::string& body);

    HttpBackendConfig config_;
    std::string scheme_host_;  // scheme://host[:port]
    std::string path_prefix_;
};

}  // namespace crs
