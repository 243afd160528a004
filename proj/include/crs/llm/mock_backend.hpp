#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crs/llm/backend.hpp"

namespace crs {

// One scripted completion. A rule without `prompt_contains` matches any
// prompt; otherwise the prompt must contain the substring.
struct MockRule {
    std::optional<std::string> prompt_contains;
    std::string response;
};

// Deterministic offline backend.
//
// complete(): consumes the first unused rule that matches the prompt, in
// script order, so a run is a pure function of (prompt sequence, script).
// An unmatched prompt is a BackendError.
//
// embed(): exact-match embedder. Every distinct normalized string gets its
// own one-hot axis, so cosine similarity is exactly 1 for equal strings and
// 0 for different ones.
class MockBackend : public LlmBackend {
public:
    MockBackend() = default;
    explicit MockBackend(std::vector<MockRule> script);

    // Script file: {"entries": [{"contains": "...", "response": "..."}]}.
    static std::vector<MockRule> load_script(const std::filesystem::path& file);

    Completion complete(const std::string& prompt, const GenerationParams& params = {}) override;
    EmbeddingVector embed(const std::string& text) override;
    std::string id() const override { return "mock"; }

    std::size_t remaining_rules() const;

    static constexpr std::size_t kEmbeddingDimension = 1024;

private:
    std::vector<MockRule> script_;
    std::vector<bool> used_;
    std::unordered_map<std::string, std::size_t> axes_;
    mutable std::mutex mutex_;
};

}  // namespace crs
