#include "crs/llm/mock_backend.hpp"

#include <fstream>

#include <json.hpp>

#include "crs/errors.hpp"
#include "crs/text.hpp"

namespace crs {

MockBackend::MockBackend(std::vector<MockRule> script)
    : script_(std::move(script)), used_(script_.size(), false) {}

std::vector<MockRule> MockBackend::load_script(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read mock script " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("mock script is not valid JSON: ") + e.what(), "/");
    }
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
        throw SchemaError("mock script must be an object with an 'entries' array", "/entries");
    }
    std::vector<MockRule> rules;
    std::size_t i = 0;
    for (const auto& entry : j["entries"]) {
        const std::string ptr = "/entries/" + std::to_string(i++);
        if (!entry.is_object() || !entry.contains("response") || !entry["response"].is_string()) {
            throw SchemaError("mock entry needs a string 'response'", ptr + "/response");
        }
        MockRule rule;
        rule.response = entry["response"].get<std::string>();
        if (entry.contains("contains")) {
            if (!entry["contains"].is_string()) {
                throw SchemaError("'contains' must be a string", ptr + "/contains");
            }
            rule.prompt_contains = entry["contains"].get<std::string>();
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

Completion MockBackend::complete(const std::string& prompt, const GenerationParams&) {
    if (prompt.empty()) throw ValidationError("prompt must be non-empty");
    std::lock_guard<std::mutex> lock(mutex_);
    for (std::size_t i = 0; i < script_.size(); ++i) {
        if (used_[i]) continue;
        if (script_[i].prompt_contains &&
            prompt.find(*script_[i].prompt_contains) == std::string::npos) {
            continue;
        }
        used_[i] = true;
        return Completion{script_[i].response, id(), 0.0};
    }
    throw BackendError("mock backend has no scripted response for prompt");
}

EmbeddingVector MockBackend::embed(const std::string& input) {
    if (input.empty()) throw ValidationError("embed input must be non-empty");
    const std::string key = text::normalize_name(input);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = axes_.find(key);
    if (it == axes_.end()) {
        if (axes_.size() >= kEmbeddingDimension) {
            throw BackendError("mock embedder ran out of axes (max " +
                               std::to_string(kEmbeddingDimension) + " distinct strings)");
        }
        it = axes_.emplace(key, axes_.size()).first;
    }
    EmbeddingVector v;
    v.values.assign(kEmbeddingDimension, 0.0);
    v.values[it->second] = 1.0;
    return v;
}

std::size_t MockBackend::remaining_rules() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::size_t left = 0;
    for (const bool u : used_) {
        if (!u) ++left;
    }
    return left;
}

}  // namespace crs
