#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace crs {

struct GenerationParams {
    double temperature = 0.0;
    int max_tokens = 0;  // 0 = provider default
};

struct Completion {
    std::string text;
    std::string provider_id;
    double latency_ms = 0.0;
};

struct EmbeddingVector {
    std::vector<double> values;

    std::size_t dimension() const { return values.size(); }
    bool operator==(const EmbeddingVector&) const = default;
};

// Text-generation + embedding provider. Implementations must tolerate
// concurrent calls.
class LlmBackend {
public:
    virtual ~LlmBackend() = default;

    // Throws BackendError after exhausting retries, AuthError on rejected
    // credentials, ValidationError on an empty prompt.
    virtual Completion complete(const std::string& prompt, const GenerationParams& params = {}) = 0;

    // Throws like complete(); empty text is a ValidationError.
    virtual EmbeddingVector embed(const std::string& text) = 0;

    virtual std::string id() const = 0;
};

// dot(a,b) / (|a| |b|). Throws DimensionMismatchError / ZeroVectorError.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace crs
