#include "crs/llm/backend.hpp"

#include <cmath>

#include "crs/errors.hpp"

namespace crs {

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dimension() != b.dimension()) {
        throw DimensionMismatchError("embedding dimensions differ: " +
                                     std::to_string(a.dimension()) + " vs " +
                                     std::to_string(b.dimension()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) throw ZeroVectorError("cosine similarity of a zero vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace crs
