#pragma once

#include <map>

#include "crs/core/graph.hpp"
#include "crs/selection/ppr.hpp"

namespace crs::reference {

// Serial dense-matrix power iteration with the same walk semantics as
// personalized_pagerank. Kept as the reference the test suites and the
// benchmark compare the parallel sparse kernel against; it shares no code
// with that path.
std::map<NodeId, double> personalized_pagerank_dense(
    const CharacterGraph& graph, const std::map<NodeId, double>& personalization,
    const PprConfig& config);

}  // namespace crs::reference
