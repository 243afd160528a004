#pragma once

#include <span>

#include "crs/core/graph.hpp"
#include "crs/core/types.hpp"

namespace crs {

// Pure fold over the triplet list: one node per distinct normalized
// subject/object string, and one unit of edge weight per triplet with
// distinct endpoints. Subject-equals-object triplets create the node but no
// edge. The result does not depend on triplet order beyond node numbering,
// which follows first appearance.
CharacterGraph build_base_graph(std::span<const SpoTriplet> triplets);

}  // namespace crs
