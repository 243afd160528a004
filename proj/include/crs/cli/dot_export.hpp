#pragma once

#include <string>

#include "crs/core/crs.hpp"

namespace crs {

// Deterministic Graphviz export of a refined CRS. Node size tracks the tier
// (three sizes), fill color tracks the group (fixed 12-color palette cycled
// in group-name order; one default color when no groups exist), edge labels
// carry the explicit relation and implicit relations render as a dashed edge
// class. A legend comment block maps groups to colors.
//
// Requires a CRS at stage Filtered or later; throws ValidationError below
// that.
std::string to_dot(const Crs& crs);

}  // namespace crs
