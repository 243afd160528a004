#pragma once

#include <map>
#include <string>
#include <vector>

#include "crs/core/crs.hpp"
#include "crs/core/types.hpp"

namespace crs {

// Injective map from predicted nodes to ground-truth characters (by GT
// character name). No two predicted nodes share a GT character.
struct MatchMap {
    std::map<NodeId, std::string> pairs;

    bool matched(NodeId id) const { return pairs.count(id) != 0; }
    std::size_t size() const { return pairs.size(); }
};

// A predicted node matches a GT character when any predicted alias equals
// any GT alias after normalization. Conflicts resolve greedily by descending
// alias-overlap count, ties by predicted canonical name then GT name.
MatchMap match_characters(const CharacterGraph& graph, const GroundTruth& gt);
MatchMap match_characters(const Crs& crs, const GroundTruth& gt);

// Same matching restricted to a node subset (selection evaluation).
MatchMap match_subset(const CharacterGraph& graph, const std::vector<NodeId>& subset,
                      const GroundTruth& gt);

}  // namespace crs
