#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "crs/core/graph.hpp"
#include "crs/selection/ppr.hpp"

namespace crs {

struct SelectionRound {
    std::optional<NodeId> reseeded;  // absent for the initial main/sub round
    std::map<NodeId, double> scores;

    bool operator==(const SelectionRound&) const = default;
};

struct SelectionResult {
    std::vector<NodeId> selected;  // insertion order; main and sub first
    std::vector<SelectionRound> rounds;

    bool operator==(const SelectionResult&) const = default;
};

// Iterative character selection. Round 0 seeds main characters at
// config.main_seed_score and sub characters at config.sub_seed_score; every
// node whose score strictly exceeds config.threshold joins the selection.
// Each later round takes one not-yet-processed newly selected character
// (descending discovery score, ties by canonical name), seeds it alone at 1,
// and again admits nodes above the threshold. Stops when the queue is empty
// or max_reseed_rounds re-seed rounds have run. Main and sub nodes are
// always part of the result.
SelectionResult select_characters(const CharacterGraph& graph, const std::set<NodeId>& main,
                                  const std::set<NodeId>& sub, const PprConfig& config);

// How "total number of edges" is counted for the ranking baseline.
enum class DegreeMode { EdgeCount, WeightSum };

// Top-k nodes by degree; ties broken by descending weighted degree, then by
// canonical name. Throws InvalidKError when k exceeds the node count.
std::vector<NodeId> select_by_edge_count(const CharacterGraph& graph, std::size_t k,
                                         DegreeMode mode = DegreeMode::EdgeCount);

}  // namespace crs
