#pragma once

#include <set>
#include <string>
#include <vector>

#include "crs/core/graph.hpp"
#include "crs/core/types.hpp"
#include "crs/eval/metrics.hpp"
#include "crs/selection/selector.hpp"

namespace crs {

// Side-by-side outcome of the two character selection strategies: iterative
// PPR from the main/sub seeds against a plain degree ranking sized to the
// PPR list.
struct ComparisonReport {
    struct Method {
        std::vector<std::string> selected;  // canonical names, selection order
        SelectionPr pr;

        bool operator==(const Method&) const = default;
    };
    Method ppr;
    Method count;
    std::size_t k = 0;  // degree-ranking size = PPR list length

    // One row per graph node, sorted by descending edge count, mirroring the
    // usual cutoff table layout.
    struct Row {
        std::string name;
        std::size_t edge_count = 0;
        bool in_gt = false;
        bool in_ppr = false;
        bool in_count = false;

        bool operator==(const Row&) const = default;
    };
    std::vector<Row> rows;

    bool operator==(const ComparisonReport&) const = default;
};

ComparisonReport compare_selection(const CharacterGraph& graph, const std::set<NodeId>& main,
                                   const std::set<NodeId>& sub, const GroundTruth& gt,
                                   const PprConfig& config,
                                   DegreeMode mode = DegreeMode::EdgeCount);

// Fixed-width text rendering of the comparison.
std::string comparison_table(const ComparisonReport& report);

}  // namespace crs
