#include "crs/eval/compare.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace crs {

ComparisonReport compare_selection(const CharacterGraph& graph, const std::set<NodeId>& main,
                                   const std::set<NodeId>& sub, const GroundTruth& gt,
                                   const PprConfig& config, DegreeMode mode) {
    const SelectionResult ppr = select_characters(graph, main, sub, config);
    const std::vector<NodeId> by_count = select_by_edge_count(graph, ppr.selected.size(), mode);

    ComparisonReport report;
    report.k = ppr.selected.size();
    for (const NodeId id : ppr.selected) {
        report.ppr.selected.push_back(graph.node(id).canonical_name);
    }
    for (const NodeId id : by_count) {
        report.count.selected.push_back(graph.node(id).canonical_name);
    }
    report.ppr.pr = selection_pr(graph, ppr.selected, gt);
    report.count.pr = selection_pr(graph, by_count, gt);

    const std::set<NodeId> ppr_set(ppr.selected.begin(), ppr.selected.end());
    const std::set<NodeId> count_set(by_count.begin(), by_count.end());
    const MatchMap gt_match = match_characters(graph, gt);

    for (const auto& [id, node] : graph.nodes()) {
        ComparisonReport::Row row;
        row.name = node.canonical_name;
        row.edge_count = graph.degree(id);
        row.in_gt = gt_match.matched(id);
        row.in_ppr = ppr_set.count(id) != 0;
        row.in_count = count_set.count(id) != 0;
        report.rows.push_back(std::move(row));
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ComparisonReport::Row& a, const ComparisonReport::Row& b) {
                  if (a.edge_count != b.edge_count) return a.edge_count > b.edge_count;
                  return a.name < b.name;
              });
    return report;
}

std::string comparison_table(const ComparisonReport& report) {
    std::size_t width = 9;
    for (const auto& row : report.rows) width = std::max(width, row.name.size());

    std::ostringstream out;
    const auto pct = [](const std::optional<double>& v) {
        if (!v) return std::string("   n/a");
        std::ostringstream s;
        s << std::fixed << std::setprecision(1) << std::setw(6) << *v;
        return s.str();
    };

    out << "method   precision  recall     f1\n";
    out << "ppr     " << pct(report.ppr.pr.precision) << "  " << std::fixed
        << std::setprecision(1) << std::setw(6) << report.ppr.pr.recall << "  " << std::setw(6)
        << report.ppr.pr.f1 << "\n";
    out << "count   " << pct(report.count.pr.precision) << "  " << std::setw(6)
        << report.count.pr.recall << "  " << std::setw(6) << report.count.pr.f1 << "\n";
    out << "k = " << report.k << "\n\n";

    out << std::left << std::setw(static_cast<int>(width) + 2) << "character"
        << "edges  gt  ppr  count\n";
    for (const auto& row : report.rows) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << row.name << std::right
            << std::setw(5) << row.edge_count << "  " << (row.in_gt ? " x" : "  ") << "  "
            << (row.in_ppr ? "  x" : "   ") << "  " << (row.in_count ? "   x" : "    ") << "\n";
    }
    return out.str();
}

}  // namespace crs
