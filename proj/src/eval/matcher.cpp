#include "crs/eval/matcher.hpp"

#include <algorithm>
#include <set>

#include "crs/text.hpp"

namespace crs {

namespace {

MatchMap greedy_match(const CharacterGraph& graph, const std::vector<NodeId>& candidates,
                      const GroundTruth& gt) {
    struct Candidate {
        std::size_t overlap;
        std::string node_name;
        std::string gt_name;
        NodeId node;
    };
    std::vector<Candidate> scored;

    for (const NodeId id : candidates) {
        const CharacterNode& node = graph.node(id);
        for (const auto& gt_char : gt.characters) {
            std::set<std::string> gt_aliases = gt_char.aliases;
            gt_aliases.insert(text::normalize_name(gt_char.name));
            std::size_t overlap = 0;
            for (const auto& alias : node.aliases) {
                if (gt_aliases.count(alias) != 0) ++overlap;
            }
            if (overlap > 0) {
                scored.push_back(Candidate{overlap, node.canonical_name, gt_char.name, id});
            }
        }
    }

    std::sort(scored.begin(), scored.end(), [](const Candidate& a, const Candidate& b) {
        if (a.overlap != b.overlap) return a.overlap > b.overlap;
        if (a.node_name != b.node_name) return a.node_name < b.node_name;
        return a.gt_name < b.gt_name;
    });

    MatchMap out;
    std::set<std::string> taken_gt;
    for (const auto& c : scored) {
        if (out.pairs.count(c.node) != 0 || taken_gt.count(c.gt_name) != 0) continue;
        out.pairs.emplace(c.node, c.gt_name);
        taken_gt.insert(c.gt_name);
    }
    return out;
}

}  // namespace

MatchMap match_characters(const CharacterGraph& graph, const GroundTruth& gt) {
    return greedy_match(graph, graph.node_ids(), gt);
}

MatchMap match_characters(const Crs& crs, const GroundTruth& gt) {
    return match_characters(crs.graph, gt);
}

MatchMap match_subset(const CharacterGraph& graph, const std::vector<NodeId>& subset,
                      const GroundTruth& gt) {
    return greedy_match(graph, subset, gt);
}

}  // namespace crs
