#include "crs/selection/selector.hpp"

#include <algorithm>
#include <deque>

#include "crs/errors.hpp"

namespace crs {

namespace {

// Queue order for re-seeding: descending round-zero score, ties by
// canonical name. Round zero scores every node, so the ordering is total.
std::vector<NodeId> order_new_nodes(const CharacterGraph& graph,
                                    const std::vector<NodeId>& nodes,
                                    const std::map<NodeId, double>& round0_scores) {
    std::vector<NodeId> ordered(nodes);
    std::sort(ordered.begin(), ordered.end(), [&](NodeId a, NodeId b) {
        const double sa = round0_scores.at(a);
        const double sb = round0_scores.at(b);
        if (sa != sb) return sa > sb;
        return graph.node(a).canonical_name < graph.node(b).canonical_name;
    });
    return ordered;
}

}  // namespace

SelectionResult select_characters(const CharacterGraph& graph, const std::set<NodeId>& main,
                                  const std::set<NodeId>& sub, const PprConfig& config) {
    config.validate();
    if (main.empty() && sub.empty()) {
        throw ValidationError("select_characters needs at least one main or sub character");
    }
    for (NodeId id : main) {
        if (!graph.has_node(id)) throw ValidationError("main character not in graph");
    }
    for (NodeId id : sub) {
        if (!graph.has_node(id)) throw ValidationError("sub character not in graph");
    }

    SelectionResult result;
    std::set<NodeId> chosen;
    const auto admit = [&](NodeId id) {
        if (chosen.insert(id).second) result.selected.push_back(id);
    };
    for (NodeId id : main) admit(id);
    for (NodeId id : sub) {
        if (main.count(id) == 0) admit(id);
    }

    std::map<NodeId, double> seeds;
    for (NodeId id : main) seeds[id] = config.main_seed_score;
    for (NodeId id : sub) {
        if (main.count(id) == 0) seeds[id] = config.sub_seed_score;
    }

    std::deque<NodeId> queue;
    std::set<NodeId> enqueued;
    std::map<NodeId, double> round0_scores;

    const auto run_round = [&](const std::map<NodeId, double>& personalization,
                               std::optional<NodeId> reseeded) {
        const auto scores = personalized_pagerank(graph, personalization, config);
        if (round0_scores.empty()) round0_scores = scores;
        std::vector<NodeId> fresh;
        for (const auto& [id, score] : scores) {
            if (score > config.threshold && chosen.count(id) == 0) fresh.push_back(id);
        }
        for (NodeId id : order_new_nodes(graph, fresh, round0_scores)) {
            admit(id);
            if (enqueued.insert(id).second) queue.push_back(id);
        }
        result.rounds.push_back(SelectionRound{reseeded, scores});
    };

    run_round(seeds, std::nullopt);

    int reseed_rounds = 0;
    while (!queue.empty() && reseed_rounds < config.max_reseed_rounds) {
        const NodeId next = queue.front();
        queue.pop_front();
        ++reseed_rounds;
        run_round({{next, 1.0}}, next);
    }
    return result;
}

std::vector<NodeId> select_by_edge_count(const CharacterGraph& graph, std::size_t k,
                                         DegreeMode mode) {
    if (k < 1) throw InvalidKError("k must be positive");
    if (k > graph.node_count()) {
        throw InvalidKError("k exceeds node count (" + std::to_string(k) + " > " +
                            std::to_string(graph.node_count()) + ")");
    }
    struct Ranked {
        NodeId id;
        std::int64_t primary;
        std::int64_t weighted;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(graph.node_count());
    for (const auto& [id, n] : graph.nodes()) {
        (void)n;
        const std::int64_t degree = static_cast<std::int64_t>(graph.degree(id));
        const std::int64_t weighted = graph.weighted_degree(id);
        ranked.push_back(Ranked{id, mode == DegreeMode::EdgeCount ? degree : weighted, weighted});
    }
    std::sort(ranked.begin(), ranked.end(), [&](const Ranked& a, const Ranked& b) {
        if (a.primary != b.primary) return a.primary > b.primary;
        if (a.weighted != b.weighted) return a.weighted > b.weighted;
        return graph.node(a.id).canonical_name < graph.node(b.id).canonical_name;
    });
    ranked.resize(k);

    std::vector<NodeId> out;
    out.reserve(k);
    for (const auto& r : ranked) out.push_back(r.id);
    return out;
}

}  // namespace crs
