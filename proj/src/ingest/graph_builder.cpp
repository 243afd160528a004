#include "crs/ingest/graph_builder.hpp"

#include <set>

#include "crs/text.hpp"

namespace crs {

CharacterGraph build_base_graph(std::span<const SpoTriplet> triplets) {
    // Node ids follow lexicographic name order so that permuting the triplet
    // list yields an identical graph, ids included.
    std::set<std::string> names;
    for (const auto& t : triplets) {
        names.insert(text::normalize_name(t.subject));
        names.insert(text::normalize_name(t.object));
    }
    CharacterGraph graph;
    for (const auto& name : names) graph.add_node(name);

    for (const auto& t : triplets) {
        const NodeId s = *graph.resolve_alias(t.subject);
        const NodeId o = *graph.resolve_alias(t.object);
        if (s != o) graph.add_edge_weight(s, o, 1);
    }
    return graph;
}

}  // namespace crs
