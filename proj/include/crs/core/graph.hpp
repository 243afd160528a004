#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crs/core/types.hpp"

namespace crs {

struct CharacterNode {
    NodeId id = 0;
    std::string canonical_name;
    std::set<std::string> aliases;  // normalized; always contains canonical_name
    Tier tier = Tier::Supporting;
    std::optional<std::string> role;
    std::optional<std::string> group;

    bool operator==(const CharacterNode&) const = default;
};

// Weighted undirected character graph. Nodes carry disjoint alias sets;
// edge weights count co-interactions and stay >= 1. All name lookups go
// through normalize_name, so callers can pass raw surface forms.
class CharacterGraph {
public:
    using EdgeKey = std::pair<NodeId, NodeId>;  // normalized: first < second
    using EdgeMap = std::map<EdgeKey, std::int64_t>;

    // Creates a node with a singleton alias set. Throws ValidationError if
    // the name is empty after normalization or already owned by another node.
    NodeId add_node(std::string_view name, Tier tier = Tier::Supporting);

    // Returns the existing owner of `name` or creates a new node.
    NodeId ensure_node(std::string_view name);

    // Throws ValidationError when the alias is empty or owned by a different
    // node; adding an alias the node already has is a no-op.
    void add_alias(NodeId id, std::string_view alias);

    // Adds `delta` to the edge weight, creating the edge if needed.
    // Self-loops and non-positive resulting weights are rejected.
    void add_edge_weight(NodeId a, NodeId b, std::int64_t delta);

    std::optional<NodeId> resolve_alias(std::string_view name) const;

    bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
    const CharacterNode& node(NodeId id) const;
    CharacterNode& node_mut(NodeId id);

    // Drops the node and every incident edge.
    void remove_node(NodeId id);

    // Folds `donor` into `keep`: aliases union, incident edge weights are
    // added toward common neighbors, the higher tier wins and the canonical
    // name becomes the longest alias (ties: lexicographically smallest).
    // The weight between the two nodes themselves would form a self-loop and
    // is dropped. Returns `keep`.
    NodeId merge_nodes(NodeId keep, NodeId donor);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return nodes_.empty(); }

    std::int64_t edge_weight(NodeId a, NodeId b) const;  // 0 when absent
    std::size_t degree(NodeId id) const;                 // incident edge count
    std::int64_t weighted_degree(NodeId id) const;
    std::int64_t total_edge_weight() const;

    // Deterministic iteration: nodes keyed by id, edges by (min,max) id pair.
    const std::map<NodeId, CharacterNode>& nodes() const { return nodes_; }
    const EdgeMap& edges() const { return edges_; }
    std::vector<NodeId> node_ids() const;
    std::vector<std::pair<NodeId, std::int64_t>> neighbors(NodeId id) const;

    // Subgraph over `keep` with node ids preserved.
    CharacterGraph induced_subgraph(const std::set<NodeId>& keep) const;

    // Checks alias disjointness, edge endpoints, positive weights and the
    // absence of self-loops. Throws ValidationError on the first violation.
    void check_invariants() const;

    bool operator==(const CharacterGraph& other) const {
        return nodes_ == other.nodes_ && edges_ == other.edges_ && next_id_ == other.next_id_;
    }

    // Used by deserialization to rebuild an exact instance.
    static CharacterGraph restore(std::map<NodeId, CharacterNode> nodes, EdgeMap edges,
                                  NodeId next_id);
    NodeId next_id() const { return next_id_; }

private:
    static EdgeKey edge_key(NodeId a, NodeId b);
    void index_alias(const std::string& alias, NodeId id);

    std::map<NodeId, CharacterNode> nodes_;
    EdgeMap edges_;
    std::unordered_map<std::string, NodeId> alias_index_;
    NodeId next_id_ = 0;
};

// The canonical-name rule applied after alias merges: longest alias by
// scalar count, ties broken by byte-wise lexicographic order.
std::string pick_canonical_name(const std::set<std::string>& aliases);

}  // namespace crs
