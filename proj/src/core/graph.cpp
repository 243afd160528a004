#include "crs/core/graph.hpp"

#include <algorithm>

#include "crs/errors.hpp"
#include "crs/text.hpp"

namespace crs {

std::string pick_canonical_name(const std::set<std::string>& aliases) {
    std::string best;
    std::size_t best_len = 0;
    for (const auto& alias : aliases) {
        const std::size_t len = text::scalar_count(alias);
        if (best.empty() || len > best_len || (len == best_len && alias < best)) {
            best = alias;
            best_len = len;
        }
    }
    return best;
}

CharacterGraph::EdgeKey CharacterGraph::edge_key(NodeId a, NodeId b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

void CharacterGraph::index_alias(const std::string& alias, NodeId id) {
    const auto [it, inserted] = alias_index_.emplace(alias, id);
    if (!inserted && it->second != id) {
        throw ValidationError("alias '" + alias + "' already belongs to another node");
    }
}

NodeId CharacterGraph::add_node(std::string_view name, Tier tier) {
    const std::string canonical = text::normalize_name(name);
    if (canonical.empty()) throw ValidationError("node name empty after normalization");
    if (alias_index_.count(canonical) != 0) {
        throw ValidationError("alias '" + canonical + "' already belongs to another node");
    }
    const NodeId id = next_id_++;
    CharacterNode node;
    node.id = id;
    node.canonical_name = canonical;
    node.aliases.insert(canonical);
    node.tier = tier;
    nodes_.emplace(id, std::move(node));
    index_alias(canonical, id);
    return id;
}

NodeId CharacterGraph::ensure_node(std::string_view name) {
    if (auto id = resolve_alias(name)) return *id;
    return add_node(name);
}

void CharacterGraph::add_alias(NodeId id, std::string_view alias) {
    CharacterNode& n = node_mut(id);
    const std::string key = text::normalize_name(alias);
    if (key.empty()) throw ValidationError("alias empty after normalization");
    if (n.aliases.count(key) != 0) return;
    index_alias(key, id);
    n.aliases.insert(key);
}

void CharacterGraph::add_edge_weight(NodeId a, NodeId b, std::int64_t delta) {
    if (a == b) throw ValidationError("self-loop edges are not allowed");
    if (!has_node(a) || !has_node(b)) throw ValidationError("edge endpoint does not exist");
    const EdgeKey key = edge_key(a, b);
    const std::int64_t updated = edges_[key] + delta;
    if (updated <= 0) {
        throw ValidationError("edge weight must stay positive");
    }
    edges_[key] = updated;
}

std::optional<NodeId> CharacterGraph::resolve_alias(std::string_view name) const {
    const auto it = alias_index_.find(text::normalize_name(name));
    if (it == alias_index_.end()) return std::nullopt;
    return it->second;
}

const CharacterNode& CharacterGraph::node(NodeId id) const {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) throw ValidationError("unknown node id " + std::to_string(id));
    return it->second;
}

CharacterNode& CharacterGraph::node_mut(NodeId id) {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) throw ValidationError("unknown node id " + std::to_string(id));
    return it->second;
}

void CharacterGraph::remove_node(NodeId id) {
    const CharacterNode& n = node(id);
    for (const auto& alias : n.aliases) alias_index_.erase(alias);
    for (auto it = edges_.begin(); it != edges_.end();) {
        if (it->first.first == id || it->first.second == id) {
            it = edges_.erase(it);
        } else {
            ++it;
        }
    }
    nodes_.erase(id);
}

NodeId CharacterGraph::merge_nodes(NodeId keep, NodeId donor) {
    if (keep == donor) return keep;
    CharacterNode& target = node_mut(keep);
    const CharacterNode donor_node = node(donor);

    for (const auto& [other, weight] : neighbors(donor)) {
        if (other == keep) continue;  // would be a self-loop
        add_edge_weight(keep, other, weight);
    }

    target.tier = higher_tier(target.tier, donor_node.tier);
    if (!target.role) target.role = donor_node.role;
    if (!target.group) target.group = donor_node.group;

    remove_node(donor);
    for (const auto& alias : donor_node.aliases) {
        index_alias(alias, keep);
        target.aliases.insert(alias);
    }
    target.canonical_name = pick_canonical_name(target.aliases);
    return keep;
}

std::int64_t CharacterGraph::edge_weight(NodeId a, NodeId b) const {
    const auto it = edges_.find(edge_key(a, b));
    return it == edges_.end() ? 0 : it->second;
}

std::size_t CharacterGraph::degree(NodeId id) const {
    std::size_t d = 0;
    for (const auto& [key, weight] : edges_) {
        (void)weight;
        if (key.first == id || key.second == id) ++d;
    }
    return d;
}

std::int64_t CharacterGraph::weighted_degree(NodeId id) const {
    std::int64_t d = 0;
    for (const auto& [key, weight] : edges_) {
        if (key.first == id || key.second == id) d += weight;
    }
    return d;
}

std::int64_t CharacterGraph::total_edge_weight() const {
    std::int64_t total = 0;
    for (const auto& [key, weight] : edges_) {
        (void)key;
        total += weight;
    }
    return total;
}

std::vector<NodeId> CharacterGraph::node_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) {
        (void)n;
        ids.push_back(id);
    }
    return ids;
}

std::vector<std::pair<NodeId, std::int64_t>> CharacterGraph::neighbors(NodeId id) const {
    std::vector<std::pair<NodeId, std::int64_t>> out;
    for (const auto& [key, weight] : edges_) {
        if (key.first == id) out.emplace_back(key.second, weight);
        else if (key.second == id) out.emplace_back(key.first, weight);
    }
    return out;
}

CharacterGraph CharacterGraph::induced_subgraph(const std::set<NodeId>& keep) const {
    CharacterGraph out;
    out.next_id_ = next_id_;
    for (const auto& [id, n] : nodes_) {
        if (keep.count(id) == 0) continue;
        out.nodes_.emplace(id, n);
        for (const auto& alias : n.aliases) out.index_alias(alias, id);
    }
    for (const auto& [key, weight] : edges_) {
        if (keep.count(key.first) != 0 && keep.count(key.second) != 0) {
            out.edges_.emplace(key, weight);
        }
    }
    return out;
}

void CharacterGraph::check_invariants() const {
    std::unordered_map<std::string, NodeId> seen;
    for (const auto& [id, n] : nodes_) {
        if (n.id != id) throw ValidationError("node id field out of sync");
        if (n.aliases.count(n.canonical_name) == 0) {
            throw ValidationError("canonical name missing from alias set: " + n.canonical_name);
        }
        for (const auto& alias : n.aliases) {
            const auto [it, inserted] = seen.emplace(alias, id);
            if (!inserted && it->second != id) {
                throw ValidationError("alias sets are not disjoint: " + alias);
            }
        }
    }
    for (const auto& [key, weight] : edges_) {
        if (key.first == key.second) throw ValidationError("self-loop edge present");
        if (key.first > key.second) throw ValidationError("edge key not normalized");
        if (weight < 1) throw ValidationError("edge weight below 1");
        if (!has_node(key.first) || !has_node(key.second)) {
            throw ValidationError("edge endpoint missing from node set");
        }
    }
}

CharacterGraph CharacterGraph::restore(std::map<NodeId, CharacterNode> nodes, EdgeMap edges,
                                       NodeId next_id) {
    CharacterGraph g;
    g.nodes_ = std::move(nodes);
    g.edges_ = std::move(edges);
    g.next_id_ = next_id;
    for (const auto& [id, n] : g.nodes_) {
        for (const auto& alias : n.aliases) g.index_alias(alias, id);
    }
    g.check_invariants();
    return g;
}

}  // namespace crs
