#include "crs/core/crs.hpp"

#include <algorithm>

#include "crs/errors.hpp"

namespace crs {

void Crs::advance_stage(Stage next) {
    if (static_cast<int>(next) <= static_cast<int>(stage_)) {
        throw ValidationError(std::string("stage transition not monotone: ") +
                              std::string(to_string(stage_)) + " -> " +
                              std::string(to_string(next)));
    }
    stage_ = next;
}

std::map<std::string, std::set<NodeId>> Crs::groups() const {
    std::map<std::string, std::set<NodeId>> out;
    for (const auto& [id, n] : graph.nodes()) {
        if (n.group) out[*n.group].insert(id);
    }
    return out;
}

void Crs::remove_character(NodeId id) {
    graph.remove_node(id);
    std::erase_if(relations, [&](const Relation& r) { return r.subject == id || r.object == id; });
}

void Crs::check_invariants() const {
    graph.check_invariants();
    for (const auto& rel : relations) {
        if (!graph.has_node(rel.subject) || !graph.has_node(rel.object)) {
            throw ValidationError("relation endpoint missing from graph");
        }
        if (!rel.has_content()) {
            throw ValidationError("retained relation has neither explicit nor implicit label");
        }
        if (rel.implicit_label && !ImplicitVocabulary::contains(*rel.implicit_label)) {
            throw ValidationError("implicit relation outside vocabulary: " + *rel.implicit_label);
        }
    }
}

}  // namespace crs
