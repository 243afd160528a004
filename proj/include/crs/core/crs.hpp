#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crs/core/graph.hpp"
#include "crs/core/types.hpp"

namespace crs {

// Directed relation between two characters. The (subject, object) order is
// meaningful and preserved from the pair list the relation agent saw.
struct Relation {
    NodeId subject = 0;
    NodeId object = 0;
    std::optional<std::string> explicit_label;
    std::optional<std::string> implicit_label;  // canonical vocabulary term

    bool has_content() const { return explicit_label.has_value() || implicit_label.has_value(); }
    bool operator==(const Relation&) const = default;
};

// The evolving Character Relation Structure handed from stage to stage.
// Group membership lives on the nodes (one optional group each), which makes
// exclusivity structural; groups() assembles the map view.
class Crs {
public:
    CharacterGraph graph;
    std::vector<Relation> relations;

    Stage stage() const { return stage_; }

    // Stage transitions are monotone; throws ValidationError on regression.
    void advance_stage(Stage next);

    // Only deserialization restores an arbitrary stage.
    void restore_stage(Stage s) { stage_ = s; }

    std::map<std::string, std::set<NodeId>> groups() const;

    // Removes the node plus its incident edges and relations.
    void remove_character(NodeId id);

    // Structural invariants: relation endpoints exist, implicit labels are
    // vocabulary members, retained relations are non-empty, plus the graph's
    // own invariants. Throws ValidationError.
    void check_invariants() const;

    bool operator==(const Crs& other) const {
        return graph == other.graph && relations == other.relations && stage_ == other.stage_;
    }

private:
    Stage stage_ = Stage::Base;
};

}  // namespace crs
