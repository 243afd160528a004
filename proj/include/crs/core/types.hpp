#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crs {

using NodeId = std::uint32_t;

enum class Tier { Main, Sub, Supporting };

// Pipeline stages in their fixed order. A CRS only ever moves forward.
enum class Stage { Base, Selected, Merged, RelationsExtracted, Filtered, RolesAssigned, Grouped };

std::string_view to_string(Tier tier);
std::string_view to_string(Stage stage);
Tier tier_from_string(std::string_view s);
Stage stage_from_string(std::string_view s);

// Higher tier wins when merging (Main > Sub > Supporting).
Tier higher_tier(Tier a, Tier b);

// One subject-predicate-object interaction extracted from a text chunk.
struct SpoTriplet {
    std::string subject;
    std::string predicate;
    std::string object;
    std::size_t chunk_index = 0;

    bool operator==(const SpoTriplet&) const = default;
};

// The closed list of implicit relation terms. Stored relations always carry
// the canonical spelling from this list.
class ImplicitVocabulary {
public:
    static std::span<const std::string_view> terms();

    // Exact membership after trimming.
    static bool contains(std::string_view term);

    // Case-insensitive lookup; returns the canonical spelling.
    static std::optional<std::string> canonical(std::string_view term);
};

// Expert annotation for one drama.
struct GtCharacter {
    std::string name;
    std::set<std::string> aliases;  // includes name

    bool operator==(const GtCharacter&) const = default;
};

struct GtRelation {
    std::string subject;
    std::string object;
    std::vector<std::string> explicit_labels;
    std::vector<std::string> implicit_labels;

    bool operator==(const GtRelation&) const = default;
};

struct GroundTruth {
    std::vector<GtCharacter> characters;
    std::map<std::string, std::vector<std::string>> roles;  // keyed by character name
    std::map<std::string, std::string> groups;
    std::vector<GtRelation> key_relations;

    bool operator==(const GroundTruth&) const = default;

    // Throws ValidationError when roles/groups/key_relations reference a
    // character that is not listed.
    void validate() const;

    // Finds the character whose alias set contains `name` (normalized).
    const GtCharacter* find_by_alias(std::string_view name) const;
    const GtCharacter* find_by_name(std::string_view name) const;
};

}  // namespace crs
