#include "crs/core/types.hpp"

#include <array>

#include "crs/errors.hpp"
#include "crs/text.hpp"

namespace crs {

std::string_view to_string(Tier tier) {
    switch (tier) {
        case Tier::Main: return "main";
        case Tier::Sub: return "sub";
        case Tier::Supporting: return "supporting";
    }
    return "supporting";
}

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::Base: return "base";
        case Stage::Selected: return "selected";
        case Stage::Merged: return "merged";
        case Stage::RelationsExtracted: return "relations_extracted";
        case Stage::Filtered: return "filtered";
        case Stage::RolesAssigned: return "roles_assigned";
        case Stage::Grouped: return "grouped";
    }
    return "base";
}

Tier tier_from_string(std::string_view s) {
    if (s == "main") return Tier::Main;
    if (s == "sub") return Tier::Sub;
    if (s == "supporting") return Tier::Supporting;
    throw ValidationError("unknown tier: " + std::string(s));
}

Stage stage_from_string(std::string_view s) {
    for (Stage st : {Stage::Base, Stage::Selected, Stage::Merged, Stage::RelationsExtracted,
                     Stage::Filtered, Stage::RolesAssigned, Stage::Grouped}) {
        if (to_string(st) == s) return st;
    }
    throw ValidationError("unknown stage: " + std::string(s));
}

Tier higher_tier(Tier a, Tier b) {
    return static_cast<int>(a) <= static_cast<int>(b) ? a : b;
}

namespace {

constexpr std::array<std::string_view, 27> kImplicitTerms = {
    "Conflict",
    "Betrayal",
    "Affair",
    "Help/Aid",
    "Sacrifice",
    "Dependency",
    "Revenge",
    "Resentment",
    "Dislike",
    "Worry/concern",
    "One-sided love",
    "Crush",
    "Love",
    "Longing",
    "Love-hate relationship",
    "Collaboration",
    "Regret",
    "Exploitation",
    "Lie/Deception",
    "Trust",
    "Watching over/Protecting",
    "Pressure",
    "Conspiracy",
    "Support",
    "Friendliness",
    "Hostility",
    "Wariness",
};

}  // namespace

std::span<const std::string_view> ImplicitVocabulary::terms() { return kImplicitTerms; }

bool ImplicitVocabulary::contains(std::string_view term) {
    const std::string t = text::trim(term);
    for (const auto& known : kImplicitTerms) {
        if (t == known) return true;
    }
    return false;
}

std::optional<std::string> ImplicitVocabulary::canonical(std::string_view term) {
    const std::string t = text::trim(term);
    for (const auto& known : kImplicitTerms) {
        if (text::iequals_ascii(t, known)) return std::string(known);
    }
    return std::nullopt;
}

void GroundTruth::validate() const {
    const auto known = [&](std::string_view name) { return find_by_name(name) != nullptr; };
    for (const auto& [name, role_list] : roles) {
        (void)role_list;
        if (!known(name)) throw ValidationError("ground truth roles reference unknown character: " + name);
    }
    for (const auto& [name, group] : groups) {
        (void)group;
        if (!known(name)) throw ValidationError("ground truth groups reference unknown character: " + name);
    }
    for (const auto& rel : key_relations) {
        if (!known(rel.subject))
            throw ValidationError("ground truth relation references unknown character: " + rel.subject);
        if (!known(rel.object))
            throw ValidationError("ground truth relation references unknown character: " + rel.object);
    }
}

const GtCharacter* GroundTruth::find_by_alias(std::string_view name) const {
    const std::string key = text::normalize_name(name);
    for (const auto& ch : characters) {
        if (ch.name == key || ch.aliases.count(key) != 0) return &ch;
    }
    return nullptr;
}

const GtCharacter* GroundTruth::find_by_name(std::string_view name) const {
    const std::string key = text::normalize_name(name);
    for (const auto& ch : characters) {
        if (ch.name == key) return &ch;
    }
    return nullptr;
}

}  // namespace crs
