#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crs/core/graph.hpp"

namespace crs {

// Structured view of one agent response: a list of key/value records plus a
// count of lines or records that failed to parse. Records always carry the
// mandatory keys of their agent's response format.
struct ParsedAgentOutput {
    std::string agent_name;
    std::vector<std::map<std::string, std::string>> records;
    std::size_t dropped_lines = 0;
};

// Line-oriented parsers, tolerant of markdown bold markers, list numbering
// and one layer of square brackets around values. The response grammars
// mirror the template texts under prompts/.

// Records: left, right ("No Same Person" marks an explicit non-match).
ParsedAgentOutput parse_merge_response(const std::string& response);

// Records: subject, object, plus optional explicit, verification
// (correct/incorrect), correction, implicit.
ParsedAgentOutput parse_relation_response(const std::string& response);

// Records: kind=general with character + last_name, or kind
// identity/relationship/abundant with value.
ParsedAgentOutput parse_filter_response(const std::string& response);

// Records: character, role, optional confidence.
ParsedAgentOutput parse_role_response(const std::string& response);

// Records: kind=assignment with character + group ("No Group" allowed), or
// kind=group_list with scope (family/other) + name.
ParsedAgentOutput parse_group_response(const std::string& response);

// Shared helpers, exposed for tests.
namespace parse_detail {
// Trims, strips leading list numbering and bullet dashes, removes asterisks.
std::string clean_line(std::string_view line);
std::vector<std::string> bracket_groups(std::string_view line);
std::string strip_brackets(std::string_view value);
// Case-insensitive prefix test on a cleaned line; returns the rest after the
// following ':' when present.
std::optional<std::string> value_after_key(std::string_view line, std::string_view key);
}  // namespace parse_detail

// Resolves a response name set like "Hee-su Park / Hee-su" (optionally
// bracketed) against the graph: the full string first, then each
// '/'-separated component.
std::optional<NodeId> resolve_name_set(const CharacterGraph& graph, std::string_view name_set);

}  // namespace crs
