#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "crs/agents/prompt_template.hpp"
#include "crs/agents/response_parser.hpp"
#include "crs/core/crs.hpp"
#include "crs/llm/backend.hpp"

namespace crs {

// Context every refinement agent renders into its prompt.
struct AgentContext {
    std::string treatment;                // may be empty
    std::vector<std::string> summaries;   // one per episode, at most 4
    Crs crs;
};

struct AgentOptions {
    // When true, the relation pair list contains only pairs touching a main
    // or sub character; otherwise every edge is listed.
    bool pairs_main_sub_only = true;
    // Roles matching one of these (case-insensitive) are rejected.
    std::vector<std::string> age_denylist = {"adult", "elderly person", "child",
                                             "teenager", "old man", "old woman"};
    // Re-queries issued when a response yields no usable structure at all.
    int reparse_retries = 1;
};

// Per-agent counters surfaced for logging and tests.
struct AgentStats {
    std::size_t dropped_lines = 0;
    std::size_t unresolved_names = 0;
    std::size_t vocabulary_violations = 0;
    std::size_t denylist_rejections = 0;
    std::size_t generic_group_rejections = 0;
    std::size_t duplicate_group_assignments = 0;
    std::size_t record_mismatches = 0;
    std::size_t removed_characters = 0;
    std::size_t retries = 0;
};

// Runs the five refinement agents in their fixed order:
// merge -> relations -> filter -> roles -> groups. Each step renders its
// template, calls the backend, parses the structured response and applies
// one CRS mutation; run() snapshots the CRS after every step.
class AgentChain {
public:
    AgentChain(LlmBackend& backend, PromptLibrary prompts, AgentOptions options = {});

    Crs merge_duplicates(const AgentContext& ctx);
    Crs extract_relations(const AgentContext& ctx);
    Crs filter_irrelevant(const AgentContext& ctx);
    Crs assign_roles(const AgentContext& ctx);
    Crs assign_groups(const AgentContext& ctx);

    using SnapshotSink = std::function<void(const Crs&)>;
    Crs run(const AgentContext& ctx, const SnapshotSink& on_snapshot = {});

    const std::map<std::string, AgentStats>& stats() const { return stats_; }

    // The ordered directed pair list the relation agent sees; exposed so
    // tests and callers can reproduce the exact pair order.
    std::vector<std::pair<NodeId, NodeId>> relation_pairs(const Crs& crs) const;

private:
    std::string render_with_context(const PromptTemplate& tpl, const AgentContext& ctx,
                                    std::map<std::string, std::string> extra) const;
    ParsedAgentOutput query(const PromptTemplate& tpl, const AgentContext& ctx,
                            std::map<std::string, std::string> extra,
                            const std::function<ParsedAgentOutput(const std::string&)>& parse,
                            AgentStats& stats);

    LlmBackend& backend_;
    PromptLibrary prompts_;
    AgentOptions options_;
    std::map<std::string, AgentStats> stats_;
};

// "[canonical / alias ...]" for prompts; aliases beyond the canonical name
// are ordered longest first, ties lexicographic.
std::string format_name_set(const CharacterNode& node);

}  // namespace crs
