#include "crs/agents/chain.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "crs/errors.hpp"
#include "crs/text.hpp"

namespace crs {

namespace {

// Union-find over node ids; merge pairs apply transitively so that chains
// like A=B, B=C collapse into one node.
class UnionFind {
public:
    NodeId find(NodeId x) {
        auto it = parent_.find(x);
        if (it == parent_.end() || it->second == x) {
            parent_[x] = x;
            return x;
        }
        const NodeId root = find(it->second);
        parent_[x] = root;
        return root;
    }

    void unite(NodeId a, NodeId b) {
        const NodeId ra = find(a);
        const NodeId rb = find(b);
        if (ra == rb) return;
        // Smaller id wins so merge order is deterministic.
        if (ra < rb) parent_[rb] = ra;
        else parent_[ra] = rb;
    }

    std::map<NodeId, std::vector<NodeId>> components() {
        std::map<NodeId, std::vector<NodeId>> out;
        for (const auto& [id, p] : parent_) {
            (void)p;
            out[find(id)].push_back(id);
        }
        for (auto& [root, members] : out) {
            (void)root;
            std::sort(members.begin(), members.end());
        }
        return out;
    }

private:
    std::map<NodeId, NodeId> parent_;
};

bool is_main_or_sub(const CharacterNode& n) {
    return n.tier == Tier::Main || n.tier == Tier::Sub;
}

bool is_no_group(std::string_view value) {
    return text::iequals_ascii(text::trim(value), "No Group");
}

bool generic_group_label(std::string_view name) {
    const std::string n = text::to_lower_ascii(text::trim(name));
    return n == "others" || n == "other characters" || n == "other";
}

std::string character_list_slot(const Crs& crs) {
    std::string out;
    for (const auto& [id, node] : crs.graph.nodes()) {
        (void)id;
        if (!out.empty()) out += "\n";
        out += format_name_set(node);
    }
    return out;
}

bool response_mentions(const std::string& response, std::initializer_list<const char*> needles) {
    const std::string lower = text::to_lower_ascii(response);
    for (const char* needle : needles) {
        if (lower.find(text::to_lower_ascii(needle)) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

std::string format_name_set(const CharacterNode& node) {
    std::vector<std::string> rest;
    for (const auto& alias : node.aliases) {
        if (alias != node.canonical_name) rest.push_back(alias);
    }
    std::sort(rest.begin(), rest.end(), [](const std::string& a, const std::string& b) {
        const std::size_t la = text::scalar_count(a);
        const std::size_t lb = text::scalar_count(b);
        if (la != lb) return la > lb;
        return a < b;
    });
    std::string out = "[" + node.canonical_name;
    for (const auto& alias : rest) out += " / " + alias;
    out += "]";
    return out;
}

AgentChain::AgentChain(LlmBackend& backend, PromptLibrary prompts, AgentOptions options)
    : backend_(backend), prompts_(std::move(prompts)), options_(std::move(options)) {}

std::string AgentChain::render_with_context(const PromptTemplate& tpl, const AgentContext& ctx,
                                            std::map<std::string, std::string> extra) const {
    if (ctx.summaries.size() > 4) {
        throw ValidationError("at most 4 episode summaries are supported");
    }
    std::string summary;
    for (const auto& s : ctx.summaries) {
        if (!summary.empty()) summary += "\n\n";
        summary += s;
    }
    extra.emplace("treatment", ctx.treatment);
    extra.emplace("summary", summary);
    return tpl.render(extra);
}

ParsedAgentOutput AgentChain::query(
    const PromptTemplate& tpl, const AgentContext& ctx, std::map<std::string, std::string> extra,
    const std::function<ParsedAgentOutput(const std::string&)>& parse, AgentStats& stats) {
    const std::string prompt = render_with_context(tpl, ctx, std::move(extra));
    std::string response = backend_.complete(prompt).text;
    ParsedAgentOutput parsed = parse(response);
    int retries_left = options_.reparse_retries;
    while (parsed.records.empty() && parsed.dropped_lines == 0 &&
           !response_mentions(response, {"[", "no same person", "character", "subject", "list"}) &&
           retries_left-- > 0) {
        ++stats.retries;
        response = backend_.complete(prompt).text;
        parsed = parse(response);
    }
    stats.dropped_lines += parsed.dropped_lines;
    return parsed;
}

Crs AgentChain::merge_duplicates(const AgentContext& ctx) {
    if (ctx.crs.stage() != Stage::Selected) {
        throw ValidationError("merge_duplicates expects a CRS at stage 'selected'");
    }
    if (ctx.crs.graph.empty()) {
        throw ValidationError("merge_duplicates expects a non-empty character graph");
    }
    AgentStats& stats = stats_["merge_duplicates"];
    Crs crs = ctx.crs;

    const auto parsed = query(prompts_.merge_duplicates(), ctx,
                              {{"character_list", character_list_slot(crs)}},
                              parse_merge_response, stats);

    UnionFind components;
    for (const auto& record : parsed.records) {
        const std::string& left = record.at("left");
        const std::string& right = record.at("right");
        if (text::iequals_ascii(text::trim(right), "No Same Person") ||
            text::iequals_ascii(text::trim(left), "No Same Person")) {
            continue;
        }
        const auto a = resolve_name_set(crs.graph, left);
        const auto b = resolve_name_set(crs.graph, right);
        if (!a || !b || *a == *b) {
            ++stats.unresolved_names;
            continue;
        }
        components.unite(*a, *b);
    }

    std::map<NodeId, NodeId> remap;
    for (const auto& [root, members] : components.components()) {
        for (const NodeId member : members) {
            if (member == root) continue;
            crs.graph.merge_nodes(root, member);
            remap[member] = root;
        }
    }
    if (!remap.empty()) {
        for (auto& rel : crs.relations) {
            if (auto it = remap.find(rel.subject); it != remap.end()) rel.subject = it->second;
            if (auto it = remap.find(rel.object); it != remap.end()) rel.object = it->second;
        }
        std::erase_if(crs.relations, [](const Relation& r) { return r.subject == r.object; });
    }

    crs.advance_stage(Stage::Merged);
    crs.check_invariants();
    return crs;
}

std::vector<std::pair<NodeId, NodeId>> AgentChain::relation_pairs(const Crs& crs) const {
    struct EdgeEntry {
        int tier_class;  // 0 = both main/sub, 1 = one, 2 = none
        std::int64_t weight;
        std::string low_name, high_name;
        NodeId low, high;
    };
    std::vector<EdgeEntry> entries;
    for (const auto& [key, weight] : crs.graph.edges()) {
        const CharacterNode& a = crs.graph.node(key.first);
        const CharacterNode& b = crs.graph.node(key.second);
        const int touching = (is_main_or_sub(a) ? 1 : 0) + (is_main_or_sub(b) ? 1 : 0);
        const int tier_class = touching == 2 ? 0 : (touching == 1 ? 1 : 2);
        if (options_.pairs_main_sub_only && tier_class == 2) continue;
        EdgeEntry e;
        e.tier_class = tier_class;
        e.weight = weight;
        if (a.canonical_name <= b.canonical_name) {
            e.low = a.id;
            e.high = b.id;
            e.low_name = a.canonical_name;
            e.high_name = b.canonical_name;
        } else {
            e.low = b.id;
            e.high = a.id;
            e.low_name = b.canonical_name;
            e.high_name = a.canonical_name;
        }
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const EdgeEntry& a, const EdgeEntry& b) {
        if (a.tier_class != b.tier_class) return a.tier_class < b.tier_class;
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.low_name != b.low_name) return a.low_name < b.low_name;
        return a.high_name < b.high_name;
    });

    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(entries.size() * 2);
    for (const auto& e : entries) {
        pairs.emplace_back(e.low, e.high);
        pairs.emplace_back(e.high, e.low);
    }
    return pairs;
}

Crs AgentChain::extract_relations(const AgentContext& ctx) {
    if (ctx.crs.stage() != Stage::Merged) {
        throw ValidationError("extract_relations expects a CRS at stage 'merged'");
    }
    AgentStats& stats = stats_["extract_relations"];
    Crs crs = ctx.crs;

    const auto pairs = relation_pairs(crs);
    std::string pair_list;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!pair_list.empty()) pair_list += "\n";
        pair_list += std::to_string(i + 1) + ". " +
                     format_name_set(crs.graph.node(pairs[i].first)) + " - " +
                     format_name_set(crs.graph.node(pairs[i].second));
    }

    ParsedAgentOutput parsed;
    if (!pairs.empty()) {
        parsed = query(prompts_.relation_extraction(), ctx, {{"pair_list", pair_list}},
                       parse_relation_response, stats);
    }

    // Resolve records once, in response order.
    struct Resolved {
        NodeId subject, object;
        const std::map<std::string, std::string>* record;
        bool consumed = false;
    };
    std::vector<Resolved> resolved;
    for (const auto& record : parsed.records) {
        const auto s = resolve_name_set(crs.graph, record.at("subject"));
        const auto o = resolve_name_set(crs.graph, record.at("object"));
        if (!s || !o) {
            ++stats.unresolved_names;
            continue;
        }
        resolved.push_back(Resolved{*s, *o, &record});
    }

    // Apply in the exact order the pair list was sent; the stored relation
    // list mirrors that order.
    std::size_t matched = 0;
    for (const auto& [subject, object] : pairs) {
        Resolved* hit = nullptr;
        for (auto& r : resolved) {
            if (!r.consumed && r.subject == subject && r.object == object) {
                hit = &r;
                break;
            }
        }
        if (hit == nullptr) continue;
        hit->consumed = true;
        ++matched;
        const auto& record = *hit->record;

        std::optional<std::string> explicit_label;
        if (auto it = record.find("explicit");
            it != record.end() && !text::is_not_provided(it->second) && !it->second.empty()) {
            explicit_label = text::trim(it->second);
        }
        if (auto it = record.find("verification");
            it != record.end() && it->second == "incorrect") {
            // The verdict overrides the proposed text; keep the correction
            // when one was written, otherwise drop the explicit relation.
            if (auto c = record.find("correction"); c != record.end() && !c->second.empty()) {
                explicit_label = text::trim(c->second);
            } else {
                explicit_label.reset();
            }
        }

        std::optional<std::string> implicit_label;
        if (auto it = record.find("implicit");
            it != record.end() && !text::is_not_provided(it->second) && !it->second.empty()) {
            if (auto canonical = ImplicitVocabulary::canonical(it->second)) {
                implicit_label = *canonical;
            } else {
                ++stats.vocabulary_violations;
            }
        }

        if (explicit_label || implicit_label) {
            crs.relations.push_back(Relation{subject, object, explicit_label, implicit_label});
        }
    }
    stats.record_mismatches += resolved.size() - matched;

    crs.advance_stage(Stage::RelationsExtracted);
    crs.check_invariants();
    return crs;
}

Crs AgentChain::filter_irrelevant(const AgentContext& ctx) {
    if (ctx.crs.stage() != Stage::RelationsExtracted) {
        throw ValidationError("filter_irrelevant expects a CRS at stage 'relations_extracted'");
    }
    AgentStats& stats = stats_["filter_irrelevant"];
    Crs crs = ctx.crs;

    std::set<std::string> identities;
    for (const auto& [id, node] : crs.graph.nodes()) {
        (void)id;
        if (node.role) identities.insert(*node.role);
    }
    std::set<std::string> relationships;
    for (const auto& rel : crs.relations) {
        if (rel.explicit_label) relationships.insert(*rel.explicit_label);
    }
    const auto joined = [](const std::set<std::string>& values) {
        std::string out;
        for (const auto& v : values) {
            if (!out.empty()) out += "\n";
            out += v;
        }
        return out;
    };

    const auto parsed = query(prompts_.filter_characters(), ctx,
                              {{"character_list", character_list_slot(crs)},
                               {"identity_list", joined(identities)},
                               {"relationship_list", joined(relationships)}},
                              parse_filter_response, stats);

    std::vector<NodeId> to_remove;
    for (const auto& record : parsed.records) {
        const std::string& kind = record.at("kind");
        if (kind == "general") {
            const auto id = resolve_name_set(crs.graph, record.at("character"));
            if (!id) {
                ++stats.unresolved_names;
                continue;
            }
            const CharacterNode& node = crs.graph.node(*id);
            // Removal requires all three: flagged as general, no last name,
            // Supporting tier. Main/sub characters are never removed.
            if (record.at("last_name") == "false" && node.tier == Tier::Supporting) {
                to_remove.push_back(*id);
            }
        } else if (kind == "identity") {
            const std::string value = text::trim(record.at("value"));
            for (auto& [id, node] : crs.graph.nodes()) {
                (void)id;
                if (node.role && text::iequals_ascii(*node.role, value)) {
                    crs.graph.node_mut(node.id).role.reset();
                }
            }
        } else if (kind == "relationship") {
            const std::string value = text::trim(record.at("value"));
            for (auto& rel : crs.relations) {
                if (rel.explicit_label && text::iequals_ascii(*rel.explicit_label, value)) {
                    rel.explicit_label.reset();
                }
            }
        }
        // "abundant" entries are surfaced to the operator but cause no
        // automatic mutation.
    }
    std::erase_if(crs.relations, [](const Relation& r) { return !r.has_content(); });

    std::sort(to_remove.begin(), to_remove.end());
    to_remove.erase(std::unique(to_remove.begin(), to_remove.end()), to_remove.end());
    for (const NodeId id : to_remove) {
        crs.remove_character(id);
        ++stats.removed_characters;
    }

    crs.advance_stage(Stage::Filtered);
    crs.check_invariants();
    return crs;
}

Crs AgentChain::assign_roles(const AgentContext& ctx) {
    if (ctx.crs.stage() != Stage::Filtered) {
        throw ValidationError("assign_roles expects a CRS at stage 'filtered'");
    }
    AgentStats& stats = stats_["assign_roles"];
    Crs crs = ctx.crs;

    const auto parsed = query(prompts_.role_identification(), ctx,
                              {{"character_list", character_list_slot(crs)}},
                              parse_role_response, stats);

    const auto denylisted = [&](std::string_view role) {
        for (const auto& term : options_.age_denylist) {
            if (text::iequals_ascii(text::trim(role), term)) return true;
        }
        return false;
    };

    for (const auto& record : parsed.records) {
        const auto id = resolve_name_set(crs.graph, record.at("character"));
        if (!id) {
            ++stats.unresolved_names;
            continue;
        }
        const std::string& role = record.at("role");
        if (text::is_not_provided(role) || text::trim(role).empty()) continue;
        if (denylisted(role)) {
            ++stats.denylist_rejections;
            continue;
        }
        crs.graph.node_mut(*id).role = text::trim(role);
    }

    // Supporting characters that ended up without a definable role leave the
    // structure here.
    std::vector<NodeId> to_remove;
    for (const auto& [id, node] : crs.graph.nodes()) {
        if (node.tier == Tier::Supporting && !node.role) to_remove.push_back(id);
    }
    for (const NodeId id : to_remove) {
        crs.remove_character(id);
        ++stats.removed_characters;
    }

    crs.advance_stage(Stage::RolesAssigned);
    crs.check_invariants();
    return crs;
}

Crs AgentChain::assign_groups(const AgentContext& ctx) {
    if (ctx.crs.stage() != Stage::RolesAssigned) {
        throw ValidationError("assign_groups expects a CRS at stage 'roles_assigned'");
    }
    AgentStats& stats = stats_["assign_groups"];
    Crs crs = ctx.crs;

    const auto parsed = query(prompts_.group_characters(), ctx,
                              {{"character_list", character_list_slot(crs)}},
                              parse_group_response, stats);

    for (const auto& record : parsed.records) {
        if (record.at("kind") != "assignment") {
            if (generic_group_label(record.at("name"))) ++stats.generic_group_rejections;
            continue;
        }
        const auto id = resolve_name_set(crs.graph, record.at("character"));
        if (!id) {
            ++stats.unresolved_names;
            continue;
        }
        const std::string& group = record.at("group");
        if (is_no_group(group) || text::is_not_provided(group) || text::trim(group).empty()) {
            continue;
        }
        if (generic_group_label(group)) {
            ++stats.generic_group_rejections;
            continue;
        }
        CharacterNode& node = crs.graph.node_mut(*id);
        if (node.group) {
            // Membership is exclusive; the first assignment stands.
            ++stats.duplicate_group_assignments;
            continue;
        }
        node.group = text::trim(group);
    }

    crs.advance_stage(Stage::Grouped);
    crs.check_invariants();
    return crs;
}

Crs AgentChain::run(const AgentContext& ctx, const SnapshotSink& on_snapshot) {
    if (ctx.crs.stage() != Stage::Selected) {
        throw ValidationError("run expects a CRS at stage 'selected'");
    }
    const auto snapshot = [&](const Crs& crs) {
        if (on_snapshot) on_snapshot(crs);
    };

    AgentContext step = ctx;
    step.crs = merge_duplicates(step);
    snapshot(step.crs);
    step.crs = extract_relations(step);
    snapshot(step.crs);
    step.crs = filter_irrelevant(step);
    snapshot(step.crs);
    step.crs = assign_roles(step);
    snapshot(step.crs);
    step.crs = assign_groups(step);
    snapshot(step.crs);
    return step.crs;
}

}  // namespace crs
