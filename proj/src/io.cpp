#include "crs/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "crs/errors.hpp"
#include "crs/text.hpp"

namespace crs::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(what + " is not valid JSON: " + e.what(), "/");
    }
}

const json& require(const json& j, const char* key, const std::string& ptr) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError("missing required field", ptr + "/" + key);
    }
    return j[key];
}

std::string require_string(const json& j, const char* key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (!v.is_string()) throw SchemaError("expected a string", ptr + "/" + key);
    return v.get<std::string>();
}

std::int64_t require_int(const json& j, const char* key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (!v.is_number_integer()) throw SchemaError("expected an integer", ptr + "/" + key);
    return v.get<std::int64_t>();
}

double require_number(const json& j, const char* key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (!v.is_number()) throw SchemaError("expected a number", ptr + "/" + key);
    return v.get<double>();
}

const json& require_array(const json& j, const char* key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (!v.is_array()) throw SchemaError("expected an array", ptr + "/" + key);
    return v;
}

const json& require_object(const json& j, const char* key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (!v.is_object()) throw SchemaError("expected an object", ptr + "/" + key);
    return v;
}

void check_version(const json& j, const std::string& ptr) {
    const std::int64_t version = require_int(j, "schema_version", ptr);
    if (version != kSchemaVersion) {
        throw SchemaError("unsupported schema_version " + std::to_string(version),
                          ptr + "/schema_version");
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::optional<double> optional_number(const json& j, const char* key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw SchemaError("expected a number or null", ptr + "/" + key);
    return v.get<double>();
}

json to_json_opt(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

json graph_to_json(const CharacterGraph& graph) {
    json nodes = json::array();
    for (const auto& [id, node] : graph.nodes()) {
        json n = {
            {"id", id},
            {"canonical", node.canonical_name},
            {"aliases", node.aliases},
            {"tier", std::string(to_string(node.tier))},
        };
        if (node.role) n["role"] = *node.role;
        if (node.group) n["group"] = *node.group;
        nodes.push_back(std::move(n));
    }
    json edges = json::array();
    for (const auto& [key, weight] : graph.edges()) {
        edges.push_back(json{{"a", key.first}, {"b", key.second}, {"weight", weight}});
    }
    return json{{"next_id", graph.next_id()}, {"nodes", nodes}, {"edges", edges}};
}

CharacterGraph graph_from_json(const json& j, const std::string& ptr) {
    std::map<NodeId, CharacterNode> nodes;
    std::size_t i = 0;
    for (const auto& n : require_array(j, "nodes", ptr)) {
        const std::string nptr = ptr + "/nodes/" + std::to_string(i++);
        CharacterNode node;
        node.id = static_cast<NodeId>(require_int(n, "id", nptr));
        node.canonical_name = require_string(n, "canonical", nptr);
        for (const auto& alias : require_array(n, "aliases", nptr)) {
            if (!alias.is_string()) throw SchemaError("expected a string", nptr + "/aliases");
            node.aliases.insert(alias.get<std::string>());
        }
        node.tier = tier_from_string(require_string(n, "tier", nptr));
        if (n.contains("role") && !n["role"].is_null()) {
            if (!n["role"].is_string()) throw SchemaError("expected a string", nptr + "/role");
            node.role = n["role"].get<std::string>();
        }
        if (n.contains("group") && !n["group"].is_null()) {
            if (!n["group"].is_string()) throw SchemaError("expected a string", nptr + "/group");
            node.group = n["group"].get<std::string>();
        }
        if (!nodes.emplace(node.id, std::move(node)).second) {
            throw SchemaError("duplicate node id", nptr + "/id");
        }
    }
    CharacterGraph::EdgeMap edges;
    i = 0;
    for (const auto& e : require_array(j, "edges", ptr)) {
        const std::string eptr = ptr + "/edges/" + std::to_string(i++);
        const NodeId a = static_cast<NodeId>(require_int(e, "a", eptr));
        const NodeId b = static_cast<NodeId>(require_int(e, "b", eptr));
        const std::int64_t weight = require_int(e, "weight", eptr);
        if (weight < 1) throw SchemaError("edge weight must be >= 1", eptr + "/weight");
        if (a >= b) throw SchemaError("edge key must satisfy a < b", eptr);
        if (!edges.emplace(CharacterGraph::EdgeKey{a, b}, weight).second) {
            throw SchemaError("duplicate edge", eptr);
        }
    }
    const NodeId next_id = static_cast<NodeId>(require_int(j, "next_id", ptr));
    try {
        return CharacterGraph::restore(std::move(nodes), std::move(edges), next_id);
    } catch (const ValidationError& e) {
        throw SchemaError(e.what(), ptr);
    }
}

json crs_to_json(const Crs& crs) {
    json relations = json::array();
    for (const auto& rel : crs.relations) {
        json r = {{"subject", rel.subject}, {"object", rel.object}};
        if (rel.explicit_label) r["explicit"] = *rel.explicit_label;
        if (rel.implicit_label) r["implicit"] = *rel.implicit_label;
        relations.push_back(std::move(r));
    }
    json groups = json::object();
    for (const auto& [name, members] : crs.groups()) {
        groups[name] = members;
    }
    return json{
        {"stage", std::string(to_string(crs.stage()))},
        {"graph", graph_to_json(crs.graph)},
        {"relations", relations},
        {"groups", groups},
    };
}

Crs crs_from_json(const json& j, const std::string& ptr) {
    Crs crs;
    crs.graph = graph_from_json(require_object(j, "graph", ptr), ptr + "/graph");
    try {
        crs.restore_stage(stage_from_string(require_string(j, "stage", ptr)));
    } catch (const ValidationError& e) {
        throw SchemaError(e.what(), ptr + "/stage");
    }
    std::size_t i = 0;
    for (const auto& r : require_array(j, "relations", ptr)) {
        const std::string rptr = ptr + "/relations/" + std::to_string(i++);
        Relation rel;
        rel.subject = static_cast<NodeId>(require_int(r, "subject", rptr));
        rel.object = static_cast<NodeId>(require_int(r, "object", rptr));
        if (r.contains("explicit") && !r["explicit"].is_null()) {
            if (!r["explicit"].is_string()) throw SchemaError("expected a string", rptr + "/explicit");
            rel.explicit_label = r["explicit"].get<std::string>();
        }
        if (r.contains("implicit") && !r["implicit"].is_null()) {
            if (!r["implicit"].is_string()) throw SchemaError("expected a string", rptr + "/implicit");
            rel.implicit_label = r["implicit"].get<std::string>();
        }
        crs.relations.push_back(std::move(rel));
    }
    // The groups block is a derived view; reject files where it disagrees
    // with the node annotations.
    const json expected = crs_to_json(crs)["groups"];
    if (require_object(j, "groups", ptr) != expected) {
        throw SchemaError("groups block disagrees with node group fields", ptr + "/groups");
    }
    try {
        crs.check_invariants();
    } catch (const ValidationError& e) {
        throw SchemaError(e.what(), ptr);
    }
    return crs;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

std::string serialize_graph(const CharacterGraph& graph) {
    json j = graph_to_json(graph);
    j["schema_version"] = kSchemaVersion;
    return dump(j);
}

CharacterGraph parse_graph(const std::string& json_text) {
    const json j = parse_json(json_text, "graph");
    check_version(j, "");
    return graph_from_json(j, "");
}

std::string serialize_crs(const Crs& crs) {
    json j = crs_to_json(crs);
    j["schema_version"] = kSchemaVersion;
    return dump(j);
}

Crs parse_crs(const std::string& json_text) {
    const json j = parse_json(json_text, "crs");
    check_version(j, "");
    return crs_from_json(j, "");
}

std::string serialize_triplets(std::span<const SpoTriplet> triplets) {
    std::string out;
    for (const auto& t : triplets) {
        const json j = {
            {"subject", t.subject},
            {"predicate", t.predicate},
            {"object", t.object},
            {"chunk_index", t.chunk_index},
        };
        out += j.dump();
        out += "\n";
    }
    return out;
}

std::vector<SpoTriplet> parse_triplets(const std::string& jsonl_text) {
    std::vector<SpoTriplet> out;
    std::istringstream lines(jsonl_text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        const std::string ptr = "/" + std::to_string(n++);
        if (text::trim(line).empty()) continue;
        const json j = parse_json(line, "triplet line");
        SpoTriplet t;
        t.subject = require_string(j, "subject", ptr);
        t.predicate = require_string(j, "predicate", ptr);
        t.object = require_string(j, "object", ptr);
        t.chunk_index = static_cast<std::size_t>(require_int(j, "chunk_index", ptr));
        if (text::trim(t.subject).empty() || text::trim(t.predicate).empty() ||
            text::trim(t.object).empty()) {
            throw SchemaError("triplet fields must be non-empty", ptr);
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::string serialize_ground_truth(const GroundTruth& gt) {
    json characters = json::array();
    for (const auto& c : gt.characters) {
        characters.push_back(json{{"name", c.name}, {"aliases", c.aliases}});
    }
    json roles = json::object();
    for (const auto& [name, list] : gt.roles) roles[name] = list;
    json groups = json::object();
    for (const auto& [name, group] : gt.groups) groups[name] = group;
    json relations = json::array();
    for (const auto& rel : gt.key_relations) {
        relations.push_back(json{{"subject", rel.subject},
                                 {"object", rel.object},
                                 {"explicit", rel.explicit_labels},
                                 {"implicit", rel.implicit_labels}});
    }
    const json j = {
        {"schema_version", kSchemaVersion},
        {"characters", characters},
        {"roles", roles},
        {"groups", groups},
        {"key_relations", relations},
    };
    return dump(j);
}

GroundTruth parse_ground_truth(const std::string& json_text) {
    const json j = parse_json(json_text, "ground truth");
    check_version(j, "");
    GroundTruth gt;
    std::size_t i = 0;
    for (const auto& c : require_array(j, "characters", "")) {
        const std::string cptr = "/characters/" + std::to_string(i++);
        GtCharacter ch;
        ch.name = text::normalize_name(require_string(c, "name", cptr));
        if (ch.name.empty()) throw SchemaError("character name is empty", cptr + "/name");
        ch.aliases.insert(ch.name);
        if (c.contains("aliases")) {
            if (!c["aliases"].is_array()) throw SchemaError("expected an array", cptr + "/aliases");
            for (const auto& alias : c["aliases"]) {
                if (!alias.is_string()) throw SchemaError("expected a string", cptr + "/aliases");
                const std::string a = text::normalize_name(alias.get<std::string>());
                if (!a.empty()) ch.aliases.insert(a);
            }
        }
        gt.characters.push_back(std::move(ch));
    }
    if (j.contains("roles")) {
        const json& roles = require_object(j, "roles", "");
        for (const auto& [name, list] : roles.items()) {
            if (!list.is_array()) throw SchemaError("expected an array", "/roles/" + name);
            std::vector<std::string> out;
            for (const auto& r : list) {
                if (!r.is_string()) throw SchemaError("expected a string", "/roles/" + name);
                out.push_back(r.get<std::string>());
            }
            gt.roles.emplace(text::normalize_name(name), std::move(out));
        }
    }
    if (j.contains("groups")) {
        const json& groups = require_object(j, "groups", "");
        for (const auto& [name, group] : groups.items()) {
            if (!group.is_string()) throw SchemaError("expected a string", "/groups/" + name);
            gt.groups.emplace(text::normalize_name(name), group.get<std::string>());
        }
    }
    if (j.contains("key_relations")) {
        i = 0;
        for (const auto& r : require_array(j, "key_relations", "")) {
            const std::string rptr = "/key_relations/" + std::to_string(i++);
            GtRelation rel;
            rel.subject = require_string(r, "subject", rptr);
            rel.object = require_string(r, "object", rptr);
            const auto labels = [&](const char* key) {
                std::vector<std::string> out;
                if (!r.contains(key) || r[key].is_null()) return out;
                if (r[key].is_string()) {
                    out.push_back(r[key].get<std::string>());
                } else if (r[key].is_array()) {
                    for (const auto& l : r[key]) {
                        if (!l.is_string()) {
                            throw SchemaError("expected a string", rptr + "/" + key);
                        }
                        out.push_back(l.get<std::string>());
                    }
                } else {
                    throw SchemaError("expected a string or array", rptr + "/" + key);
                }
                return out;
            };
            rel.explicit_labels = labels("explicit");
            rel.implicit_labels = labels("implicit");
            gt.key_relations.push_back(std::move(rel));
        }
    }
    try {
        gt.validate();
    } catch (const ValidationError& e) {
        throw SchemaError(e.what(), "");
    }
    return gt;
}

std::string serialize_selection(const SelectionArtifact& artifact) {
    json rounds = json::array();
    for (const auto& round : artifact.rounds) {
        json scores = json::object();
        for (const auto& [id, score] : round.scores) {
            scores[std::to_string(id)] = score;
        }
        rounds.push_back(json{
            {"reseeded", round.reseeded ? json(*round.reseeded) : json(nullptr)},
            {"scores", scores},
        });
    }
    const json j = {
        {"schema_version", kSchemaVersion},
        {"method", artifact.method},
        {"main", artifact.main},
        {"sub", artifact.sub},
        {"selected", artifact.selected},
        {"rounds", rounds},
        {"crs", crs_to_json(artifact.crs)},
    };
    return dump(j);
}

SelectionArtifact parse_selection(const std::string& json_text) {
    const json j = parse_json(json_text, "selection");
    check_version(j, "");
    SelectionArtifact artifact;
    artifact.method = require_string(j, "method", "");
    const auto names = [&](const char* key) {
        std::vector<std::string> out;
        for (const auto& v : require_array(j, key, "")) {
            if (!v.is_string()) throw SchemaError("expected a string", std::string("/") + key);
            out.push_back(v.get<std::string>());
        }
        return out;
    };
    artifact.main = names("main");
    artifact.sub = names("sub");
    artifact.selected = names("selected");
    std::size_t i = 0;
    for (const auto& r : require_array(j, "rounds", "")) {
        const std::string rptr = "/rounds/" + std::to_string(i++);
        SelectionRound round;
        const json& reseeded = require(r, "reseeded", rptr);
        if (!reseeded.is_null()) {
            if (!reseeded.is_number_integer()) {
                throw SchemaError("expected an integer or null", rptr + "/reseeded");
            }
            round.reseeded = static_cast<NodeId>(reseeded.get<std::int64_t>());
        }
        for (const auto& [key, score] : require_object(r, "scores", rptr).items()) {
            if (!score.is_number()) throw SchemaError("expected a number", rptr + "/scores/" + key);
            try {
                round.scores.emplace(static_cast<NodeId>(std::stoul(key)), score.get<double>());
            } catch (const std::exception&) {
                throw SchemaError("score key is not a node id", rptr + "/scores/" + key);
            }
        }
        artifact.rounds.push_back(std::move(round));
    }
    artifact.crs = crs_from_json(require_object(j, "crs", ""), "/crs");
    return artifact;
}

namespace {

const char* const kMetricNames[] = {
    "character_recall",
    "group_match_precision",
    "group_match_recall",
    "group_match_f1",
    "character_relation_recall",
    "role_similarity",
    "group_name_similarity",
    "explicit_relation_similarity",
    "implicit_relation_similarity",
};

std::optional<double> metric_by_name(const EvalReport& r, const std::string& name) {
    if (name == "character_recall") return r.character_recall;
    if (name == "group_match_precision") return r.group_match_precision;
    if (name == "group_match_recall") return r.group_match_recall;
    if (name == "group_match_f1") return r.group_match_f1;
    if (name == "character_relation_recall") return r.character_relation_recall;
    if (name == "role_similarity") return r.role_similarity;
    if (name == "group_name_similarity") return r.group_name_similarity;
    if (name == "explicit_relation_similarity") return r.explicit_relation_similarity;
    if (name == "implicit_relation_similarity") return r.implicit_relation_similarity;
    return std::nullopt;
}

}  // namespace

std::string serialize_report(const EvalReport& report) {
    const json metrics = {
        {"character_recall", to_json_opt(report.character_recall)},
        {"role_similarity", to_json_opt(report.role_similarity)},
        {"group_match_precision", to_json_opt(report.group_match_precision)},
        {"group_match_recall", to_json_opt(report.group_match_recall)},
        {"group_match_f1", to_json_opt(report.group_match_f1)},
        {"group_name_similarity", to_json_opt(report.group_name_similarity)},
        {"character_relation_recall", to_json_opt(report.character_relation_recall)},
        {"explicit_relation_similarity", to_json_opt(report.explicit_relation_similarity)},
        {"implicit_relation_similarity", to_json_opt(report.implicit_relation_similarity)},
    };
    const json counts = {
        {"matched_characters", report.counts.matched_characters},
        {"gt_characters", report.counts.gt_characters},
        {"roles_scored", report.counts.roles_scored},
        {"group_tp", report.counts.group_tp},
        {"group_fp", report.counts.group_fp},
        {"group_fn", report.counts.group_fn},
        {"group_name_characters", report.counts.group_name_characters},
        {"relation_pairs_matched", report.counts.relation_pairs_matched},
        {"gt_relation_pairs", report.counts.gt_relation_pairs},
        {"explicit_pairs_scored", report.counts.explicit_pairs_scored},
        {"implicit_pairs_scored", report.counts.implicit_pairs_scored},
    };
    const json j = {
        {"schema_version", kSchemaVersion},
        {"na_as_zero", report.na_as_zero},
        {"metrics", metrics},
        {"counts", counts},
    };
    return dump(j);
}

EvalReport parse_report(const std::string& json_text) {
    const json j = parse_json(json_text, "report");
    check_version(j, "");
    const json& metrics = require_object(j, "metrics", "");
    const json& counts = require_object(j, "counts", "");

    EvalReport report;
    const json& na = require(j, "na_as_zero", "");
    if (!na.is_boolean()) throw SchemaError("expected a boolean", "/na_as_zero");
    report.na_as_zero = na.get<bool>();

    report.character_recall = optional_number(metrics, "character_recall", "/metrics");
    report.role_similarity = optional_number(metrics, "role_similarity", "/metrics");
    report.group_match_precision = optional_number(metrics, "group_match_precision", "/metrics");
    report.group_match_recall = optional_number(metrics, "group_match_recall", "/metrics");
    report.group_match_f1 = optional_number(metrics, "group_match_f1", "/metrics");
    report.group_name_similarity = optional_number(metrics, "group_name_similarity", "/metrics");
    report.character_relation_recall =
        optional_number(metrics, "character_relation_recall", "/metrics");
    report.explicit_relation_similarity =
        optional_number(metrics, "explicit_relation_similarity", "/metrics");
    report.implicit_relation_similarity =
        optional_number(metrics, "implicit_relation_similarity", "/metrics");

    report.counts.matched_characters =
        static_cast<std::size_t>(require_int(counts, "matched_characters", "/counts"));
    report.counts.gt_characters =
        static_cast<std::size_t>(require_int(counts, "gt_characters", "/counts"));
    report.counts.roles_scored =
        static_cast<std::size_t>(require_int(counts, "roles_scored", "/counts"));
    report.counts.group_tp = require_int(counts, "group_tp", "/counts");
    report.counts.group_fp = require_int(counts, "group_fp", "/counts");
    report.counts.group_fn = require_int(counts, "group_fn", "/counts");
    report.counts.group_name_characters =
        static_cast<std::size_t>(require_int(counts, "group_name_characters", "/counts"));
    report.counts.relation_pairs_matched =
        static_cast<std::size_t>(require_int(counts, "relation_pairs_matched", "/counts"));
    report.counts.gt_relation_pairs =
        static_cast<std::size_t>(require_int(counts, "gt_relation_pairs", "/counts"));
    report.counts.explicit_pairs_scored =
        static_cast<std::size_t>(require_int(counts, "explicit_pairs_scored", "/counts"));
    report.counts.implicit_pairs_scored =
        static_cast<std::size_t>(require_int(counts, "implicit_pairs_scored", "/counts"));
    return report;
}

std::string report_table(const EvalReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(30) << "metric" << "value\n";
    const auto row = [&](const char* name, const std::optional<double>& value) {
        out << std::left << std::setw(30) << name;
        if (value) {
            out << std::fixed << std::setprecision(1) << *value;
        } else {
            out << "n/a";
        }
        out << "\n";
    };
    row("character_recall", report.character_recall);
    row("group_match_precision", report.group_match_precision);
    row("group_match_recall", report.group_match_recall);
    row("group_match_f1", report.group_match_f1);
    row("character_relation_recall", report.character_relation_recall);
    row("role_similarity", report.role_similarity);
    row("group_name_similarity", report.group_name_similarity);
    row("explicit_relation_similarity", report.explicit_relation_similarity);
    row("implicit_relation_similarity", report.implicit_relation_similarity);
    return out.str();
}

std::vector<AggregateRow> aggregate_reports(std::span<const EvalReport> reports,
                                            bool na_as_zero) {
    std::vector<AggregateRow> rows;
    for (const char* name : kMetricNames) {
        AggregateRow row;
        row.metric = name;
        std::vector<double> values;
        for (const auto& report : reports) {
            const auto v = metric_by_name(report, name);
            if (v) {
                values.push_back(*v);
            } else if (na_as_zero) {
                values.push_back(0.0);
                ++row.not_applicable;
            } else {
                ++row.not_applicable;
            }
        }
        row.n = values.size();
        if (!values.empty()) {
            double sum = 0.0;
            for (const double v : values) sum += v;
            row.mean = sum / static_cast<double>(values.size());
            double sq = 0.0;
            for (const double v : values) sq += (v - row.mean) * (v - row.mean);
            row.stddev = std::sqrt(sq / static_cast<double>(values.size()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string aggregate_table(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(30) << "metric" << std::right << std::setw(8) << "mean"
        << std::setw(10) << "std" << std::setw(5) << "n" << "\n";
    for (const auto& row : rows) {
        out << std::left << std::setw(30) << row.metric;
        if (row.n == 0) {
            out << std::right << std::setw(8) << "n/a" << std::setw(10) << "" << std::setw(5)
                << 0 << "\n";
            continue;
        }
        out << std::right << std::fixed << std::setprecision(1) << std::setw(8) << row.mean
            << "  ± " << std::setw(5) << row.stddev << std::setw(5) << row.n << "\n";
    }
    return out.str();
}

std::string serialize_aggregate(const std::vector<AggregateRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        arr.push_back(json{{"metric", row.metric},
                           {"mean", row.n == 0 ? json(nullptr) : json(row.mean)},
                           {"stddev", row.n == 0 ? json(nullptr) : json(row.stddev)},
                           {"n", row.n},
                           {"not_applicable", row.not_applicable}});
    }
    const json j = {{"schema_version", kSchemaVersion}, {"metrics", arr}};
    return dump(j);
}

std::string serialize_comparison(const ComparisonReport& report) {
    const auto method = [&](const ComparisonReport::Method& m) {
        return json{
            {"selected", m.selected},
            {"precision", to_json_opt(m.pr.precision)},
            {"recall", m.pr.recall},
            {"f1", m.pr.f1},
            {"matched", m.pr.matched},
        };
    };
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back(json{{"name", row.name},
                            {"edge_count", row.edge_count},
                            {"gt", row.in_gt},
                            {"ppr", row.in_ppr},
                            {"count", row.in_count}});
    }
    const json j = {
        {"schema_version", kSchemaVersion},
        {"k", report.k},
        {"ppr", method(report.ppr)},
        {"count", method(report.count)},
        {"characters", rows},
    };
    return dump(j);
}

ComparisonReport parse_comparison(const std::string& json_text) {
    const json j = parse_json(json_text, "comparison");
    check_version(j, "");
    ComparisonReport report;
    report.k = static_cast<std::size_t>(require_int(j, "k", ""));

    const auto method = [&](const char* key) {
        const json& m = require_object(j, key, "");
        const std::string ptr = std::string("/") + key;
        ComparisonReport::Method out;
        for (const auto& name : require_array(m, "selected", ptr)) {
            if (!name.is_string()) throw SchemaError("expected a string", ptr + "/selected");
            out.selected.push_back(name.get<std::string>());
        }
        out.pr.precision = optional_number(m, "precision", ptr);
        out.pr.recall = require_number(m, "recall", ptr);
        out.pr.f1 = require_number(m, "f1", ptr);
        out.pr.matched = static_cast<std::size_t>(require_int(m, "matched", ptr));
        return out;
    };
    report.ppr = method("ppr");
    report.count = method("count");

    std::size_t i = 0;
    for (const auto& r : require_array(j, "characters", "")) {
        const std::string rptr = "/characters/" + std::to_string(i++);
        ComparisonReport::Row row;
        row.name = require_string(r, "name", rptr);
        row.edge_count = static_cast<std::size_t>(require_int(r, "edge_count", rptr));
        const auto flag = [&](const char* key) {
            const json& v = require(r, key, rptr);
            if (!v.is_boolean()) throw SchemaError("expected a boolean", rptr + "/" + key);
            return v.get<bool>();
        };
        row.in_gt = flag("gt");
        row.in_ppr = flag("ppr");
        row.in_count = flag("count");
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace crs::io
