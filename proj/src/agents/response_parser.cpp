#include "crs/agents/response_parser.hpp"

#include <cctype>
#include <sstream>

#include "crs/text.hpp"

namespace crs {

namespace parse_detail {

std::string clean_line(std::string_view line) {
    std::string s = text::trim(line);
    // Leading bullet.
    while (!s.empty() && (s.front() == '-' || s.front() == '*')) s.erase(s.begin());
    s = text::trim(s);
    // Leading list numbering: digits followed by '.' or ')'.
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')')) {
        s = text::trim(s.substr(i + 1));
    }
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        if (c != '*') out += c;
    }
    return text::trim(out);
}

std::vector<std::string> bracket_groups(std::string_view line) {
    std::vector<std::string> groups;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '[') {
            const std::size_t close = line.find(']', i + 1);
            if (close == std::string_view::npos) break;
            groups.emplace_back(text::trim(line.substr(i + 1, close - i - 1)));
            i = close + 1;
        } else {
            ++i;
        }
    }
    return groups;
}

std::string strip_brackets(std::string_view value) {
    std::string s = text::trim(value);
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
        s = text::trim(std::string_view(s).substr(1, s.size() - 2));
    }
    return s;
}

std::optional<std::string> value_after_key(std::string_view line, std::string_view key) {
    if (line.size() < key.size()) return std::nullopt;
    if (!text::iequals_ascii(line.substr(0, key.size()), key)) return std::nullopt;
    std::string_view rest = line.substr(key.size());
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) return std::string(text::trim(rest));
    return std::string(text::trim(rest.substr(colon + 1)));
}

}  // namespace parse_detail

using namespace parse_detail;

namespace {

bool contains_i(std::string_view haystack, std::string_view needle) {
    const std::string h = text::to_lower_ascii(haystack);
    const std::string n = text::to_lower_ascii(needle);
    return h.find(n) != std::string::npos;
}

}  // namespace

ParsedAgentOutput parse_merge_response(const std::string& response) {
    ParsedAgentOutput out;
    out.agent_name = "merge_duplicates";
    std::istringstream lines(response);
    std::string raw;
    while (std::getline(lines, raw)) {
        const std::string line = clean_line(raw);
        if (line.empty()) continue;
        if (contains_i(line.substr(0, 9), "Evidence")) continue;
        const auto groups = bracket_groups(line);
        if (groups.size() >= 2) {
            out.records.push_back({{"left", groups[0]}, {"right", groups[1]}});
        } else if (line.find('[') != std::string::npos) {
            ++out.dropped_lines;
        }
    }
    return out;
}

ParsedAgentOutput parse_relation_response(const std::string& response) {
    ParsedAgentOutput out;
    out.agent_name = "extract_relations";

    std::map<std::string, std::string> record;
    const auto flush = [&] {
        if (record.empty()) return;
        if (record.count("subject") != 0 && record.count("object") != 0) {
            out.records.push_back(record);
        } else {
            ++out.dropped_lines;
        }
        record.clear();
    };

    std::istringstream lines(response);
    std::string raw;
    while (std::getline(lines, raw)) {
        const std::string line = clean_line(raw);
        if (line.empty()) continue;

        if (auto v = value_after_key(line, "Subject")) {
            flush();
            record["subject"] = strip_brackets(*v);
            continue;
        }
        if (auto v = value_after_key(line, "Object")) {
            record["object"] = strip_brackets(*v);
            continue;
        }
        // Verification can appear as "Verification:" or
        // "(Explicit) Verification:". Check before the generic explicit key.
        std::optional<std::string> verification = value_after_key(line, "Verification");
        if (!verification && contains_i(line.substr(0, 24), "(Explicit) Verification")) {
            verification = value_after_key(line, "(Explicit) Verification");
        }
        if (verification) {
            std::string v = text::trim(*verification);
            bool correct = true;
            std::size_t marker_end = 0;
            if (contains_i(v.substr(0, 11), "[Incorrect]")) {
                correct = false;
                marker_end = 11;
            } else if (contains_i(v.substr(0, 9), "Incorrect")) {
                correct = false;
                marker_end = 9;
            } else if (contains_i(v.substr(0, 9), "[Correct]")) {
                marker_end = 9;
            } else if (contains_i(v.substr(0, 7), "Correct")) {
                marker_end = 7;
            }
            record["verification"] = correct ? "correct" : "incorrect";
            std::string rest = text::trim(v.substr(marker_end));
            while (!rest.empty() && (rest.front() == ',' || rest.front() == '.')) {
                rest = text::trim(rest.substr(1));
            }
            if (!correct && !rest.empty()) record["correction"] = rest;
            continue;
        }
        if (contains_i(line.substr(0, 10), "(Explicit)")) {
            const std::size_t colon = line.rfind(':');
            if (colon != std::string::npos) {
                record["explicit"] = strip_brackets(text::trim(line.substr(colon + 1)));
            }
            continue;
        }
        if (contains_i(line.substr(0, 10), "(Implicit)")) {
            const std::size_t colon = line.rfind(':');
            if (colon != std::string::npos) {
                record["implicit"] = strip_brackets(text::trim(line.substr(colon + 1)));
            }
            continue;
        }
    }
    flush();
    return out;
}

ParsedAgentOutput parse_filter_response(const std::string& response) {
    ParsedAgentOutput out;
    out.agent_name = "filter_irrelevant";

    int section = 0;
    std::optional<std::string> pending_character;

    const auto flush_general = [&](const std::string& last_name) {
        if (!pending_character) {
            ++out.dropped_lines;
            return;
        }
        out.records.push_back(
            {{"kind", "general"}, {"character", *pending_character}, {"last_name", last_name}});
        pending_character.reset();
    };

    std::istringstream lines(response);
    std::string raw;
    while (std::getline(lines, raw)) {
        const std::string line = clean_line(raw);
        if (line.empty()) continue;

        if (contains_i(line, "General Character List")) {
            section = 1;
            continue;
        }
        if (contains_i(line, "Inappropriate Character Identity List")) {
            section = 2;
            continue;
        }
        if (contains_i(line, "Inappropriate Character Relationship List")) {
            section = 3;
            continue;
        }
        if (contains_i(line, "Abundant Relationship List")) {
            section = 4;
            continue;
        }

        if (section == 1) {
            if (auto v = value_after_key(line, "Character")) {
                if (pending_character) ++out.dropped_lines;  // previous entry lacked the flag
                pending_character = strip_brackets(*v);
                continue;
            }
            if (auto v = value_after_key(line, "Last Name")) {
                const std::string flag = strip_brackets(*v);
                if (contains_i(flag, "true")) {
                    flush_general("true");
                } else if (contains_i(flag, "false")) {
                    flush_general("false");
                } else {
                    pending_character.reset();
                    ++out.dropped_lines;
                }
                continue;
            }
        } else if (section >= 2) {
            if (text::is_not_provided(line)) continue;
            static const char* kKinds[] = {"", "", "identity", "relationship", "abundant"};
            out.records.push_back({{"kind", kKinds[section]}, {"value", strip_brackets(line)}});
        }
    }
    if (pending_character) ++out.dropped_lines;
    return out;
}

ParsedAgentOutput parse_role_response(const std::string& response) {
    ParsedAgentOutput out;
    out.agent_name = "assign_roles";

    std::map<std::string, std::string> record;
    const auto flush = [&] {
        if (record.empty()) return;
        if (record.count("character") != 0 && record.count("role") != 0) {
            out.records.push_back(record);
        } else {
            ++out.dropped_lines;
        }
        record.clear();
    };

    std::istringstream lines(response);
    std::string raw;
    while (std::getline(lines, raw)) {
        const std::string line = clean_line(raw);
        if (line.empty()) continue;
        if (auto v = value_after_key(line, "Character")) {
            flush();
            record["character"] = strip_brackets(*v);
            continue;
        }
        if (auto v = value_after_key(line, "Role")) {
            record["role"] = strip_brackets(*v);
            continue;
        }
        if (auto v = value_after_key(line, "Confidence")) {
            record["confidence"] = *v;
            continue;
        }
    }
    flush();
    return out;
}

ParsedAgentOutput parse_group_response(const std::string& response) {
    ParsedAgentOutput out;
    out.agent_name = "assign_groups";

    const auto push_group_list = [&](const std::string& value, const char* scope) {
        for (const auto& name : bracket_groups("[" + strip_brackets(value) + "]")) {
            std::istringstream items(name);
            std::string item;
            while (std::getline(items, item, ',')) {
                const std::string g = text::trim(item);
                if (!g.empty()) {
                    out.records.push_back({{"kind", "group_list"}, {"scope", scope}, {"name", g}});
                }
            }
        }
    };

    std::map<std::string, std::string> record;
    const auto flush = [&] {
        if (record.empty()) return;
        if (record.count("character") != 0 && record.count("group") != 0) {
            record["kind"] = "assignment";
            out.records.push_back(record);
        } else {
            ++out.dropped_lines;
        }
        record.clear();
    };

    std::istringstream lines(response);
    std::string raw;
    while (std::getline(lines, raw)) {
        const std::string line = clean_line(raw);
        if (line.empty()) continue;
        if (auto v = value_after_key(line, "Family Group List")) {
            push_group_list(*v, "family");
            continue;
        }
        if (auto v = value_after_key(line, "Other Group List")) {
            push_group_list(*v, "other");
            continue;
        }
        if (auto v = value_after_key(line, "Character")) {
            flush();
            record["character"] = strip_brackets(*v);
            continue;
        }
        if (auto v = value_after_key(line, "Group")) {
            record["group"] = strip_brackets(*v);
            continue;
        }
        if (auto v = value_after_key(line, "Family")) {
            record["family"] = strip_brackets(*v);
            continue;
        }
    }
    flush();
    return out;
}

std::optional<NodeId> resolve_name_set(const CharacterGraph& graph, std::string_view name_set) {
    const std::string whole = strip_brackets(name_set);
    if (auto id = graph.resolve_alias(whole)) return id;
    std::istringstream parts(whole);
    std::string part;
    while (std::getline(parts, part, '/')) {
        const std::string candidate = text::trim(part);
        if (candidate.empty()) continue;
        if (auto id = graph.resolve_alias(candidate)) return id;
    }
    return std::nullopt;
}

}  // namespace crs
