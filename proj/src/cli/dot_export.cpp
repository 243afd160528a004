#include "crs/cli/dot_export.hpp"

#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "crs/errors.hpp"

namespace crs {

namespace {

constexpr std::array<const char*, 12> kPalette = {
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
};
constexpr const char* kDefaultFill = "#e8e8e8";

const char* tier_width(Tier tier) {
    switch (tier) {
        case Tier::Main: return "1.6";
        case Tier::Sub: return "1.2";
        case Tier::Supporting: return "0.9";
    }
    return "0.9";
}

const char* tier_fontsize(Tier tier) {
    switch (tier) {
        case Tier::Main: return "16";
        case Tier::Sub: return "13";
        case Tier::Supporting: return "10";
    }
    return "10";
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string slug(const std::string& s) {
    std::string out;
    for (const char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!out.empty() && out.back() != '-') {
            out += '-';
        }
    }
    while (!out.empty() && out.back() == '-') out.pop_back();
    return out;
}

}  // namespace

std::string to_dot(const Crs& crs) {
    if (static_cast<int>(crs.stage()) < static_cast<int>(Stage::Filtered)) {
        throw ValidationError("DOT export requires a CRS at stage 'filtered' or later");
    }

    // Palette assignment cycles through group names in lexicographic order.
    std::map<std::string, std::string> fill;
    std::size_t color = 0;
    for (const auto& [name, members] : crs.groups()) {
        (void)members;
        fill.emplace(name, kPalette[color % kPalette.size()]);
        ++color;
    }

    std::ostringstream out;
    out << "// character relation structure\n";
    for (const auto& [name, hex] : fill) {
        out << "// legend: " << name << " -> " << hex << "\n";
    }
    if (fill.empty()) out << "// legend: (no groups) -> " << kDefaultFill << "\n";

    out << "digraph crs {\n";
    out << "  graph [overlap=false, splines=true];\n";
    out << "  node [shape=circle, style=filled, fontname=\"Helvetica\"];\n";

    for (const auto& [id, node] : crs.graph.nodes()) {
        // "\n" is the DOT line break between name and role.
        std::string label = escape(node.canonical_name);
        if (node.role) label += "\\n" + escape(*node.role);
        const std::string hex = node.group ? fill.at(*node.group) : kDefaultFill;
        out << "  n" << id << " [label=\"" << label << "\", width=" << tier_width(node.tier)
            << ", fontsize=" << tier_fontsize(node.tier) << ", fillcolor=\"" << hex << "\"];\n";
    }

    // Base co-interaction edges without a stored relation render as plain
    // undirected lines.
    std::set<std::pair<NodeId, NodeId>> related;
    for (const auto& rel : crs.relations) {
        related.insert(rel.subject < rel.object ? std::make_pair(rel.subject, rel.object)
                                                : std::make_pair(rel.object, rel.subject));
    }
    for (const auto& [key, weight] : crs.graph.edges()) {
        (void)weight;
        if (related.count(key) != 0) continue;
        out << "  n" << key.first << " -> n" << key.second
            << " [dir=none, color=\"#bbbbbb\"];\n";
    }

    for (const auto& rel : crs.relations) {
        out << "  n" << rel.subject << " -> n" << rel.object << " [";
        bool first = true;
        const auto attr = [&](const std::string& text) {
            if (!first) out << ", ";
            out << text;
            first = false;
        };
        if (rel.explicit_label) attr("label=\"" + escape(*rel.explicit_label) + "\"");
        if (rel.implicit_label) {
            attr("style=dashed");
            attr("class=\"implicit-" + slug(*rel.implicit_label) + "\"");
            attr("tooltip=\"" + escape(*rel.implicit_label) + "\"");
        }
        if (first) attr("dir=none");
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace crs
