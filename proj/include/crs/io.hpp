#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "crs/core/crs.hpp"
#include "crs/core/graph.hpp"
#include "crs/core/types.hpp"
#include "crs/eval/compare.hpp"
#include "crs/eval/metrics.hpp"
#include "crs/selection/selector.hpp"

namespace crs::io {

inline constexpr int kSchemaVersion = 1;

// Throws IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Every serialize_* emits stable, key-sorted JSON with a trailing newline;
// parse(serialize(x)) == x. Parsers throw SchemaError carrying a JSON
// pointer to the offending field.

std::string serialize_graph(const CharacterGraph& graph);
CharacterGraph parse_graph(const std::string& json_text);

std::string serialize_crs(const Crs& crs);
Crs parse_crs(const std::string& json_text);

// JSON Lines, one triplet per line.
std::string serialize_triplets(std::span<const SpoTriplet> triplets);
std::vector<SpoTriplet> parse_triplets(const std::string& jsonl_text);

std::string serialize_ground_truth(const GroundTruth& gt);
GroundTruth parse_ground_truth(const std::string& json_text);

// Selection output: the chosen characters, the per-round score maps kept for
// audit, and the induced Selected-stage CRS the refine step starts from.
struct SelectionArtifact {
    std::string method;  // "ppr" or "count"
    std::vector<std::string> main;
    std::vector<std::string> sub;
    std::vector<std::string> selected;  // canonical names, selection order
    std::vector<SelectionRound> rounds;
    Crs crs;

    bool operator==(const SelectionArtifact&) const = default;
};

std::string serialize_selection(const SelectionArtifact& artifact);
SelectionArtifact parse_selection(const std::string& json_text);

std::string serialize_report(const EvalReport& report);
EvalReport parse_report(const std::string& json_text);
std::string report_table(const EvalReport& report);

std::string serialize_comparison(const ComparisonReport& report);
ComparisonReport parse_comparison(const std::string& json_text);

// Mean and population standard deviation per metric across reports.
// Not-applicable values are skipped unless na_as_zero is set; n counts the
// values that entered the mean.
struct AggregateRow {
    std::string metric;
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t n = 0;
    std::size_t not_applicable = 0;
};

std::vector<AggregateRow> aggregate_reports(std::span<const EvalReport> reports, bool na_as_zero);
std::string aggregate_table(const std::vector<AggregateRow>& rows);
std::string serialize_aggregate(const std::vector<AggregateRow>& rows);

}  // namespace crs::io
