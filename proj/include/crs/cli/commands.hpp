#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crs/cli/config.hpp"

namespace crs::cli {

// Stable exit codes for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitBackend = 4;
inline constexpr int kExitSchema = 5;

int exit_code_for(const std::exception& error);

struct BuildGraphArgs {
    std::vector<std::filesystem::path> scripts;
    PipelineConfig config;
};
// Writes <out>/triplets.jsonl and <out>/graph.json.
void cmd_build_graph(const BuildGraphArgs& args);

struct SelectArgs {
    std::filesystem::path graph_file;
    std::vector<std::string> main;
    std::vector<std::string> sub;
    std::string method = "ppr";       // or "count"
    std::optional<std::size_t> k;     // count method only; defaults to |main|+|sub|
    PipelineConfig config;
};
// Writes <out>/selection.json including the per-round score maps.
void cmd_select(const SelectArgs& args);

struct RefineArgs {
    std::filesystem::path selection_file;
    std::filesystem::path treatment_file;              // optional
    std::vector<std::filesystem::path> summary_files;  // at most 4
    PipelineConfig config;
};
// Writes <out>/crs.<stage>.json after every agent, in chain order; on a
// failure the snapshots already written stay on disk.
void cmd_refine(const RefineArgs& args);

struct EvaluateArgs {
    std::filesystem::path crs_file;
    std::filesystem::path gt_file;
    std::optional<std::string> embedder_override;  // "exact_match" forces the offline embedder
    std::optional<bool> na_as_zero;
    std::vector<std::filesystem::path> aggregate;  // aggregate mode: report.json files
    PipelineConfig config;
};
// Writes <out>/report.json + report.txt, or aggregate.json + aggregate.txt
// in aggregate mode.
void cmd_evaluate(const EvaluateArgs& args);

struct RenderArgs {
    std::filesystem::path crs_file;
    std::filesystem::path out_file;  // default <out>/crs.dot
    PipelineConfig config;
};
void cmd_render(const RenderArgs& args);

struct CompareArgs {
    std::filesystem::path graph_file;
    std::filesystem::path gt_file;
    std::vector<std::string> main;
    std::vector<std::string> sub;
    PipelineConfig config;
};
// Writes <out>/comparison.json + comparison.txt.
void cmd_compare_selection(const CompareArgs& args);

}  // namespace crs::cli
