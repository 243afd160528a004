#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "crs/cli/commands.hpp"
#include "crs/errors.hpp"

namespace {

crs::PipelineConfig load_config(const std::string& config_path, const std::string& out_dir) {
    crs::PipelineConfig config = config_path.empty()
                                     ? crs::PipelineConfig::defaults()
                                     : crs::PipelineConfig::load(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character relation structure extraction pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    app.add_option("--config", config_path, "Pipeline config file (JSON)");
    app.add_option("--out", out_dir, "Output directory (overrides config)");

    // build-graph
    auto* build = app.add_subcommand("build-graph",
                                     "Extract SPO triplets from scripts and build the base graph");
    std::vector<std::string> scripts;
    build->add_option("scripts", scripts, "Script files named <drama_id>_e<episode>.txt")
        ->required();

    // select
    auto* select = app.add_subcommand("select", "Select narratively significant characters");
    std::string graph_file;
    std::vector<std::string> main_names, sub_names;
    std::string method = "ppr";
    std::size_t k = 0;
    select->add_option("--graph", graph_file, "graph.json from build-graph")->required();
    select->add_option("--main", main_names, "Main character name (repeatable)")->required();
    select->add_option("--sub", sub_names, "Sub character name (repeatable)");
    select->add_option("--method", method, "ppr or count")->check(CLI::IsMember({"ppr", "count"}));
    select->add_option("--k", k, "List size for the count method");

    // refine
    auto* refine = app.add_subcommand("refine", "Run the agent chain over a selection");
    std::string selection_file, treatment_file;
    std::vector<std::string> summary_files;
    refine->add_option("--selection", selection_file, "selection.json from select")->required();
    refine->add_option("--treatment", treatment_file, "Treatment text file");
    refine->add_option("--summaries", summary_files, "Episode summary files (up to 4)");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score a CRS against ground truth");
    std::string crs_file, gt_file, embedder;
    bool na_as_zero = false;
    std::vector<std::string> aggregate_files;
    evaluate->add_option("--crs", crs_file, "CRS snapshot to score");
    evaluate->add_option("--gt", gt_file, "Ground truth JSON");
    evaluate->add_option("--embedder", embedder,
                         "Embedding backend override (exact_match)");
    evaluate->add_flag("--na-as-zero", na_as_zero,
                       "Report not-applicable metrics as 0.0 for table parity");
    evaluate->add_option("--aggregate", aggregate_files,
                         "Aggregate previously written report.json files (mean ± std)");

    // render
    auto* render = app.add_subcommand("render", "Export a refined CRS as Graphviz DOT");
    std::string render_crs, render_out;
    render->add_option("--crs", render_crs, "CRS snapshot (stage filtered or later)")->required();
    render->add_option("--dot", render_out, "Output DOT path (default <out>/crs.dot)");

    // compare-selection
    auto* compare = app.add_subcommand("compare-selection",
                                       "Compare PPR selection with the edge-count ranking");
    std::string cmp_graph, cmp_gt;
    std::vector<std::string> cmp_main, cmp_sub;
    compare->add_option("--graph", cmp_graph, "graph.json from build-graph")->required();
    compare->add_option("--gt", cmp_gt, "Ground truth JSON")->required();
    compare->add_option("--main", cmp_main, "Main character name (repeatable)")->required();
    compare->add_option("--sub", cmp_sub, "Sub character name (repeatable)");

    // --config/--out may also appear after the subcommand name.
    for (CLI::App* sub : {build, select, refine, evaluate, render, compare}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const crs::PipelineConfig config = load_config(config_path, out_dir);

        if (build->parsed()) {
            crs::cli::BuildGraphArgs args;
            for (const auto& s : scripts) args.scripts.emplace_back(s);
            args.config = config;
            crs::cli::cmd_build_graph(args);
        } else if (select->parsed()) {
            crs::cli::SelectArgs args;
            args.graph_file = graph_file;
            args.main = main_names;
            args.sub = sub_names;
            args.method = method;
            if (k > 0) args.k = k;
            args.config = config;
            crs::cli::cmd_select(args);
        } else if (refine->parsed()) {
            crs::cli::RefineArgs args;
            args.selection_file = selection_file;
            if (!treatment_file.empty()) args.treatment_file = treatment_file;
            for (const auto& s : summary_files) args.summary_files.emplace_back(s);
            args.config = config;
            crs::cli::cmd_refine(args);
        } else if (evaluate->parsed()) {
            crs::cli::EvaluateArgs args;
            if (aggregate_files.empty()) {
                if (crs_file.empty() || gt_file.empty()) {
                    throw crs::ValidationError("evaluate needs --crs and --gt (or --aggregate)");
                }
                args.crs_file = crs_file;
                args.gt_file = gt_file;
            }
            if (!embedder.empty()) args.embedder_override = embedder;
            if (na_as_zero) args.na_as_zero = true;
            for (const auto& f : aggregate_files) args.aggregate.emplace_back(f);
            args.config = config;
            crs::cli::cmd_evaluate(args);
        } else if (render->parsed()) {
            crs::cli::RenderArgs args;
            args.crs_file = render_crs;
            if (!render_out.empty()) args.out_file = render_out;
            args.config = config;
            crs::cli::cmd_render(args);
        } else if (compare->parsed()) {
            crs::cli::CompareArgs args;
            args.graph_file = cmp_graph;
            args.gt_file = cmp_gt;
            args.main = cmp_main;
            args.sub = cmp_sub;
            args.config = config;
            crs::cli::cmd_compare_selection(args);
        }
        return crs::cli::kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return crs::cli::exit_code_for(e);
    }
}
