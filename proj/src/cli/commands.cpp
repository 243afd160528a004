#include "crs/cli/commands.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "crs/cli/dot_export.hpp"
#include "crs/errors.hpp"
#include "crs/eval/compare.hpp"
#include "crs/eval/metrics.hpp"
#include "crs/ingest/chunker.hpp"
#include "crs/ingest/graph_builder.hpp"
#include "crs/ingest/triplet_extractor.hpp"
#include "crs/io.hpp"
#include "crs/llm/mock_backend.hpp"
#include "crs/text.hpp"

namespace crs::cli {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const SchemaError*>(&error) != nullptr) return kExitSchema;
    if (dynamic_cast<const BackendError*>(&error) != nullptr) return kExitBackend;
    if (dynamic_cast<const IoError*>(&error) != nullptr) return kExitIo;
    if (dynamic_cast<const ValidationError*>(&error) != nullptr) return kExitValidation;
    if (dynamic_cast<const ConvergenceFailure*>(&error) != nullptr) return kExitValidation;
    return 1;
}

namespace {

// Resolves a user-supplied character name; unknown names are a validation
// error listing the offender.
NodeId resolve_or_fail(const CharacterGraph& graph, const std::string& name) {
    const auto id = graph.resolve_alias(name);
    if (!id) throw ValidationError("unknown character name: " + name);
    return *id;
}

std::set<NodeId> resolve_names(const CharacterGraph& graph, const std::vector<std::string>& names) {
    std::set<NodeId> out;
    for (const auto& name : names) out.insert(resolve_or_fail(graph, name));
    return out;
}

}  // namespace

void cmd_build_graph(const BuildGraphArgs& args) {
    if (args.scripts.empty()) throw IoError("no script files given");

    struct Loaded {
        ScriptDocument doc;
    };
    std::vector<Loaded> docs;
    for (const auto& path : args.scripts) {
        ScriptDocument doc = parse_script_filename(path);
        doc.text = io::read_file(path);
        docs.push_back(Loaded{std::move(doc)});
    }
    std::sort(docs.begin(), docs.end(), [](const Loaded& a, const Loaded& b) {
        if (a.doc.drama_id != b.doc.drama_id) return a.doc.drama_id < b.doc.drama_id;
        return a.doc.episode < b.doc.episode;
    });

    // Chunk indices run across the episode sequence so every triplet keeps a
    // unique provenance index.
    std::vector<Chunk> chunks;
    for (const auto& loaded : docs) {
        for (auto& chunk : chunk_script(loaded.doc, args.config.chunk_size)) {
            chunk.index = chunks.size();
            chunks.push_back(std::move(chunk));
        }
    }

    const auto backend = make_backend(args.config.binding("triplets"));
    const TripletExtractor extractor(args.config.prompts().triplet_extraction(),
                                     args.config.triplet_delimiter);
    const TripletExtraction extraction =
        extractor.extract_all(chunks, *backend, args.config.parallelism);

    const CharacterGraph graph = build_base_graph(extraction.triplets);

    const fs::path out = args.config.output_dir;
    io::write_file(out / "triplets.jsonl", io::serialize_triplets(extraction.triplets));
    io::write_file(out / "graph.json", io::serialize_graph(graph));

    std::cout << "chunks=" << chunks.size() << " triplets=" << extraction.triplets.size()
              << " dropped_lines=" << extraction.dropped_lines
              << " nodes=" << graph.node_count() << " edges=" << graph.edge_count() << "\n";
}

void cmd_select(const SelectArgs& args) {
    if (args.main.empty()) throw ValidationError("at least one --main character is required");
    CharacterGraph graph = io::parse_graph(io::read_file(args.graph_file));

    const std::set<NodeId> main = resolve_names(graph, args.main);
    std::set<NodeId> sub = resolve_names(graph, args.sub);
    for (const NodeId id : main) sub.erase(id);

    for (const NodeId id : main) graph.node_mut(id).tier = Tier::Main;
    for (const NodeId id : sub) graph.node_mut(id).tier = Tier::Sub;

    io::SelectionArtifact artifact;
    artifact.method = args.method;
    for (const NodeId id : main) artifact.main.push_back(graph.node(id).canonical_name);
    for (const NodeId id : sub) artifact.sub.push_back(graph.node(id).canonical_name);

    std::vector<NodeId> selected;
    if (args.method == "ppr") {
        const SelectionResult result = select_characters(graph, main, sub, args.config.ppr);
        selected = result.selected;
        artifact.rounds = result.rounds;
    } else if (args.method == "count") {
        const std::size_t k = args.k.value_or(main.size() + sub.size());
        selected = select_by_edge_count(graph, k, args.config.degree_mode);
    } else {
        throw ValidationError("unknown selection method '" + args.method + "'");
    }

    for (const NodeId id : selected) {
        artifact.selected.push_back(graph.node(id).canonical_name);
    }
    artifact.crs.graph =
        graph.induced_subgraph(std::set<NodeId>(selected.begin(), selected.end()));
    artifact.crs.advance_stage(Stage::Selected);

    io::write_file(args.config.output_dir / "selection.json", io::serialize_selection(artifact));
    std::cout << "selected=" << selected.size() << " rounds=" << artifact.rounds.size() << "\n";
}

void cmd_refine(const RefineArgs& args) {
    const io::SelectionArtifact artifact =
        io::parse_selection(io::read_file(args.selection_file));

    AgentContext ctx;
    ctx.crs = artifact.crs;
    if (!args.treatment_file.empty()) ctx.treatment = io::read_file(args.treatment_file);
    if (args.summary_files.size() > 4) {
        throw ValidationError("at most 4 episode summaries are supported");
    }
    for (const auto& file : args.summary_files) ctx.summaries.push_back(io::read_file(file));

    const auto backend = make_backend(args.config.binding("agents"));
    AgentChain chain(*backend, args.config.prompts(), args.config.agents);

    const fs::path out = args.config.output_dir;
    const auto persist = [&](const Crs& crs) {
        io::write_file(out / ("crs." + std::string(to_string(crs.stage())) + ".json"),
                       io::serialize_crs(crs));
    };

    struct Step {
        const char* name;
        Crs (AgentChain::*apply)(const AgentContext&);
    };
    const Step steps[] = {
        {"merge_duplicates", &AgentChain::merge_duplicates},
        {"extract_relations", &AgentChain::extract_relations},
        {"filter_irrelevant", &AgentChain::filter_irrelevant},
        {"assign_roles", &AgentChain::assign_roles},
        {"assign_groups", &AgentChain::assign_groups},
    };
    for (const Step& step : steps) {
        try {
            ctx.crs = (chain.*step.apply)(ctx);
        } catch (const AuthError& e) {
            throw AuthError(std::string(step.name) + ": " + e.what());
        } catch (const BackendError& e) {
            throw BackendError(std::string(step.name) + ": " + e.what());
        }
        persist(ctx.crs);
        std::cout << step.name << ": characters=" << ctx.crs.graph.node_count()
                  << " relations=" << ctx.crs.relations.size() << "\n";
    }
}

void cmd_evaluate(const EvaluateArgs& args) {
    const fs::path out = args.config.output_dir;
    const bool na_as_zero = args.na_as_zero.value_or(args.config.na_as_zero);

    if (!args.aggregate.empty()) {
        std::vector<EvalReport> reports;
        for (const auto& file : args.aggregate) {
            reports.push_back(io::parse_report(io::read_file(file)));
        }
        const auto rows = io::aggregate_reports(reports, na_as_zero);
        io::write_file(out / "aggregate.json", io::serialize_aggregate(rows));
        io::write_file(out / "aggregate.txt", io::aggregate_table(rows));
        std::cout << io::aggregate_table(rows);
        return;
    }

    const Crs crs = io::parse_crs(io::read_file(args.crs_file));
    const GroundTruth gt = io::parse_ground_truth(io::read_file(args.gt_file));

    BackendBinding binding = args.config.binding("embeddings");
    if (args.embedder_override) {
        binding = BackendBinding{};
        binding.type = *args.embedder_override;
    }
    const auto embedder = make_backend(binding);

    const EvalReport report = evaluate(crs, gt, *embedder, na_as_zero);
    io::write_file(out / "report.json", io::serialize_report(report));
    io::write_file(out / "report.txt", io::report_table(report));
    std::cout << io::report_table(report);
}

void cmd_render(const RenderArgs& args) {
    const Crs crs = io::parse_crs(io::read_file(args.crs_file));
    const fs::path out_file =
        args.out_file.empty() ? args.config.output_dir / "crs.dot" : args.out_file;
    io::write_file(out_file, to_dot(crs));
    std::cout << "wrote " << out_file.string() << "\n";
}

void cmd_compare_selection(const CompareArgs& args) {
    if (args.main.empty()) throw ValidationError("at least one --main character is required");
    CharacterGraph graph = io::parse_graph(io::read_file(args.graph_file));
    const GroundTruth gt = io::parse_ground_truth(io::read_file(args.gt_file));

    const std::set<NodeId> main = resolve_names(graph, args.main);
    std::set<NodeId> sub = resolve_names(graph, args.sub);
    for (const NodeId id : main) sub.erase(id);
    for (const NodeId id : main) graph.node_mut(id).tier = Tier::Main;
    for (const NodeId id : sub) graph.node_mut(id).tier = Tier::Sub;

    const ComparisonReport report =
        compare_selection(graph, main, sub, gt, args.config.ppr, args.config.degree_mode);

    const fs::path out = args.config.output_dir;
    io::write_file(out / "comparison.json", io::serialize_comparison(report));
    io::write_file(out / "comparison.txt", comparison_table(report));
    std::cout << comparison_table(report);
}

}  // namespace crs::cli
