#include "crs/cli/config.hpp"

#include <fstream>

#include <json.hpp>

#include "crs/errors.hpp"
#include "crs/llm/mock_backend.hpp"

namespace crs {

using nlohmann::json;

PipelineConfig PipelineConfig::defaults() {
    PipelineConfig config;
    config.backends.emplace("triplets", BackendBinding{});
    config.backends.emplace("agents", BackendBinding{});
    config.backends.emplace("embeddings", BackendBinding{"exact_match", {}, {}});
    return config;
}

const BackendBinding& PipelineConfig::binding(const std::string& stage) const {
    const auto it = backends.find(stage);
    if (it == backends.end()) {
        throw ValidationError("no backend binding for stage '" + stage + "'");
    }
    return it->second;
}

PromptLibrary PipelineConfig::prompts() const {
    if (prompt_dir.empty()) return PromptLibrary::builtin();
    return PromptLibrary::load(prompt_dir);
}

namespace {

double number_or(const json& j, const char* key, double fallback, const std::string& ptr) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw SchemaError("expected a number", ptr + "/" + key);
    return j[key].get<double>();
}

std::int64_t int_or(const json& j, const char* key, std::int64_t fallback,
                    const std::string& ptr) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw SchemaError("expected an integer", ptr + "/" + key);
    return j[key].get<std::int64_t>();
}

std::string string_or(const json& j, const char* key, const std::string& fallback,
                      const std::string& ptr) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw SchemaError("expected a string", ptr + "/" + key);
    return j[key].get<std::string>();
}

bool bool_or(const json& j, const char* key, bool fallback, const std::string& ptr) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) throw SchemaError("expected a boolean", ptr + "/" + key);
    return j[key].get<bool>();
}

BackendBinding parse_binding(const json& j, const std::filesystem::path& base,
                             const std::string& ptr) {
    BackendBinding binding;
    binding.type = string_or(j, "type", "mock", ptr);
    if (binding.type == "mock") {
        const std::string script = string_or(j, "script", "", ptr);
        if (!script.empty()) {
            std::filesystem::path p(script);
            binding.script = p.is_absolute() ? p : base / p;
        }
    } else if (binding.type == "http") {
        binding.http.base_url = string_or(j, "base_url", "", ptr);
        if (binding.http.base_url.empty()) {
            throw SchemaError("http backend needs a base_url", ptr + "/base_url");
        }
        binding.http.model = string_or(j, "model", "", ptr);
        binding.http.embedding_model = string_or(j, "embedding_model", "", ptr);
        binding.http.api_key_env = string_or(j, "api_key_env", "CRS_API_KEY", ptr);
        binding.http.max_retries = static_cast<int>(int_or(j, "max_retries", 3, ptr));
        binding.http.timeout_ms = static_cast<int>(int_or(j, "timeout_ms", 30000, ptr));
        binding.http.backoff_initial_ms =
            static_cast<int>(int_or(j, "backoff_initial_ms", 250, ptr));
    } else if (binding.type != "exact_match") {
        throw SchemaError("unknown backend type '" + binding.type + "'", ptr + "/type");
    }
    return binding;
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read config " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what(), "/");
    }
    const std::filesystem::path base = file.has_parent_path()
                                           ? file.parent_path()
                                           : std::filesystem::path(".");

    PipelineConfig config = defaults();
    config.chunk_size = static_cast<std::size_t>(
        int_or(j, "chunk_size", static_cast<std::int64_t>(config.chunk_size), ""));
    if (config.chunk_size < 1) throw SchemaError("chunk_size must be >= 1", "/chunk_size");
    config.triplet_delimiter = string_or(j, "triplet_delimiter", config.triplet_delimiter, "");
    if (config.triplet_delimiter.empty()) {
        throw SchemaError("triplet_delimiter must be non-empty", "/triplet_delimiter");
    }
    config.parallelism = static_cast<unsigned>(
        int_or(j, "parallelism", static_cast<std::int64_t>(config.parallelism), ""));
    const std::filesystem::path out_dir = string_or(j, "output_dir", config.output_dir.string(), "");
    config.output_dir = out_dir.is_absolute() ? out_dir : base / out_dir;
    const std::filesystem::path prompt_dir = string_or(j, "prompt_dir", "", "");
    if (!prompt_dir.empty()) {
        config.prompt_dir = prompt_dir.is_absolute() ? prompt_dir : base / prompt_dir;
    }
    config.na_as_zero = bool_or(j, "na_as_zero", config.na_as_zero, "");

    if (j.contains("ppr")) {
        const json& p = j["ppr"];
        if (!p.is_object()) throw SchemaError("expected an object", "/ppr");
        config.ppr.main_seed_score =
            number_or(p, "main_seed_score", config.ppr.main_seed_score, "/ppr");
        config.ppr.sub_seed_score =
            number_or(p, "sub_seed_score", config.ppr.sub_seed_score, "/ppr");
        config.ppr.threshold = number_or(p, "threshold", config.ppr.threshold, "/ppr");
        config.ppr.damping = number_or(p, "damping", config.ppr.damping, "/ppr");
        config.ppr.convergence_epsilon =
            number_or(p, "convergence_epsilon", config.ppr.convergence_epsilon, "/ppr");
        config.ppr.max_power_iterations = static_cast<int>(
            int_or(p, "max_power_iterations", config.ppr.max_power_iterations, "/ppr"));
        config.ppr.max_reseed_rounds = static_cast<int>(
            int_or(p, "max_reseed_rounds", config.ppr.max_reseed_rounds, "/ppr"));
        try {
            config.ppr.validate();
        } catch (const ValidationError& e) {
            throw SchemaError(e.what(), "/ppr");
        }
    }

    if (j.contains("selection")) {
        const json& s = j["selection"];
        if (!s.is_object()) throw SchemaError("expected an object", "/selection");
        const std::string mode = string_or(s, "degree_mode", "edge_count", "/selection");
        if (mode == "edge_count") config.degree_mode = DegreeMode::EdgeCount;
        else if (mode == "weight_sum") config.degree_mode = DegreeMode::WeightSum;
        else throw SchemaError("degree_mode must be edge_count or weight_sum",
                               "/selection/degree_mode");
        config.agents.pairs_main_sub_only =
            bool_or(s, "pairs_main_sub_only", config.agents.pairs_main_sub_only, "/selection");
    }

    if (j.contains("agents")) {
        const json& a = j["agents"];
        if (!a.is_object()) throw SchemaError("expected an object", "/agents");
        if (a.contains("age_denylist")) {
            if (!a["age_denylist"].is_array()) {
                throw SchemaError("expected an array", "/agents/age_denylist");
            }
            config.agents.age_denylist.clear();
            for (const auto& term : a["age_denylist"]) {
                if (!term.is_string()) throw SchemaError("expected a string", "/agents/age_denylist");
                config.agents.age_denylist.push_back(term.get<std::string>());
            }
        }
        config.agents.reparse_retries = static_cast<int>(
            int_or(a, "reparse_retries", config.agents.reparse_retries, "/agents"));
        config.agents.pairs_main_sub_only =
            bool_or(a, "pairs_main_sub_only", config.agents.pairs_main_sub_only, "/agents");
    }

    if (j.contains("backends")) {
        const json& b = j["backends"];
        if (!b.is_object()) throw SchemaError("expected an object", "/backends");
        for (const auto& [stage, binding] : b.items()) {
            if (stage != "triplets" && stage != "agents" && stage != "embeddings") {
                throw SchemaError("unknown backend stage '" + stage + "'", "/backends/" + stage);
            }
            config.backends[stage] = parse_binding(binding, base, "/backends/" + stage);
        }
    }
    return config;
}

std::unique_ptr<LlmBackend> make_backend(const BackendBinding& binding) {
    if (binding.type == "mock" || binding.type == "exact_match") {
        std::vector<MockRule> rules;
        if (!binding.script.empty()) rules = MockBackend::load_script(binding.script);
        return std::make_unique<MockBackend>(std::move(rules));
    }
    if (binding.type == "http") {
        return std::make_unique<HttpBackend>(binding.http);
    }
    throw ValidationError("unknown backend type '" + binding.type + "'");
}

}  // namespace crs
