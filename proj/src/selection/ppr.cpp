#include "crs/selection/ppr.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "crs/errors.hpp"

namespace crs {

void PprConfig::validate() const {
    if (!(threshold > 0.0 && threshold < 1.0)) throw ValidationError("threshold must be in (0,1)");
    if (!(damping > 0.0 && damping < 1.0)) throw ValidationError("damping must be in (0,1)");
    if (!(convergence_epsilon > 0.0)) throw ValidationError("convergence_epsilon must be positive");
    if (max_power_iterations < 1) throw ValidationError("max_power_iterations must be >= 1");
    if (max_reseed_rounds < 1) throw ValidationError("max_reseed_rounds must be >= 1");
    if (main_seed_score < 0.0 || sub_seed_score < 0.0) {
        throw ValidationError("seed scores must be non-negative");
    }
    if (main_seed_score == 0.0 && sub_seed_score == 0.0) {
        throw ValidationError("seed scores must not both be zero");
    }
}

namespace {

// CSR-style adjacency over a dense reindexing of the node ids.
struct Adjacency {
    std::vector<NodeId> ids;          // dense index -> node id
    std::vector<std::size_t> offset;  // size n+1
    std::vector<std::size_t> column;
    std::vector<double> weight;
    std::vector<double> out_weight;   // weighted degree per node
};

Adjacency build_adjacency(const CharacterGraph& graph) {
    Adjacency adj;
    adj.ids = graph.node_ids();
    const std::size_t n = adj.ids.size();

    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(adj.ids[i], i);

    std::vector<std::size_t> counts(n, 0);
    for (const auto& [key, w] : graph.edges()) {
        (void)w;
        ++counts[index.at(key.first)];
        ++counts[index.at(key.second)];
    }
    adj.offset.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) adj.offset[i + 1] = adj.offset[i] + counts[i];

    adj.column.resize(adj.offset[n]);
    adj.weight.resize(adj.offset[n]);
    std::vector<std::size_t> fill(adj.offset.begin(), adj.offset.end() - 1);
    for (const auto& [key, w] : graph.edges()) {
        const std::size_t a = index.at(key.first);
        const std::size_t b = index.at(key.second);
        adj.column[fill[a]] = b;
        adj.weight[fill[a]++] = static_cast<double>(w);
        adj.column[fill[b]] = a;
        adj.weight[fill[b]++] = static_cast<double>(w);
    }

    adj.out_weight.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = adj.offset[i]; k < adj.offset[i + 1]; ++k) {
            adj.out_weight[i] += adj.weight[k];
        }
    }
    return adj;
}

}  // namespace

std::map<NodeId, double> personalized_pagerank(const CharacterGraph& graph,
                                               const std::map<NodeId, double>& personalization,
                                               const PprConfig& config) {
    config.validate();
    if (graph.empty()) throw ValidationError("personalized_pagerank requires a non-empty graph");

    const Adjacency adj = build_adjacency(graph);
    const std::size_t n = adj.ids.size();

    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(adj.ids[i], i);

    // Normalized restart distribution.
    std::vector<double> restart(n, 0.0);
    double mass = 0.0;
    for (const auto& [id, value] : personalization) {
        const auto it = index.find(id);
        if (it == index.end()) {
            throw ValidationError("personalization references unknown node id " +
                                  std::to_string(id));
        }
        if (value < 0.0) throw ValidationError("personalization weights must be non-negative");
        restart[it->second] = value;
        mass += value;
    }
    if (mass <= 0.0) throw InvalidSeedsError("personalization has no positive mass");
    for (double& r : restart) r /= mass;

    const double d = config.damping;
    std::vector<double> x(restart);
    std::vector<double> y(n, 0.0);

    double residual = 0.0;
    for (int iter = 0; iter < config.max_power_iterations; ++iter) {
        // Mass parked on nodes without edges re-enters through the restart
        // distribution.
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (adj.offset[i] == adj.offset[i + 1]) dangling += x[i];
        }
        const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t vi = 0; vi < count; ++vi) {
            const std::size_t v = static_cast<std::size_t>(vi);
            double in = 0.0;
            for (std::size_t k = adj.offset[v]; k < adj.offset[v + 1]; ++k) {
                const std::size_t u = adj.column[k];
                in += x[u] * adj.weight[k] / adj.out_weight[u];
            }
            y[v] = d * (in + dangling * restart[v]) + (1.0 - d) * restart[v];
        }

        // Serial residual keeps the iteration count independent of the
        // thread count.
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual += std::abs(y[i] - x[i]);
        x.swap(y);
        if (residual <= config.convergence_epsilon) {
            std::map<NodeId, double> scores;
            for (std::size_t i = 0; i < n; ++i) scores.emplace(adj.ids[i], x[i]);
            return scores;
        }
    }
    throw ConvergenceFailure("personalized_pagerank did not converge within " +
                                 std::to_string(config.max_power_iterations) + " iterations",
                             residual);
}

}  // namespace crs
