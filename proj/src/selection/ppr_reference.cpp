#include "crs/selection/ppr_reference.hpp"

#include <cmath>
#include <vector>

#include "crs/errors.hpp"

namespace crs::reference {

std::map<NodeId, double> personalized_pagerank_dense(
    const CharacterGraph& graph, const std::map<NodeId, double>& personalization,
    const PprConfig& config) {
    config.validate();
    if (graph.empty()) throw ValidationError("personalized_pagerank requires a non-empty graph");

    const std::vector<NodeId> ids = graph.node_ids();
    const std::size_t n = ids.size();
    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);

    // Row-stochastic transition matrix; all-zero rows mark dangling nodes.
    std::vector<std::vector<double>> transition(n, std::vector<double>(n, 0.0));
    std::vector<bool> dangling(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        const auto adjacent = graph.neighbors(ids[i]);
        if (adjacent.empty()) continue;
        dangling[i] = false;
        double total = 0.0;
        for (const auto& [other, w] : adjacent) {
            (void)other;
            total += static_cast<double>(w);
        }
        for (const auto& [other, w] : adjacent) {
            transition[i][index.at(other)] = static_cast<double>(w) / total;
        }
    }

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
        double dangling_mass = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (dangling[i]) dangling_mass += x[i];
        }
        for (std::size_t v = 0; v < n; ++v) {
            double in = 0.0;
            for (std::size_t u = 0; u < n; ++u) in += x[u] * transition[u][v];
            y[v] = d * (in + dangling_mass * restart[v]) + (1.0 - d) * restart[v];
        }
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual += std::abs(y[i] - x[i]);
        x.swap(y);
        if (residual <= config.convergence_epsilon) {
            std::map<NodeId, double> scores;
            for (std::size_t i = 0; i < n; ++i) scores.emplace(ids[i], x[i]);
            return scores;
        }
    }
    throw ConvergenceFailure("dense power iteration did not converge within " +
                                 std::to_string(config.max_power_iterations) + " iterations",
                             residual);
}

}  // namespace crs::reference
