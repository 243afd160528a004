#pragma once

#include <map>

#include "crs/core/graph.hpp"

namespace crs {

struct PprConfig {
    double main_seed_score = 1.0;
    double sub_seed_score = 0.5;
    double threshold = 0.02;
    double damping = 0.85;
    double convergence_epsilon = 1e-12;
    int max_power_iterations = 500;
    int max_reseed_rounds = 64;

    // Throws ValidationError unless 0 < threshold < 1, 0 < damping < 1,
    // epsilon > 0, iteration limits >= 1 and seed scores >= 0 with at least
    // one positive.
    void validate() const;

    bool operator==(const PprConfig&) const = default;
};

// Stationary distribution of the damped random walk over the weighted graph
// with restart distribution proportional to `personalization`. Edge weights
// act as transition proportions; nodes without edges hand their walk mass to
// the restart distribution, which keeps the result a probability
// distribution over every graph, including disconnected ones.
//
// The inner update is OpenMP-parallel across nodes; see
// selection/ppr_reference.hpp for the serial dense implementation kept for
// testing and benchmarking.
//
// Throws InvalidSeedsError when no personalization entry over the graph is
// positive, ValidationError on negative or unknown-node entries, and
// ConvergenceFailure when the residual does not reach convergence_epsilon
// within max_power_iterations.
std::map<NodeId, double> personalized_pagerank(const CharacterGraph& graph,
                                               const std::map<NodeId, double>& personalization,
                                               const PprConfig& config);

}  // namespace crs
