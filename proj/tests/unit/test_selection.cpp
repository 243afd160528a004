#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "crs/errors.hpp"
#include "crs/selection/ppr.hpp"
#include "crs/selection/ppr_reference.hpp"
#include "crs/selection/selector.hpp"

using namespace crs;

namespace {

PprConfig tight_config() {
    PprConfig config;
    config.convergence_epsilon = 1e-12;
    config.max_power_iterations = 2000;
    return config;
}

CharacterGraph random_graph(std::mt19937& rng, std::size_t max_nodes) {
    CharacterGraph g;
    std::uniform_int_distribution<std::size_t> n_dist(1, max_nodes);
    const std::size_t n = n_dist(rng);
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(g.add_node("c" + std::to_string(i)));
    if (n >= 2) {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::uniform_int_distribution<int> weight(1, 9);
        std::uniform_int_distribution<std::size_t> edges(0, 2 * n);
        const std::size_t m = edges(rng);
        for (std::size_t e = 0; e < m; ++e) {
            const NodeId a = ids[pick(rng)];
            const NodeId b = ids[pick(rng)];
            if (a != b) g.add_edge_weight(a, b, weight(rng));
        }
    }
    return g;
}

std::map<NodeId, double> random_seeds(const CharacterGraph& g, std::mt19937& rng) {
    std::map<NodeId, double> seeds;
    std::uniform_real_distribution<double> mass(0.1, 3.0);
    std::uniform_int_distribution<int> flip(0, 1);
    for (const NodeId id : g.node_ids()) {
        if (flip(rng) != 0) seeds[id] = mass(rng);
    }
    if (seeds.empty()) seeds[g.node_ids().front()] = 1.0;
    return seeds;
}

}  // namespace

TEST_SUITE_BEGIN("selection");

TEST_CASE("single seeded node is a fixed point") {
    CharacterGraph g;
    const NodeId a = g.add_node("A");
    const auto scores = personalized_pagerank(g, {{a, 1.0}}, tight_config());
    CHECK(scores.at(a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-node chain matches the closed form and the dense oracle") {
    CharacterGraph g;
    const NodeId a = g.add_node("A");
    const NodeId b = g.add_node("B");
    g.add_edge_weight(a, b, 1);

    const auto config = tight_config();
    const auto scores = personalized_pagerank(g, {{a, 1.0}}, config);

    // Fixed point solved by hand: x_A = 1/(1+d), x_B = d/(1+d) with d = 0.85.
    CHECK(scores.at(a) == doctest::Approx(1.0 / 1.85).epsilon(1e-10));
    CHECK(scores.at(b) == doctest::Approx(0.85 / 1.85).epsilon(1e-10));

    const auto oracle = reference::personalized_pagerank_dense(g, {{a, 1.0}}, config);
    CHECK(std::abs(scores.at(a) - oracle.at(a)) < 1e-9);
    CHECK(std::abs(scores.at(b) - oracle.at(b)) < 1e-9);
}

TEST_CASE("symmetric cycle with uniform seeds is uniform") {
    CharacterGraph g;
    std::vector<NodeId> ids;
    for (int i = 0; i < 4; ++i) ids.push_back(g.add_node("n" + std::to_string(i)));
    for (int i = 0; i < 4; ++i) g.add_edge_weight(ids[i], ids[(i + 1) % 4], 1);

    std::map<NodeId, double> seeds;
    for (const NodeId id : ids) seeds[id] = 1.0;
    const auto scores = personalized_pagerank(g, seeds, tight_config());
    for (const NodeId id : ids) CHECK(scores.at(id) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("error contracts: seeds and convergence") {
    CharacterGraph g;
    const NodeId a = g.add_node("A");
    CHECK_THROWS_AS(personalized_pagerank(g, {{a, 0.0}}, tight_config()), InvalidSeedsError);
    CHECK_THROWS_AS(personalized_pagerank(g, {}, tight_config()), InvalidSeedsError);
    CHECK_THROWS_AS(personalized_pagerank(g, {{a, -1.0}}, tight_config()), ValidationError);
    CHECK_THROWS_AS(personalized_pagerank(g, {{99, 1.0}}, tight_config()), ValidationError);

    CharacterGraph empty;
    CHECK_THROWS_AS(personalized_pagerank(empty, {{0, 1.0}}, tight_config()), ValidationError);

    CharacterGraph big;
    std::vector<NodeId> ids;
    for (int i = 0; i < 20; ++i) ids.push_back(big.add_node("n" + std::to_string(i)));
    for (int i = 0; i < 19; ++i) big.add_edge_weight(ids[i], ids[i + 1], 1);
    PprConfig strangled = tight_config();
    strangled.max_power_iterations = 1;
    try {
        personalized_pagerank(big, {{ids[0], 1.0}}, strangled);
        FAIL("expected ConvergenceFailure");
    } catch (const ConvergenceFailure& e) {
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("scores agree with the dense oracle and sum to one on random graphs") {
    std::mt19937 rng(2024);
    const auto config = tight_config();
    for (int round = 0; round < 25; ++round) {
        const CharacterGraph g = random_graph(rng, 30);
        const auto seeds = random_seeds(g, rng);
        const auto fast = personalized_pagerank(g, seeds, config);
        const auto slow = reference::personalized_pagerank_dense(g, seeds, config);
        double sum = 0.0;
        for (const auto& [id, score] : fast) {
            CHECK(score >= 0.0);
            CHECK(std::abs(score - slow.at(id)) < 1e-9);
            sum += score;
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("personalization scale does not change the result") {
    std::mt19937 rng(77);
    const CharacterGraph g = random_graph(rng, 20);
    const auto seeds = random_seeds(g, rng);
    const auto config = tight_config();
    const auto base = personalized_pagerank(g, seeds, config);

    std::map<NodeId, double> quadrupled;
    for (const auto& [id, v] : seeds) quadrupled[id] = 4.0 * v;  // exact in binary
    CHECK(personalized_pagerank(g, quadrupled, config) == base);

    std::map<NodeId, double> tripled;
    for (const auto& [id, v] : seeds) tripled[id] = 3.0 * v;
    const auto near = personalized_pagerank(g, tripled, config);
    for (const auto& [id, score] : near) CHECK(std::abs(score - base.at(id)) < 1e-9);
}

TEST_CASE("star graph: every leaf clears the threshold in round zero") {
    CharacterGraph g;
    const NodeId hub = g.add_node("Hub", Tier::Main);
    std::vector<NodeId> leaves;
    for (int i = 0; i < 5; ++i) {
        leaves.push_back(g.add_node("Leaf" + std::to_string(i)));
        g.add_edge_weight(hub, leaves.back(), 1);
    }
    const auto config = tight_config();

    // Independent oracle confirms each leaf exceeds the 0.02 threshold.
    const auto oracle = reference::personalized_pagerank_dense(g, {{hub, 1.0}}, config);
    for (const NodeId leaf : leaves) CHECK(oracle.at(leaf) > config.threshold);

    const SelectionResult result = select_characters(g, {hub}, {}, config);
    REQUIRE(result.rounds.size() >= 1);
    for (const NodeId leaf : leaves) {
        CHECK(std::count(result.selected.begin(), result.selected.end(), leaf) == 1);
    }
    CHECK(result.selected.front() == hub);
}

TEST_CASE("disconnected components get no mass in round zero") {
    CharacterGraph g;
    const NodeId a = g.add_node("A", Tier::Main);
    const NodeId b = g.add_node("B");
    g.add_edge_weight(a, b, 1);
    const NodeId c = g.add_node("C");
    const NodeId d = g.add_node("D");
    g.add_edge_weight(c, d, 2);

    const SelectionResult result = select_characters(g, {a}, {}, tight_config());
    REQUIRE(!result.rounds.empty());
    CHECK(result.rounds[0].scores.at(c) == 0.0);
    CHECK(result.rounds[0].scores.at(d) == 0.0);
    CHECK(std::count(result.selected.begin(), result.selected.end(), c) == 0);
    CHECK(std::count(result.selected.begin(), result.selected.end(), d) == 0);
}

TEST_CASE("a lone main character selects itself") {
    CharacterGraph g;
    const NodeId a = g.add_node("A", Tier::Main);
    const SelectionResult result = select_characters(g, {a}, {}, tight_config());
    CHECK(result.selected == std::vector<NodeId>{a});
}

TEST_CASE("main and sub are always selected and rounds stay normalized") {
    std::mt19937 rng(5);
    const auto config = tight_config();
    for (int round = 0; round < 10; ++round) {
        const CharacterGraph g = random_graph(rng, 15);
        const auto ids = g.node_ids();
        std::set<NodeId> main = {ids[0]};
        std::set<NodeId> sub;
        if (ids.size() > 1) sub.insert(ids[1]);
        const SelectionResult result = select_characters(g, main, sub, config);
        for (const NodeId id : main) {
            CHECK(std::count(result.selected.begin(), result.selected.end(), id) == 1);
        }
        for (const NodeId id : sub) {
            CHECK(std::count(result.selected.begin(), result.selected.end(), id) == 1);
        }
        for (const auto& r : result.rounds) {
            double sum = 0.0;
            for (const auto& [id, score] : r.scores) sum += score;
            CHECK(std::abs(sum - 1.0) < 1e-9);
        }
        // Determinism: the same inputs give the same result.
        CHECK(select_characters(g, main, sub, config) == result);
    }
}

TEST_CASE("reseed rounds honor the configured cap") {
    CharacterGraph g;
    const NodeId hub = g.add_node("Hub", Tier::Main);
    for (int i = 0; i < 6; ++i) {
        g.add_edge_weight(hub, g.add_node("L" + std::to_string(i)), 1);
    }
    PprConfig config = tight_config();
    config.max_reseed_rounds = 2;
    const SelectionResult result = select_characters(g, {hub}, {}, config);
    CHECK(result.rounds.size() == 3);  // round zero + two re-seeds
}

TEST_CASE("edge-count ranking follows degree with documented tie-breaks") {
    SUBCASE("path graph: the middle node has the unique max degree") {
        CharacterGraph g;
        const NodeId a = g.add_node("A");
        const NodeId b = g.add_node("B");
        const NodeId c = g.add_node("C");
        g.add_edge_weight(a, b, 1);
        g.add_edge_weight(b, c, 1);
        CHECK(select_by_edge_count(g, 1) == std::vector<NodeId>{b});
    }
    SUBCASE("triangle: symmetric, all three selected") {
        CharacterGraph g;
        const NodeId a = g.add_node("A");
        const NodeId b = g.add_node("B");
        const NodeId c = g.add_node("C");
        g.add_edge_weight(a, b, 1);
        g.add_edge_weight(b, c, 1);
        g.add_edge_weight(a, c, 1);
        const auto top = select_by_edge_count(g, 3);
        CHECK(top.size() == 3);
    }
    SUBCASE("degree dominates weight; an isolated node ranks last") {
        CharacterGraph g;
        const NodeId a = g.add_node("A");
        const NodeId b = g.add_node("B");
        const NodeId c = g.add_node("C");
        g.add_node("D");  // isolated
        g.add_edge_weight(a, b, 10);
        g.add_edge_weight(a, c, 1);
        g.add_edge_weight(b, c, 1);

        // Brute-force degree oracle: A=2, B=2, C=2, D=0.
        const auto top = select_by_edge_count(g, 3);
        CHECK(std::set<NodeId>(top.begin(), top.end()) == std::set<NodeId>{a, b, c});
        // Weighted-degree tie-break: A=11, B=11, C=2; names order A before B.
        CHECK(top[0] == a);
        CHECK(top[1] == b);
        CHECK(top[2] == c);
    }
    SUBCASE("k out of range") {
        CharacterGraph g;
        g.add_node("A");
        CHECK_THROWS_AS(select_by_edge_count(g, 2), InvalidKError);
        CHECK_THROWS_AS(select_by_edge_count(g, 0), InvalidKError);
    }
}

TEST_CASE("weight-sum mode ranks by weighted degree instead") {
    CharacterGraph g;
    const NodeId a = g.add_node("A");
    const NodeId b = g.add_node("B");
    const NodeId c = g.add_node("C");
    const NodeId d = g.add_node("D");
    const NodeId e = g.add_node("E");
    g.add_edge_weight(a, b, 10);  // A: one heavy edge
    g.add_edge_weight(c, d, 1);
    g.add_edge_weight(c, e, 1);  // C: two light edges
    CHECK(select_by_edge_count(g, 1, DegreeMode::EdgeCount)[0] == c);
    CHECK(select_by_edge_count(g, 1, DegreeMode::WeightSum)[0] == a);
}

TEST_SUITE_END();
