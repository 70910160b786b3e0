#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "fcsim/error.hpp"
#include "fcsim/nullmodels.hpp"
#include "fcsim/rng.hpp"
#include "oracles.hpp"

using namespace fcsim;

namespace {

BinaryGraph complete_graph(int n) {
    BinaryGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

BinaryGraph ring(int n) {
    BinaryGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    return g;
}

}  // namespace

TEST_CASE("er_matched preserves node and edge counts") {
    CHECK(er_matched(complete_graph(6), 3).edge_count() == 15);
    CHECK(er_matched(BinaryGraph(5), 3).edge_count() == 0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const BinaryGraph g = oracles::random_graph(12, 0.35, seed);
        const BinaryGraph null_graph = er_matched(g, seed * 13 + 1);
        CHECK(null_graph.edge_count() == g.edge_count());
        CHECK(null_graph.node_count() == g.node_count());
    }
}

TEST_CASE("er_matched is deterministic per seed") {
    const BinaryGraph g = oracles::random_graph(20, 0.3, 5);
    CHECK(er_matched(g, 11).edges() == er_matched(g, 11).edges());
}

TEST_CASE("er_matched handles dense graphs via complement sampling") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const BinaryGraph g = oracles::random_graph(9, 0.85, 300 + seed);
        const BinaryGraph null_graph = er_matched(g, seed);
        CHECK(null_graph.edge_count() == g.edge_count());
    }
}

TEST_CASE("er_matched is uniform over graphs with m edges") {
    // n=5, m=3: 120 possible edge sets. 60000 draws, ~500 expected each;
    // 5 standard errors is ~111.
    const BinaryGraph g = BinaryGraph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
    std::map<std::vector<std::pair<int, int>>, int> counts;
    const int draws = 60000;
    for (int seed = 0; seed < draws; ++seed)
        ++counts[er_matched(g, static_cast<std::uint64_t>(seed)).edges()];
    CHECK(counts.size() == 120);
    for (const auto& [edges, count] : counts) {
        CHECK(count > 389);
        CHECK(count < 611);
    }
}

TEST_CASE("er_gnp matches density in expectation") {
    const BinaryGraph g = oracles::random_graph(30, 0.4, 17);
    double total = 0.0;
    const int draws = 400;
    for (int seed = 0; seed < draws; ++seed)
        total += static_cast<double>(er_gnp(g, static_cast<std::uint64_t>(seed)).edge_count());
    const double pairs = 30.0 * 29 / 2;
    const double p = g.density();
    const double se = std::sqrt(pairs * p * (1 - p) / draws);
    CHECK(std::abs(total / draws - p * pairs) < 4.0 * se);
}

TEST_CASE("maslov_sneppen preserves the degree sequence exactly") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const BinaryGraph g = oracles::random_graph(15, 0.3, 900 + seed);
        if (g.edge_count() < 2) continue;
        const MaslovSneppenResult ms = maslov_sneppen(g, 10.0, seed);
        CHECK(degrees(ms.graph) == degrees(g));
        CHECK(ms.graph.edge_count() == g.edge_count());
        // from_edges would have thrown on self-loops or duplicates.
    }
}

TEST_CASE("maslov_sneppen fixed points and rewiring") {
    // Path 0-1-2: the only swap candidates share endpoints, so the graph
    // cannot change.
    const BinaryGraph path = BinaryGraph::from_edges(3, {{0, 1}, {1, 2}});
    const MaslovSneppenResult fixed = maslov_sneppen(path, 10.0, 4);
    CHECK(fixed.graph.edges() == path.edges());
    CHECK(fixed.swaps_done == 0);
    CHECK(fixed.partial);

    // C6 admits legal swaps, e.g. {0,1},{2,3} -> {0,3},{2,1}; over many
    // seeds some run must leave the ring.
    const BinaryGraph c6 = ring(6);
    int changed = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const MaslovSneppenResult ms = maslov_sneppen(c6, 1.0, seed);
        if (ms.graph.edges() != c6.edges()) ++changed;
        CHECK(degrees(ms.graph) == degrees(c6));
    }
    CHECK(changed > 0);

    CHECK_THROWS_AS(maslov_sneppen(c6, 0.0, 1), InvalidArgument);
}

TEST_CASE("maslov_sneppen flags exhausted attempt caps") {
    // The complete graph admits no swap at all: every proposed edge exists.
    const BinaryGraph k5 = complete_graph(5);
    const MaslovSneppenResult ms = maslov_sneppen(k5, 2.0, 9);
    CHECK(ms.partial);
    CHECK(ms.swaps_done == 0);
    CHECK(ms.attempts == 100 * k5.edge_count());
    CHECK(ms.graph.edges() == k5.edges());
}

TEST_CASE("small_world on identical graphs is exactly one") {
    const BinaryGraph g =
        BinaryGraph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});  // triangle + pendant
    const SmallWorldIndices idx = small_world(g, g);
    CHECK(idx.gamma == 1.0);
    CHECK(idx.lambda == 1.0);
    CHECK(idx.sigma == 1.0);
}

TEST_CASE("small_world undefined cases") {
    const BinaryGraph triangle = complete_graph(3);
    const BinaryGraph star = BinaryGraph::from_edges(3, {{0, 1}, {0, 2}});  // C = 0
    const SmallWorldIndices idx = small_world(triangle, star);
    CHECK_FALSE(idx.gamma.has_value());
    CHECK_FALSE(idx.sigma.has_value());
    CHECK(idx.lambda.has_value());

    // Edgeless null: no finite pairs, lambda undefined too.
    const SmallWorldIndices edgeless = small_world(triangle, BinaryGraph(3));
    CHECK_FALSE(edgeless.lambda.has_value());
    CHECK_FALSE(edgeless.sigma.has_value());

    CHECK_THROWS_AS(small_world(complete_graph(3), complete_graph(4)), InvalidArgument);
}

TEST_CASE("small_world reproduces the reference finite-sample indices") {
    // C_F = 0.2355, C_S = 0.1081, L_F = 2.308, L_S = 2.157 give
    // gamma = 2.18, lambda = 1.07, sigma = 2.04 at two decimals.
    GraphMetrics fc;
    fc.clustering = 0.2355;
    fc.avg_path_length = 2.308;
    GraphMetrics sc;
    sc.clustering = 0.1081;
    sc.avg_path_length = 2.157;
    const SmallWorldIndices idx = small_world(fc, sc);
    REQUIRE(idx.sigma.has_value());
    CHECK(std::round(*idx.gamma * 100) / 100 == doctest::Approx(2.18));
    CHECK(std::round(*idx.lambda * 100) / 100 == doctest::Approx(1.07));
    CHECK(std::round(*idx.sigma * 100) / 100 == doctest::Approx(2.04));
}

TEST_CASE("sigma equals gamma over lambda whenever defined") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const BinaryGraph g = oracles::random_graph(14, 0.3, seed);
        const BinaryGraph null_graph = er_matched(g, seed + 1);
        const SmallWorldIndices idx = small_world(g, null_graph);
        if (idx.sigma) {
            REQUIRE(idx.gamma);
            REQUIRE(idx.lambda);
            CHECK(*idx.sigma == *idx.gamma / *idx.lambda);
        }
    }
}

TEST_CASE("null model names round trip") {
    CHECK(null_model_from_string("er") == NullModel::Er);
    CHECK(null_model_from_string("maslov_sneppen") == NullModel::MaslovSneppen);
    CHECK(to_string(NullModel::MaslovSneppen) == "maslov_sneppen");
    CHECK_THROWS_AS(null_model_from_string("lattice"), InvalidArgument);
}
