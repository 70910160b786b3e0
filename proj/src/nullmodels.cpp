#include "fcsim/nullmodels.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "fcsim/error.hpp"
#include "fcsim/rng.hpp"

namespace fcsim {

NullModel null_model_from_string(const std::string& name) {
    if (name == "er") return NullModel::Er;
    if (name == "maslov_sneppen" || name == "ms") return NullModel::MaslovSneppen;
    throw InvalidArgument("unknown null model '" + name + "' (expected er or maslov_sneppen)");
}

std::string to_string(NullModel model) {
    return model == NullModel::Er ? "er" : "maslov_sneppen";
}

namespace {

// Unranks an unordered-pair index in [0, n(n-1)/2) to (i, j), i < j.
std::pair<int, int> unrank_pair(const std::vector<std::size_t>& row_offsets, int n,
                                std::size_t index) {
    const auto row = static_cast<int>(
        std::upper_bound(row_offsets.begin(), row_offsets.end(), index) -
        row_offsets.begin() - 1);
    const int col = row + 1 + static_cast<int>(index - row_offsets[static_cast<std::size_t>(row)]);
    (void)n;
    return {row, col};
}

std::vector<std::size_t> pair_row_offsets(int n) {
    std::vector<std::size_t> offsets(static_cast<std::size_t>(n));
    std::size_t acc = 0;
    for (int i = 0; i < n; ++i) {
        offsets[static_cast<std::size_t>(i)] = acc;
        acc += static_cast<std::size_t>(n - 1 - i);
    }
    return offsets;
}

}  // namespace

BinaryGraph er_matched(const BinaryGraph& g, std::uint64_t seed) {
    const int n = g.node_count();
    const std::size_t total_pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t m = g.edge_count();

    // Draw the smaller of the edge set and its complement, then invert.
    const bool draw_complement = m > total_pairs / 2;
    const std::size_t draws = draw_complement ? total_pairs - m : m;

    Xoshiro256PlusPlus rng(seed);
    std::vector<char> chosen(total_pairs, 0);
    std::size_t picked = 0;
    while (picked < draws) {
        const std::size_t idx = rng.below(total_pairs);
        if (!chosen[idx]) {
            chosen[idx] = 1;
            ++picked;
        }
    }

    const auto offsets = pair_row_offsets(n);
    BinaryGraph result(n);
    for (std::size_t idx = 0; idx < total_pairs; ++idx) {
        if (static_cast<bool>(chosen[idx]) == draw_complement) continue;
        const auto [i, j] = unrank_pair(offsets, n, idx);
        result.add_edge(i, j);
    }
    return result;
}

BinaryGraph er_gnp(const BinaryGraph& g, std::uint64_t seed) {
    const int n = g.node_count();
    const double p = g.density();
    Xoshiro256PlusPlus rng(seed);
    BinaryGraph result(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) result.add_edge(i, j);
    return result;
}

MaslovSneppenResult maslov_sneppen(const BinaryGraph& g, double swap_factor,
                                   std::uint64_t seed) {
    if (!(swap_factor > 0.0))
        throw InvalidArgument("swap factor must be positive, got " + std::to_string(swap_factor));

    const int n = g.node_count();
    std::vector<std::pair<int, int>> edges = g.edges();
    const std::size_t m = edges.size();

    MaslovSneppenResult result;
    result.swaps_requested = static_cast<std::size_t>(std::ceil(swap_factor * static_cast<double>(m)));

    // Adjacency bitmap for O(1) existence checks during rewiring.
    std::vector<char> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (const auto& [i, j] : edges) {
        adj[static_cast<std::size_t>(i) * n + j] = 1;
        adj[static_cast<std::size_t>(j) * n + i] = 1;
    }
    auto linked = [&](int i, int j) { return adj[static_cast<std::size_t>(i) * n + j] != 0; };
    auto set_link = [&](int i, int j, char v) {
        adj[static_cast<std::size_t>(i) * n + j] = v;
        adj[static_cast<std::size_t>(j) * n + i] = v;
    };

    const std::size_t attempt_cap = 100 * m;
    Xoshiro256PlusPlus rng(seed);

    while (result.swaps_done < result.swaps_requested && result.attempts < attempt_cap) {
        ++result.attempts;
        if (m < 2) break;
        const std::size_t e1 = rng.below(m);
        const std::size_t e2 = rng.below(m);
        auto [a, b] = edges[e1];
        auto [c, d] = edges[e2];
        if (rng.next() & 1u) std::swap(c, d);  // both pairings are proposable
        // Rewire {a,b},{c,d} -> {a,d},{c,b}; needs four distinct endpoints
        // and both proposed edges absent.
        if (a == c || a == d || b == c || b == d) continue;
        if (linked(a, d) || linked(c, b)) continue;
        set_link(a, b, 0);
        set_link(c, d, 0);
        set_link(a, d, 1);
        set_link(c, b, 1);
        edges[e1] = {std::min(a, d), std::max(a, d)};
        edges[e2] = {std::min(c, b), std::max(c, b)};
        ++result.swaps_done;
    }

    result.partial = result.swaps_done < result.swaps_requested;
    result.graph = BinaryGraph::from_edges(n, edges);
    return result;
}

SmallWorldIndices small_world(const GraphMetrics& g, const GraphMetrics& null_metrics) {
    SmallWorldIndices indices;
    if (null_metrics.clustering > 0.0) indices.gamma = g.clustering / null_metrics.clustering;
    if (g.avg_path_length && null_metrics.avg_path_length)
        indices.lambda = *g.avg_path_length / *null_metrics.avg_path_length;
    if (indices.gamma && indices.lambda && *indices.lambda > 0.0)
        indices.sigma = *indices.gamma / *indices.lambda;
    return indices;
}

SmallWorldIndices small_world(const BinaryGraph& g, const BinaryGraph& null_graph) {
    if (g.node_count() != null_graph.node_count())
        throw InvalidArgument("small_world needs graphs with matching node counts (" +
                              std::to_string(g.node_count()) + " vs " +
                              std::to_string(null_graph.node_count()) + ")");
    return small_world(metrics(g), metrics(null_graph));
}

}  // namespace fcsim
