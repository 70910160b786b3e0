#pragma once

// Unweighted undirected graphs and their global metrics: degrees, local and
// mean clustering, BFS shortest paths, average path length under the
// finite-pair convention, connected components.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace fcsim {

class BinaryGraph {
public:
    BinaryGraph() = default;
    explicit BinaryGraph(int n);

    // Builds from an edge list; validates indices, self-loops and duplicates.
    static BinaryGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return m_; }

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;

    // Sorted neighbor list.
    const std::vector<int>& neighbors(int i) const;
    int degree(int i) const;

    // All edges as (i, j) pairs with i < j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    double density() const;

private:
    void check_node(int i) const;

    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<int>> adj_;
};

inline constexpr int kUnreachable = -1;

enum class PathConvention {
    FinitePairs,       // average over pairs joined by some path (default)
    LargestComponent,  // average within the largest component only
};

struct PathLengthSummary {
    std::optional<double> average;        // empty when no finite pair exists
    double finite_pair_fraction = 0.0;    // ordered pairs i != j with finite d / n(n-1)
};

struct ComponentInfo {
    std::vector<int> labels;  // component id per node, ids are 0..count-1
    int count = 0;
};

struct GraphMetrics {
    double clustering = 0.0;
    std::optional<double> avg_path_length;
    double density = 0.0;
    int n_components = 0;
    double finite_pair_fraction = 0.0;
    std::vector<int> degree_sequence;
};

std::vector<int> degrees(const BinaryGraph& g);

// 2 * (#triangles through i) / (k_i * (k_i - 1)); zero when k_i <= 1.
double local_clustering(const BinaryGraph& g, int node);

// Mean of the local clustering coefficients over all nodes, zeros included.
double clustering(const BinaryGraph& g);

// Hop-count matrix from BFS per source; kUnreachable marks disconnected pairs.
std::vector<std::vector<int>> shortest_path_lengths(const BinaryGraph& g);

PathLengthSummary avg_path_length(const BinaryGraph& g,
                                  PathConvention convention = PathConvention::FinitePairs);

ComponentInfo connected_components(const BinaryGraph& g);

GraphMetrics metrics(const BinaryGraph& g,
                     PathConvention convention = PathConvention::FinitePairs);

}  // namespace fcsim
