#include "fcsim/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "fcsim/error.hpp"

namespace fcsim {

BinaryGraph::BinaryGraph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
    if (n < 1) throw InvalidArgument("graph needs at least one node, got " + std::to_string(n));
}

BinaryGraph BinaryGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    BinaryGraph g(n);
    for (const auto& [i, j] : edges) g.add_edge(i, j);
    return g;
}

void BinaryGraph::check_node(int i) const {
    if (i < 0 || i >= n_)
        throw InvalidArgument("node index " + std::to_string(i) + " out of range [0, " +
                              std::to_string(n_) + ")");
}

void BinaryGraph::add_edge(int i, int j) {
    check_node(i);
    check_node(j);
    if (i == j) throw InvalidArgument("self-loop at node " + std::to_string(i));
    auto& ai = adj_[static_cast<std::size_t>(i)];
    auto pos = std::lower_bound(ai.begin(), ai.end(), j);
    if (pos != ai.end() && *pos == j)
        throw InvalidArgument("duplicate edge " + std::to_string(i) + "-" + std::to_string(j));
    ai.insert(pos, j);
    auto& aj = adj_[static_cast<std::size_t>(j)];
    aj.insert(std::lower_bound(aj.begin(), aj.end(), i), i);
    ++m_;
}

bool BinaryGraph::has_edge(int i, int j) const {
    check_node(i);
    check_node(j);
    if (i == j) return false;
    const auto& ai = adj_[static_cast<std::size_t>(i)];
    return std::binary_search(ai.begin(), ai.end(), j);
}

const std::vector<int>& BinaryGraph::neighbors(int i) const {
    check_node(i);
    return adj_[static_cast<std::size_t>(i)];
}

int BinaryGraph::degree(int i) const {
    check_node(i);
    return static_cast<int>(adj_[static_cast<std::size_t>(i)].size());
}

std::vector<std::pair<int, int>> BinaryGraph::edges() const {
    std::vector<std::pair<int, int>> result;
    result.reserve(m_);
    for (int i = 0; i < n_; ++i)
        for (int j : adj_[static_cast<std::size_t>(i)])
            if (i < j) result.emplace_back(i, j);
    return result;
}

double BinaryGraph::density() const {
    if (n_ < 2) return 0.0;
    const double pairs = 0.5 * static_cast<double>(n_) * (n_ - 1);
    return static_cast<double>(m_) / pairs;
}

std::vector<int> degrees(const BinaryGraph& g) {
    std::vector<int> result(static_cast<std::size_t>(g.node_count()));
    for (int i = 0; i < g.node_count(); ++i) result[static_cast<std::size_t>(i)] = g.degree(i);
    return result;
}

namespace {

// Sum over neighbors u of |N(i) cap N(u)|; every triangle through i is
// counted twice, matching the ordered-pair sum in the c_i definition.
long long twice_triangles_through(const BinaryGraph& g, int i) {
    const auto& ni = g.neighbors(i);
    long long total = 0;
    for (int u : ni) {
        const auto& nu = g.neighbors(u);
        auto a = ni.begin();
        auto b = nu.begin();
        while (a != ni.end() && b != nu.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                ++total;
                ++a;
                ++b;
            }
        }
    }
    return total;
}

}  // namespace

double local_clustering(const BinaryGraph& g, int node) {
    const int k = g.degree(node);  // validates the index
    if (k <= 1) return 0.0;
    return static_cast<double>(twice_triangles_through(g, node)) /
           (static_cast<double>(k) * (k - 1));
}

double clustering(const BinaryGraph& g) {
    const int n = g.node_count();
    if (n < 1) throw InvalidArgument("clustering of an empty graph");
    std::vector<double> locals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) locals[static_cast<std::size_t>(i)] = local_clustering(g, i);
    // Summed in sorted order so the value is invariant under node relabeling.
    std::sort(locals.begin(), locals.end());
    double sum = 0.0;
    for (double c : locals) sum += c;
    return sum / n;
}

namespace {

void bfs_from(const BinaryGraph& g, int source, std::vector<int>& dist) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[static_cast<std::size_t>(source)] = 0;
    std::queue<int> frontier;
    frontier.push(source);
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        const int du = dist[static_cast<std::size_t>(u)];
        for (int v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] == kUnreachable) {
                dist[static_cast<std::size_t>(v)] = du + 1;
                frontier.push(v);
            }
        }
    }
}

}  // namespace

std::vector<std::vector<int>> shortest_path_lengths(const BinaryGraph& g) {
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<std::vector<int>> result(n, std::vector<int>(n, kUnreachable));
    for (int i = 0; i < g.node_count(); ++i) bfs_from(g, i, result[static_cast<std::size_t>(i)]);
    return result;
}

ComponentInfo connected_components(const BinaryGraph& g) {
    const int n = g.node_count();
    ComponentInfo info;
    info.labels.assign(static_cast<std::size_t>(n), -1);
    for (int start = 0; start < n; ++start) {
        if (info.labels[static_cast<std::size_t>(start)] != -1) continue;
        const int label = info.count++;
        std::queue<int> frontier;
        frontier.push(start);
        info.labels[static_cast<std::size_t>(start)] = label;
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (int v : g.neighbors(u)) {
                if (info.labels[static_cast<std::size_t>(v)] == -1) {
                    info.labels[static_cast<std::size_t>(v)] = label;
                    frontier.push(v);
                }
            }
        }
    }
    return info;
}

PathLengthSummary avg_path_length(const BinaryGraph& g, PathConvention convention) {
    const int n = g.node_count();
    PathLengthSummary summary;
    if (n < 2) {
        summary.finite_pair_fraction = 1.0;  // vacuous: no ordered pairs exist
        return summary;
    }

    std::vector<char> in_scope(static_cast<std::size_t>(n), 1);
    if (convention == PathConvention::LargestComponent) {
        const ComponentInfo comps = connected_components(g);
        std::vector<int> sizes(static_cast<std::size_t>(comps.count), 0);
        for (int label : comps.labels) ++sizes[static_cast<std::size_t>(label)];
        const int largest = static_cast<int>(
            std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
        for (int i = 0; i < n; ++i)
            in_scope[static_cast<std::size_t>(i)] =
                comps.labels[static_cast<std::size_t>(i)] == largest;
    }

    unsigned long long distance_sum = 0;
    unsigned long long finite_pairs = 0;
    std::vector<int> dist(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (!in_scope[static_cast<std::size_t>(i)]) continue;
        bfs_from(g, i, dist);
        for (int j = 0; j < n; ++j) {
            if (j == i || !in_scope[static_cast<std::size_t>(j)]) continue;
            const int d = dist[static_cast<std::size_t>(j)];
            if (d != kUnreachable) {
                distance_sum += static_cast<unsigned long long>(d);
                ++finite_pairs;
            }
        }
    }

    const auto total_pairs = static_cast<unsigned long long>(n) * (n - 1);
    summary.finite_pair_fraction =
        static_cast<double>(finite_pairs) / static_cast<double>(total_pairs);
    if (finite_pairs > 0)
        summary.average = static_cast<double>(distance_sum) / static_cast<double>(finite_pairs);
    return summary;
}

GraphMetrics metrics(const BinaryGraph& g, PathConvention convention) {
    GraphMetrics result;
    result.clustering = clustering(g);
    const PathLengthSummary paths = avg_path_length(g, convention);
    result.avg_path_length = paths.average;
    result.finite_pair_fraction = paths.finite_pair_fraction;
    result.density = g.density();
    result.n_components = connected_components(g).count;
    result.degree_sequence = degrees(g);
    return result;
}

}  // namespace fcsim
