#pragma once

// Null graphs matched to an observed graph, and the relative small-world
// indices gamma = C/C_null, lambda = L/L_null, sigma = gamma/lambda.

#include <cstdint>
#include <optional>
#include <string>

#include "fcsim/graph.hpp"

namespace fcsim {

enum class NullModel { Er, MaslovSneppen };

NullModel null_model_from_string(const std::string& name);
std::string to_string(NullModel model);

// Uniform random graph with the same node and edge count as g.
BinaryGraph er_matched(const BinaryGraph& g, std::uint64_t seed);

// G(n, p) variant with p equal to the observed density (the edge count is
// then binomial rather than fixed).
BinaryGraph er_gnp(const BinaryGraph& g, std::uint64_t seed);

struct MaslovSneppenResult {
    BinaryGraph graph;
    std::size_t swaps_done = 0;
    std::size_t swaps_requested = 0;
    std::size_t attempts = 0;
    bool partial = false;  // attempt cap hit before reaching swaps_requested
};

// Degree-preserving randomization by double-edge swaps: pick two edges with
// four distinct endpoints and a random pairing orientation, rewire unless a
// proposed edge already exists. Runs until ceil(swap_factor * |E|) swaps
// succeed or 100 * |E| proposals have been attempted.
MaslovSneppenResult maslov_sneppen(const BinaryGraph& g, double swap_factor,
                                   std::uint64_t seed);

struct SmallWorldIndices {
    std::optional<double> gamma;   // undefined when C(null) = 0
    std::optional<double> lambda;  // undefined when either L is undefined
    std::optional<double> sigma;   // gamma / lambda when both are defined
    NullModel null_model = NullModel::Er;
    std::uint64_t null_seed = 0;
};

SmallWorldIndices small_world(const GraphMetrics& g, const GraphMetrics& null_metrics);
SmallWorldIndices small_world(const BinaryGraph& g, const BinaryGraph& null_graph);

}  // namespace fcsim
