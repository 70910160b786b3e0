#pragma once

// Functional connectivity: Pearson correlation matrices, binarization to a
// target edge density, and the partial-transitivity diagnostic.

#include <cstdint>
#include <vector>

#include "fcsim/graph.hpp"
#include "fcsim/model.hpp"

namespace fcsim {

// Symmetric, unit diagonal, entries in [-1, 1] up to roundoff.
struct CorrelationMatrix {
    int n = 0;
    Eigen::MatrixXd entries;
};

// Sample Pearson correlation of every row pair. Requires t_len >= 3 and
// nonzero variance per node.
CorrelationMatrix pearson_matrix(const TimeSeriesSample& ts);

// entries(i,j) / sqrt(entries(i,i) * entries(j,j)); diagonal set to 1.
CorrelationMatrix cov_to_corr(const CovarianceMatrix& sigma);

enum class ThresholdMode {
    Signed,    // rank pairs by signed correlation (default)
    Absolute,  // rank pairs by |correlation|
};

struct BinarizeResult {
    BinaryGraph graph;
    double requested_density = 0.0;
    double achieved_density = 0.0;  // m / (n(n-1)/2) after rounding
    bool empty_graph = false;       // the edge budget rounded to zero
};

// Keeps the m = round(p_fc * n(n-1)/2) highest-ranked unordered pairs,
// rounding half away from zero. Pairs tied at the cut are ordered by a
// random permutation drawn from tie_seed, so results are reproducible and
// nested across densities for a fixed tie_seed.
BinarizeResult binarize_to_density(const CorrelationMatrix& c, double p_fc,
                                   std::uint64_t tie_seed,
                                   ThresholdMode mode = ThresholdMode::Signed);

// Triple (i, j, k), i < k, with rho_ij^2 + rho_jk^2 > 1 and rho_ik <= 0.
struct TransitivityViolation {
    int i = 0, j = 0, k = 0;
};

// Empty output certifies partial transitivity. With tol > 0, third
// correlations with |rho_ik| < tol count as non-violating.
std::vector<TransitivityViolation> transitivity_violations(const CorrelationMatrix& c,
                                                           double tol = 0.0);

}  // namespace fcsim
