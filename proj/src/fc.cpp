#include "fcsim/fc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fcsim/error.hpp"
#include "fcsim/rng.hpp"

namespace fcsim {

CorrelationMatrix pearson_matrix(const TimeSeriesSample& ts) {
    if (ts.t_len < 3)
        throw InvalidArgument("Pearson correlation needs t_len >= 3, got " +
                              std::to_string(ts.t_len));

    Eigen::MatrixXd centered = ts.values.colwise() - ts.values.rowwise().mean();
    Eigen::VectorXd norms(ts.n);
    for (int i = 0; i < ts.n; ++i) {
        const double ss = centered.row(i).squaredNorm();
        if (ss <= 0.0)
            throw DegenerateSeries("node " + std::to_string(i) + " has zero variance");
        norms(i) = std::sqrt(ss);
    }

    CorrelationMatrix corr;
    corr.n = ts.n;
    corr.entries.resize(ts.n, ts.n);
    for (int i = 0; i < ts.n; ++i) {
        corr.entries(i, i) = 1.0;
        for (int j = i + 1; j < ts.n; ++j) {
            const double rho = centered.row(i).dot(centered.row(j)) / (norms(i) * norms(j));
            corr.entries(i, j) = rho;
            corr.entries(j, i) = rho;
        }
    }
    return corr;
}

CorrelationMatrix cov_to_corr(const CovarianceMatrix& sigma) {
    for (int i = 0; i < sigma.n; ++i)
        if (!(sigma.entries(i, i) > 0.0))
            throw InvalidArgument("covariance diagonal entry " + std::to_string(i) +
                                  " is not positive");

    Eigen::VectorXd inv_sd = sigma.entries.diagonal().array().sqrt().inverse();
    CorrelationMatrix corr;
    corr.n = sigma.n;
    corr.entries.resize(sigma.n, sigma.n);
    for (int i = 0; i < sigma.n; ++i) {
        corr.entries(i, i) = 1.0;
        for (int j = i + 1; j < sigma.n; ++j) {
            const double rho = sigma.entries(i, j) * inv_sd(i) * inv_sd(j);
            corr.entries(i, j) = rho;
            corr.entries(j, i) = rho;
        }
    }
    return corr;
}

BinarizeResult binarize_to_density(const CorrelationMatrix& c, double p_fc,
                                   std::uint64_t tie_seed, ThresholdMode mode) {
    if (c.n < 2) throw InvalidArgument("binarization needs at least two nodes");
    if (!(p_fc > 0.0 && p_fc <= 1.0))
        throw InvalidArgument("target density must lie in (0,1], got " + std::to_string(p_fc));

    struct RankedPair {
        double value;
        std::uint64_t tie_key;
        int i, j;
    };

    const std::size_t pair_count = static_cast<std::size_t>(c.n) * (c.n - 1) / 2;
    std::vector<RankedPair> pairs;
    pairs.reserve(pair_count);

    // Tie keys are drawn per pair in fixed (i, j) order, so for one tie_seed
    // the induced total order is shared across densities (edge sets nest).
    Xoshiro256PlusPlus tie_rng(tie_seed);
    for (int i = 0; i < c.n; ++i) {
        for (int j = i + 1; j < c.n; ++j) {
            const double raw = c.entries(i, j);
            if (!std::isfinite(raw))
                throw InvalidArgument("correlation entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is not finite");
            const double value = mode == ThresholdMode::Absolute ? std::abs(raw) : raw;
            pairs.push_back({value, tie_rng.next(), i, j});
        }
    }

    // Half away from zero; p_fc > 0 so this is a plain floor(x + 0.5).
    const auto m = static_cast<std::size_t>(
        std::floor(p_fc * static_cast<double>(pair_count) + 0.5));

    std::sort(pairs.begin(), pairs.end(), [](const RankedPair& a, const RankedPair& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.tie_key != b.tie_key) return a.tie_key < b.tie_key;
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });

    BinarizeResult result;
    result.graph = BinaryGraph(c.n);
    result.requested_density = p_fc;
    result.achieved_density = static_cast<double>(m) / static_cast<double>(pair_count);
    result.empty_graph = m == 0;
    for (std::size_t r = 0; r < m; ++r) result.graph.add_edge(pairs[r].i, pairs[r].j);
    return result;
}

std::vector<TransitivityViolation> transitivity_violations(const CorrelationMatrix& c,
                                                           double tol) {
    std::vector<TransitivityViolation> violations;
    const int n = c.n;

    // A violating triple needs rho_ik below zero and at least one of the two
    // squared correlations above 1/2, so we only scan pairs (i, k) with a
    // negative entry and pivots j drawn from the high-correlation lists.
    std::vector<std::vector<int>> strong(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && c.entries(a, b) * c.entries(a, b) > 0.5)
                strong[static_cast<std::size_t>(a)].push_back(b);

    auto violates = [&](int i, int j, int k) {
        const double rij = c.entries(i, j);
        const double rjk = c.entries(j, k);
        const double rik = c.entries(i, k);
        if (!(rij * rij + rjk * rjk > 1.0)) return false;
        if (rik > 0.0) return false;
        return !(std::abs(rik) < tol);
    };

    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            const double rik = c.entries(i, k);
            if (rik > 0.0 || std::abs(rik) < tol) continue;
            // Candidate pivots: anything strongly correlated with i or k.
            for (int j : strong[static_cast<std::size_t>(i)]) {
                if (j != k && violates(i, j, k)) violations.push_back({i, j, k});
            }
            for (int j : strong[static_cast<std::size_t>(k)]) {
                if (j == i) continue;
                const double rij = c.entries(i, j);
                if (rij * rij > 0.5) continue;  // already found via strong[i]
                if (violates(i, j, k)) violations.push_back({i, j, k});
            }
        }
    }
    return violations;
}

}  // namespace fcsim
