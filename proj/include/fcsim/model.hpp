#pragma once

// The coupled AR(1) model: structural connectivity generation, normalized
// coupling matrix, process simulation, and the exact stationary covariance.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "fcsim/graph.hpp"
#include "fcsim/rng.hpp"

namespace fcsim {

// Symmetric binary coupling topology, optionally with positive link weights.
struct StructuralGraph {
    int n = 0;
    Eigen::MatrixXd adjacency;               // entries in {0,1}, symmetric, zero diagonal
    std::optional<Eigen::MatrixXd> weights;  // positive exactly where adjacency is 1

    const Eigen::MatrixXd& coupling_base() const { return weights ? *weights : adjacency; }
    std::size_t edge_count() const;
};

BinaryGraph to_binary_graph(const StructuralGraph& sc);

// Erdos-Renyi G(n, p): each unordered pair carries an edge independently
// with probability p. Deterministic given the seed.
StructuralGraph generate_er(int n, double p, std::uint64_t seed);

enum class WeightDist {
    Uniform01,   // Uniform(0,1), open interval
    HalfNormal,  // |N(0,1)|
};

WeightDist weight_dist_from_string(const std::string& name);
std::string to_string(WeightDist dist);

// ER topology with i.i.d. positive weights on the existing edges.
StructuralGraph generate_weighted_er(int n, double p, WeightDist dist, std::uint64_t seed);

// A = s * (SC + alpha*I) / lambda_max, spectral radius exactly s.
struct CouplingMatrix {
    int n = 0;
    Eigen::MatrixXd entries;
    double s = 0.0;
    double alpha = 0.0;
    double lambda_max = 0.0;  // normalization eigenvalue of SC + alpha*I
};

// Largest-magnitude eigenvalue of a symmetric matrix (dense eigensolve).
double spectral_radius(const Eigen::MatrixXd& m, double tol = 1e-12);

CouplingMatrix build_coupling(const StructuralGraph& sc, double s, double alpha);

struct TimeSeriesSample {
    int n = 0;
    int t_len = 0;
    Eigen::MatrixXd values;  // n x t_len, one row per node
    std::uint64_t seed = 0;
    int burn_in = 0;
};

// max(1000, ceil(20 / (1 - s))): long enough that the X0 = 0 transient is
// negligible at geometric mixing rate s.
int default_burn_in(double s);

// Streams X_t = A X_{t-1} + e_t, e_t ~ N(0,1) i.i.d. per node, from X_0 = 0.
// One normal variate is drawn per node per step, nodes in index order.
class Ar1Stepper {
public:
    Ar1Stepper(const CouplingMatrix& a, std::uint64_t seed);

    const Eigen::VectorXd& step();
    const Eigen::VectorXd& state() const noexcept { return state_; }

private:
    Eigen::MatrixXd coupling_;
    Eigen::VectorXd state_;
    Eigen::VectorXd scratch_;
    NormalSampler noise_;
};

// Runs burn_in + t_len steps and keeps the last t_len columns.
TimeSeriesSample simulate_ar1(const CouplingMatrix& a, int t_len, int burn_in,
                              std::uint64_t seed);

struct CovarianceMatrix {
    int n = 0;
    Eigen::MatrixXd entries;
};

// Exact stationary covariance: solves (I - A^2) Sigma = I.
CovarianceMatrix asymptotic_covariance(const CouplingMatrix& a);

// Partial sum I + A^2 + A^4 + ... + A^(2(k-1)); the series oracle for
// asymptotic_covariance.
CovarianceMatrix neumann_partial_sum(const CouplingMatrix& a, int k);

// (t_len - 1)-normalized sample covariance of the rows.
CovarianceMatrix sample_covariance(const TimeSeriesSample& ts);

}  // namespace fcsim
