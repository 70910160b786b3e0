#include "fcsim/model.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fcsim/error.hpp"

namespace fcsim {

std::size_t StructuralGraph::edge_count() const {
    std::size_t count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adjacency(i, j) != 0.0) ++count;
    return count;
}

BinaryGraph to_binary_graph(const StructuralGraph& sc) {
    BinaryGraph g(sc.n);
    for (int i = 0; i < sc.n; ++i)
        for (int j = i + 1; j < sc.n; ++j)
            if (sc.adjacency(i, j) != 0.0) g.add_edge(i, j);
    return g;
}

namespace {

void check_er_args(int n, double p) {
    if (n < 2) throw InvalidArgument("node count must be >= 2, got " + std::to_string(n));
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidArgument("edge probability must lie in [0,1], got " + std::to_string(p));
}

}  // namespace

StructuralGraph generate_er(int n, double p, std::uint64_t seed) {
    check_er_args(n, p);
    StructuralGraph sc;
    sc.n = n;
    sc.adjacency = Eigen::MatrixXd::Zero(n, n);
    Xoshiro256PlusPlus rng(seed);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform01() < p) {
                sc.adjacency(i, j) = 1.0;
                sc.adjacency(j, i) = 1.0;
            }
        }
    }
    return sc;
}

WeightDist weight_dist_from_string(const std::string& name) {
    if (name == "uniform01") return WeightDist::Uniform01;
    if (name == "halfnormal") return WeightDist::HalfNormal;
    throw InvalidArgument("unknown weight distribution '" + name +
                          "' (expected uniform01 or halfnormal)");
}

std::string to_string(WeightDist dist) {
    return dist == WeightDist::Uniform01 ? "uniform01" : "halfnormal";
}

StructuralGraph generate_weighted_er(int n, double p, WeightDist dist, std::uint64_t seed) {
    check_er_args(n, p);
    StructuralGraph sc;
    sc.n = n;
    sc.adjacency = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);

    // Topology and weights come from two sub-streams of the one seed, so the
    // edge pattern matches generate_er with the topology stream's seed.
    Xoshiro256PlusPlus topology(SeedMixer(seed).absorb(1).value());
    NormalSampler weight_noise(SeedMixer(seed).absorb(2).value());

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (topology.uniform01() >= p) continue;
            double w = 0.0;
            do {
                w = dist == WeightDist::Uniform01
                        ? weight_noise.engine().uniform_open01()
                        : std::abs(weight_noise.next());
            } while (w == 0.0);  // keep weights strictly positive
            sc.adjacency(i, j) = sc.adjacency(j, i) = 1.0;
            weights(i, j) = weights(j, i) = w;
        }
    }
    sc.weights = std::move(weights);
    return sc;
}

double spectral_radius(const Eigen::MatrixXd& m, double tol) {
    if (tol <= 0.0) throw InvalidArgument("spectral radius tolerance must be positive");
    if (m.rows() != m.cols()) throw InvalidArgument("spectral radius needs a square matrix");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-12 * scale)
        throw InvalidArgument("spectral radius needs a symmetric matrix (max asymmetry " +
                              std::to_string(asymmetry) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("symmetric eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

CouplingMatrix build_coupling(const StructuralGraph& sc, double s, double alpha) {
    if (!(s > 0.0 && s < 1.0))
        throw InvalidArgument("coupling strength s must lie in (0,1), got " + std::to_string(s));
    if (!(alpha >= 0.0))
        throw InvalidArgument("alpha must be non-negative, got " + std::to_string(alpha));

    Eigen::MatrixXd base = sc.coupling_base();
    base.diagonal().array() += alpha;
    const double lambda_max = spectral_radius(base);
    if (lambda_max <= 0.0)
        throw DegenerateNormalization(
            "SC + alpha*I has zero spectral radius; the coupling matrix has no scale");

    CouplingMatrix a;
    a.n = sc.n;
    a.entries = (s / lambda_max) * base;
    a.s = s;
    a.alpha = alpha;
    a.lambda_max = lambda_max;
    return a;
}

int default_burn_in(double s) {
    const double mixing = std::ceil(20.0 / (1.0 - s));
    return std::max(1000, static_cast<int>(mixing));
}

Ar1Stepper::Ar1Stepper(const CouplingMatrix& a, std::uint64_t seed)
    : coupling_(a.entries),
      state_(Eigen::VectorXd::Zero(a.n)),
      scratch_(a.n),
      noise_(seed) {
    if (a.n < 1 || a.entries.rows() != a.n || a.entries.cols() != a.n)
        throw InvalidArgument("coupling matrix has inconsistent dimensions");
}

const Eigen::VectorXd& Ar1Stepper::step() {
    scratch_.noalias() = coupling_ * state_;
    for (Eigen::Index i = 0; i < scratch_.size(); ++i) scratch_(i) += noise_.next();
    state_.swap(scratch_);
    return state_;
}

TimeSeriesSample simulate_ar1(const CouplingMatrix& a, int t_len, int burn_in,
                              std::uint64_t seed) {
    if (t_len < 1) throw InvalidArgument("t_len must be positive, got " + std::to_string(t_len));
    if (burn_in < 0)
        throw InvalidArgument("burn_in must be non-negative, got " + std::to_string(burn_in));

    Ar1Stepper stepper(a, seed);
    for (int t = 0; t < burn_in; ++t) stepper.step();

    TimeSeriesSample ts;
    ts.n = a.n;
    ts.t_len = t_len;
    ts.values.resize(a.n, t_len);
    ts.seed = seed;
    ts.burn_in = burn_in;
    for (int t = 0; t < t_len; ++t) ts.values.col(t) = stepper.step();
    return ts;
}

CovarianceMatrix asymptotic_covariance(const CouplingMatrix& a) {
    if (a.entries.rows() != a.n || a.entries.cols() != a.n)
        throw InvalidArgument("coupling matrix has inconsistent dimensions");

    Eigen::MatrixXd a_squared = a.entries * a.entries;
    a_squared = 0.5 * (a_squared + a_squared.transpose()).eval();
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(a.n, a.n) - a_squared;

    // I - A^2 is SPD whenever the spectral radius of A is below 1.
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(system, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues()(0);
        const double hi = es.eigenvalues()(a.n - 1);
        const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        throw NumericError("I - A^2 is numerically singular (condition estimate " +
                           std::to_string(cond) + "); is the spectral radius of A below 1?");
    }

    CovarianceMatrix sigma;
    sigma.n = a.n;
    sigma.entries = llt.solve(Eigen::MatrixXd::Identity(a.n, a.n));
    sigma.entries = 0.5 * (sigma.entries + sigma.entries.transpose()).eval();
    return sigma;
}

CovarianceMatrix neumann_partial_sum(const CouplingMatrix& a, int k) {
    if (k < 1) throw InvalidArgument("term count must be >= 1, got " + std::to_string(k));
    const Eigen::MatrixXd a_squared = a.entries * a.entries;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(a.n, a.n);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(a.n, a.n);
    for (int term = 1; term < k; ++term) {
        power = (power * a_squared).eval();
        sum += power;
    }
    CovarianceMatrix sigma;
    sigma.n = a.n;
    sigma.entries = std::move(sum);
    return sigma;
}

CovarianceMatrix sample_covariance(const TimeSeriesSample& ts) {
    if (ts.t_len < 2) throw InvalidArgument("sample covariance needs t_len >= 2");
    Eigen::MatrixXd centered = ts.values.colwise() - ts.values.rowwise().mean();
    CovarianceMatrix sigma;
    sigma.n = ts.n;
    sigma.entries = (centered * centered.transpose()) / static_cast<double>(ts.t_len - 1);
    sigma.entries = 0.5 * (sigma.entries + sigma.entries.transpose()).eval();
    return sigma;
}

}  // namespace fcsim
