// Acceptance suite: one pass/fail line per criterion, all tolerances pinned.
// Runs every criterion even after a failure and exits nonzero if any failed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fcsim/fc.hpp"
#include "fcsim/graph.hpp"
#include "fcsim/io.hpp"
#include "fcsim/model.hpp"
#include "fcsim/nullmodels.hpp"
#include "fcsim/pipeline.hpp"
#include "fcsim/rng.hpp"
#include "fcsim/sweep.hpp"

using namespace fcsim;

namespace {

int g_failures = 0;

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(const std::string& criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion << ": " << detail << std::endl;
    if (!ok) ++g_failures;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t half = values.size() / 2;
    return values.size() % 2 == 1 ? values[half] : 0.5 * (values[half - 1] + values[half]);
}

// --- criterion 1: closed-form vs simulation --------------------------------
void criterion_1() {
    Timer timer;
    const int n = 50;
    const int t_len = 1000000;
    const StructuralGraph sc = generate_er(n, 0.1, 8801);
    const CouplingMatrix a = build_coupling(sc, 0.5, 1.0);
    const CovarianceMatrix exact = asymptotic_covariance(a);

    // Stream the series through the stepper and accumulate moments; this is
    // the same process simulate_ar1 materializes, without the n x 10^6 buffer.
    Ar1Stepper stepper(a, 77001);
    for (int t = 0; t < default_burn_in(0.5); ++t) stepper.step();
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < t_len; ++t) {
        const Eigen::VectorXd& x = stepper.step();
        sum += x;
        outer.selfadjointView<Eigen::Lower>().rankUpdate(x);
    }
    const Eigen::VectorXd mean = sum / static_cast<double>(t_len);
    Eigen::MatrixXd sample = Eigen::MatrixXd(outer.selfadjointView<Eigen::Lower>());
    sample -= static_cast<double>(t_len) * mean * mean.transpose();
    sample /= static_cast<double>(t_len - 1);

    const double max_abs = (sample - exact.entries).cwiseAbs().maxCoeff();
    const double elapsed = timer.seconds();
    report("criterion 1 (simulation vs closed form)",
           max_abs < 0.02 && elapsed < 120.0,
           "max |sample - exact| = " + format_double(max_abs) + " (tol 0.02), runtime = " +
               format_double(elapsed) + " s (limit 120)");
}

// --- criterion 2: Neumann oracle --------------------------------------------
void criterion_2() {
    Timer timer;
    Xoshiro256PlusPlus rng(5502);
    double worst = 0.0;
    for (int instance = 0; instance < 50; ++instance) {
        const int n = 10 + static_cast<int>(rng.below(91));          // <= 100
        const double p = 0.05 + 0.75 * rng.uniform01();
        const double s = 0.2 + 0.7 * rng.uniform01();                // <= 0.9
        double alpha = (rng.next() & 1u) ? 1.0 : 0.0;
        StructuralGraph sc = generate_er(n, p, rng.next());
        if (sc.edge_count() == 0) alpha = 1.0;
        const CouplingMatrix a = build_coupling(sc, s, alpha);

        const int k = static_cast<int>(std::ceil(std::log(1e-12) / (2.0 * std::log(s))));
        const CovarianceMatrix solve = asymptotic_covariance(a);
        const CovarianceMatrix series = neumann_partial_sum(a, k);
        worst = std::max(worst, (solve.entries - series.entries).cwiseAbs().maxCoeff());
    }
    const double elapsed = timer.seconds();
    report("criterion 2 (Neumann series oracle)", worst < 1e-9,
           "worst max-abs difference over 50 instances = " + format_double(worst) +
               " (tol 1e-9), runtime = " + format_double(elapsed) + " s");
}

// --- criterion 3: graph metric oracles --------------------------------------
namespace oracle {

double clustering_triple_loop(const BinaryGraph& g) {
    const int n = g.node_count();
    std::vector<double> locals;
    for (int i = 0; i < n; ++i) {
        long long paths = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i || !g.has_edge(i, j)) continue;
            for (int l = 0; l < n; ++l) {
                if (l == i || l == j) continue;
                if (g.has_edge(i, l) && g.has_edge(j, l)) ++paths;
            }
        }
        const long long k = g.degree(i);
        locals.push_back(k >= 2 ? static_cast<double>(paths) / static_cast<double>(k * (k - 1))
                                : 0.0);
    }
    std::sort(locals.begin(), locals.end());
    double sum = 0.0;
    for (double c : locals) sum += c;
    return sum / n;
}

std::vector<std::vector<int>> floyd_warshall(const BinaryGraph& g) {
    const int n = g.node_count();
    constexpr int kInf = 1 << 28;
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), kInf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& [i, j] : g.edges()) d[i][j] = d[j][i] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d[i][j] >= kInf) d[i][j] = kUnreachable;
    return d;
}

}  // namespace oracle

void criterion_3() {
    Timer timer;
    Xoshiro256PlusPlus rng(31003);
    int clustering_mismatches = 0;
    int distance_mismatches = 0;
    const int graphs = 250;
    for (int trial = 0; trial < graphs; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(29));  // <= 30
        const double p = rng.uniform01();
        BinaryGraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform01() < p) g.add_edge(i, j);
        if (clustering(g) != oracle::clustering_triple_loop(g)) ++clustering_mismatches;
        if (shortest_path_lengths(g) != oracle::floyd_warshall(g)) ++distance_mismatches;
    }
    const double elapsed = timer.seconds();
    report("criterion 3 (graph metric oracles)",
           clustering_mismatches == 0 && distance_mismatches == 0,
           std::to_string(graphs) + " graphs; clustering mismatches = " +
               std::to_string(clustering_mismatches) + ", distance mismatches = " +
               std::to_string(distance_mismatches) + ", runtime = " + format_double(elapsed) +
               " s");
}

// --- criterion 4: finite-sample distributional reproduction -----------------
std::vector<DemoResult> g_demo_results;

void criterion_4() {
    Timer timer;
    DemoParams params;  // n=100, p_sc=0.1, s=0.1, alpha=2, t_len=300, p_fc=p_sc
    std::vector<double> sigmas, lambdas;
    g_demo_results.clear();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        DemoResult demo = run_demo(params, seed);
        if (demo.indices.sigma) sigmas.push_back(*demo.indices.sigma);
        if (demo.indices.lambda) lambdas.push_back(*demo.indices.lambda);
        g_demo_results.push_back(std::move(demo));
    }
    const double elapsed = timer.seconds();
    const bool counts_ok = sigmas.size() == 20 && lambdas.size() == 20;
    const double sigma_median = counts_ok ? median_of(sigmas) : 0.0;
    const double lambda_median = counts_ok ? median_of(lambdas) : 0.0;
    const bool ok = counts_ok && sigma_median >= 1.3 && sigma_median <= 3.5 &&
                    lambda_median >= 0.9 && lambda_median <= 1.3 && elapsed < 60.0;
    report("criterion 4 (finite-sample reproduction)", ok,
           "median sigma = " + format_double(sigma_median) + " (band [1.3, 3.5]), median lambda = " +
               format_double(lambda_median) + " (band [0.9, 1.3]), defined = " +
               std::to_string(sigmas.size()) + "/20, runtime = " + format_double(elapsed) +
               " s (limit 60)");
}

// --- criteria 5-9 share the reduced sweep ------------------------------------
constexpr std::uint64_t kSweepSeed = 987654321;
const std::vector<int> kGridIndices = {2, 5, 8, 11, 14, 17, 20, 23};

SweepConfig sweep_config() {
    SweepConfig config;
    config.n_values = {200};
    config.s_values = {0.75};
    config.alpha_values = {1.0};
    const std::vector<double> grid = default_density_grid();
    for (int idx : kGridIndices) {
        config.p_sc_values.push_back(grid[static_cast<std::size_t>(idx)]);
        config.p_fc_values.push_back(grid[static_cast<std::size_t>(idx)]);
    }
    config.realizations = 20;
    config.null_model = NullModel::Er;
    config.master_seed = kSweepSeed;
    return config;
}

std::vector<CellResult> g_sweep_results;
double g_sweep_seconds = 0.0;

// Cells are laid out row-major: index = row * 8 + col.
const CellResult& sweep_cell(std::size_t row, std::size_t col) {
    return g_sweep_results[row * kGridIndices.size() + col];
}

void criterion_5() {
    Timer timer;
    g_sweep_results = run_sweep(sweep_config(), 4);
    g_sweep_seconds = timer.seconds();
    const std::size_t k = kGridIndices.size();

    // (a) median sigma > 1 in > 90% of cells with >= 10 defined realizations.
    int eligible = 0, above_one = 0;
    for (const CellResult& cell : g_sweep_results) {
        if (cell.sigma.count >= 10) {
            ++eligible;
            if (cell.sigma.median && *cell.sigma.median > 1.0) ++above_one;
        }
    }
    const double fraction = eligible > 0 ? static_cast<double>(above_one) / eligible : 0.0;
    const bool a_ok = eligible > 0 && fraction > 0.9;

    // (b) along each row, sigma larger at the smallest p_fc than the largest.
    int b_rows_ok = 0;
    std::string b_detail;
    for (std::size_t row = 0; row < k; ++row) {
        const auto& sparse = sweep_cell(row, k - 1).sigma.median;  // smallest p_fc
        const auto& dense = sweep_cell(row, 0).sigma.median;       // largest p_fc
        const bool row_ok = sparse && dense && *sparse > *dense;
        if (row_ok) ++b_rows_ok;
        else b_detail += " row" + std::to_string(row);
    }
    const bool b_ok = b_rows_ok == static_cast<int>(k);

    // (c) the p_fc = p_sc cell sits in the bottom 25% of its row's medians.
    int c_rows_ok = 0;
    std::string c_detail;
    for (std::size_t row = 0; row < k; ++row) {
        std::vector<double> medians;
        for (std::size_t col = 0; col < k; ++col)
            if (sweep_cell(row, col).sigma.median)
                medians.push_back(*sweep_cell(row, col).sigma.median);
        const auto& diag = sweep_cell(row, row).sigma.median;
        if (!diag || medians.empty()) {
            c_detail += " row" + std::to_string(row) + "(undefined)";
            continue;
        }
        std::sort(medians.begin(), medians.end());
        const std::size_t bottom =
            static_cast<std::size_t>(std::ceil(0.25 * static_cast<double>(medians.size())));
        if (*diag <= medians[bottom - 1] + 1e-15) ++c_rows_ok;
        else c_detail += " row" + std::to_string(row);
    }
    const bool c_ok = c_rows_ok == static_cast<int>(k);

    const bool time_ok = g_sweep_seconds < 1800.0;
    report("criterion 5 (reduced asymptotic sweep)", a_ok && b_ok && c_ok && time_ok,
           "(a) median sigma > 1 in " + std::to_string(above_one) + "/" +
               std::to_string(eligible) + " eligible cells (need > 90%); (b) " +
               std::to_string(b_rows_ok) + "/8 rows monotone" +
               (b_detail.empty() ? "" : " failing:" + b_detail) + "; (c) " +
               std::to_string(c_rows_ok) + "/8 diagonals in bottom quartile" +
               (c_detail.empty() ? "" : " failing:" + c_detail) + "; runtime = " +
               format_double(g_sweep_seconds) + " s (limit 1800)");
}

void criterion_6() {
    int eligible = 0, significant = 0;
    for (std::size_t row = 0; row < kGridIndices.size(); ++row) {
        for (std::size_t col = 0; col < kGridIndices.size(); ++col) {
            if (row == col) continue;
            const CellResult& cell = sweep_cell(row, col);
            if (cell.sigma.count == 20) {
                ++eligible;
                if (cell.sign_test.p && *cell.sign_test.p < 1e-4) ++significant;
            }
        }
    }
    const double fraction = eligible > 0 ? static_cast<double>(significant) / eligible : 0.0;
    report("criterion 6 (sign-test significance)", eligible > 0 && fraction >= 0.8,
           "p < 1e-4 in " + std::to_string(significant) + "/" + std::to_string(eligible) +
               " fully-defined off-diagonal cells (need >= 80%)");
}

void criterion_7() {
    Timer timer;
    // Representative cells: fully-defined off-diagonal cells in grid order,
    // strided to spread 10 picks across the grid.
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t row = 0; row < kGridIndices.size(); ++row)
        for (std::size_t col = 0; col < kGridIndices.size(); ++col)
            if (row != col && sweep_cell(row, col).sigma.count == 20)
                candidates.emplace_back(row, col);
    if (candidates.size() < 10) {
        report("criterion 7 (Maslov-Sneppen comparison)", false,
               "only " + std::to_string(candidates.size()) + " fully-defined cells available");
        return;
    }
    const std::size_t stride = candidates.size() / 10;
    SweepConfig ms_config = sweep_config();
    ms_config.null_model = NullModel::MaslovSneppen;

    int both_ok = 0;
    for (std::size_t pick = 0; pick < 10; ++pick) {
        const auto [row, col] = candidates[pick * stride];
        const CellResult& er_cell = sweep_cell(row, col);
        std::vector<double> ms_sigmas;
        for (int r = 0; r < ms_config.realizations; ++r) {
            const RealizationRecord rec = run_cell(ms_config, er_cell.params, r);
            if (rec.sigma) ms_sigmas.push_back(*rec.sigma);
        }
        if (ms_sigmas.empty() || !er_cell.sigma.median) continue;
        const double ms_median = median_of(ms_sigmas);
        if (ms_median > 1.0 && ms_median < *er_cell.sigma.median) ++both_ok;
    }
    report("criterion 7 (Maslov-Sneppen comparison)", both_ok >= 8,
           "median sigma_MS > 1 and < median sigma_ER in " + std::to_string(both_ok) +
               "/10 representative cells (need >= 8), runtime = " + format_double(timer.seconds()) +
               " s");
}

void criterion_8() {
    Timer timer;
    std::atomic<long long> violation_count{0};
    std::atomic<int> matrix_count{0};

    // Finite-sample correlation matrices from criterion 4.
    for (const DemoResult& demo : g_demo_results) {
        violation_count += static_cast<long long>(transitivity_violations(demo.corr, 1e-10).size());
        ++matrix_count;
    }

    // Every asymptotic correlation matrix behind criterion 5, regenerated
    // from the recorded seeds.
    const SweepConfig config = sweep_config();
    std::vector<CellParams> cells;
    for (const CellResult& cell : g_sweep_results) cells.push_back(cell.params);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= cells.size()) return;
            for (int r = 0; r < config.realizations; ++r) {
                const auto corr = cell_correlation_matrix(config, cells[index], r);
                if (!corr) continue;
                violation_count +=
                    static_cast<long long>(transitivity_violations(*corr, 1e-10).size());
                ++matrix_count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    report("criterion 8 (transitivity certification)", violation_count.load() == 0,
           std::to_string(violation_count.load()) + " violations across " +
               std::to_string(matrix_count.load()) + " correlation matrices (tol 1e-10), runtime = " +
               format_double(timer.seconds()) + " s");
}

void criterion_9() {
    Timer timer;
    const std::string threaded = results_table_to_string(g_sweep_results);
    const std::string serial = results_table_to_string(run_sweep(sweep_config(), 1));
    report("criterion 9 (determinism across jobs)", serial == threaded,
           std::string(serial == threaded ? "byte-identical" : "outputs differ") +
               " between jobs=4 and jobs=1 runs, runtime = " + format_double(timer.seconds()) +
               " s");
}

}  // namespace

int main() {
    std::cout << "fcsim acceptance suite" << std::endl;
    Timer total;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    try {
        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
    } catch (const std::exception& err) {
        report("criteria 5-9", false, std::string("sweep pipeline threw: ") + err.what());
    }
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(g_failures) + " CRITERIA FAILED")
              << " (total runtime " << format_double(total.seconds()) << " s)" << std::endl;
    return g_failures == 0 ? 0 : 1;
}
