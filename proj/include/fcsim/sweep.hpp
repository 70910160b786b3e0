#pragma once

// The parameter study: density grids, the per-cell pipeline
// (SC -> coupling -> correlation -> binarized FC -> metrics -> null model
// -> indices), aggregation across realizations, the exact sign test and the
// one-sample t-test, and heatmap grids.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcsim/fc.hpp"
#include "fcsim/model.hpp"
#include "fcsim/nullmodels.hpp"

namespace fcsim {

// 2^0, 2^-0.3, ..., 2^-6.9: 24 logarithmically spaced densities.
std::vector<double> default_density_grid();

enum class ScWeights { Binary, Uniform01, HalfNormal };
ScWeights sc_weights_from_string(const std::string& name);
std::string to_string(ScWeights w);

enum class ErNullStyle {
    MatchEdgeCount,  // uniform over graphs with exactly |E| edges (default)
    Gnp,             // re-draw each edge with p = observed density
};
ErNullStyle er_null_style_from_string(const std::string& name);
std::string to_string(ErNullStyle style);

struct FiniteMode {
    int t_len = 300;
    std::optional<int> burn_in;  // default_burn_in(s) when unset
};

struct SweepConfig {
    std::vector<int> n_values;
    std::vector<double> s_values;
    std::vector<double> alpha_values;
    std::vector<double> p_sc_values;
    std::vector<double> p_fc_values;
    int realizations = 20;
    std::optional<FiniteMode> finite;  // unset = asymptotic (exact covariance)
    NullModel null_model = NullModel::Er;
    ErNullStyle er_style = ErNullStyle::MatchEdgeCount;
    int null_realizations = 1;
    double swap_factor = 10.0;
    ScWeights sc_weights = ScWeights::Binary;
    ThresholdMode threshold_mode = ThresholdMode::Signed;
    bool connected_only = false;
    std::uint64_t master_seed = 0;
};

// Throws ConfigError naming the offending field.
void validate(const SweepConfig& config);

struct CellParams {
    int n = 0;
    double s = 0.0;
    double alpha = 0.0;
    double p_sc = 0.0;
    double p_fc = 0.0;
};

// Independent seed streams per (cell, realization). Values are fixed; they
// are part of the output reproducibility contract.
enum class SeedStream : std::uint64_t {
    ScTopology = 1,
    Series = 2,
    TieBreak = 3,
    NullGraph = 4,
};

// Hash chain over (master_seed, n, s, alpha, p_sc, p_fc, realization,
// stream). Derived from parameter values, not grid indices, so a cell's
// records do not depend on which other cells the sweep contains.
std::uint64_t derive_seed(std::uint64_t master_seed, const CellParams& params,
                          int realization, SeedStream stream);

struct RealizationRecord {
    CellParams params;
    int realization = 0;
    std::optional<double> gamma;
    std::optional<double> lambda;
    std::optional<double> sigma;
    int n_components = 0;
    bool connected = false;
    bool degenerate = false;    // coupling normalization failed
    bool fc_empty = false;      // edge budget rounded to zero
    bool null_partial = false;  // Maslov-Sneppen attempt cap hit
    std::uint64_t sc_seed = 0;
    std::uint64_t series_seed = 0;
    std::uint64_t tie_seed = 0;
    std::uint64_t null_seed = 0;
};

RealizationRecord run_cell(const SweepConfig& config, const CellParams& params,
                           int realization);

// The correlation matrix the cell pipeline binarizes, exposed for replay
// and diagnostics. Empty when the cell is degenerate.
std::optional<CorrelationMatrix> cell_correlation_matrix(const SweepConfig& config,
                                                         const CellParams& params,
                                                         int realization);

struct Aggregate {
    std::optional<double> mean;
    std::optional<double> median;
    std::optional<double> stddev;  // sample std, defined for count >= 2
    int count = 0;                 // defined values entering the aggregate
};

struct SignTestResult {
    std::optional<double> p;  // undefined when every value equals the reference
    int n_above = 0;
    int n_below = 0;
    int n_equal = 0;
};

struct CellResult {
    CellParams params;
    std::vector<RealizationRecord> records;
    Aggregate gamma;
    Aggregate lambda;
    Aggregate sigma;
    int count_connected = 0;
    int count_sigma_gt_1 = 0;
    SignTestResult sign_test;            // sigma against 1
    std::optional<double> t_test_p;      // sigma against 1
};

CellResult aggregate_cell(const SweepConfig& config, const CellParams& params,
                          std::vector<RealizationRecord> records);

// Evaluates the full Cartesian grid; cells and realizations are independent
// work units and the result is identical for any jobs count.
std::vector<CellResult> run_sweep(const SweepConfig& config, int jobs = 1);

// Exact two-sided binomial sign test of median == reference. Values equal
// to the reference are dropped.
SignTestResult sign_test(const std::vector<double>& values, double reference);

// Two-sided one-sample t-test p-value via the regularized incomplete beta
// function. Undefined for fewer than two values or zero variance.
std::optional<double> t_test_one_sample(const std::vector<double>& values,
                                        double reference);

namespace detail {
// I_x(a, b), evaluated with the continued fraction expansion.
double regularized_incomplete_beta(double a, double b, double x);
}  // namespace detail

enum class SweepMetric { Sigma, Gamma, Lambda };
SweepMetric sweep_metric_from_string(const std::string& name);
std::string to_string(SweepMetric metric);

enum class AggregateKind { Mean, Median };
AggregateKind aggregate_kind_from_string(const std::string& name);
std::string to_string(AggregateKind kind);

struct HeatmapGrid {
    std::vector<double> p_sc_axis;  // row order
    std::vector<double> p_fc_axis;  // column order
    std::vector<std::vector<std::optional<double>>> values;
};

// Collects the full p_sc x p_fc grid for fixed (n, s, alpha). Throws
// MissingCellsError listing absent coordinates if the grid is incomplete.
HeatmapGrid build_heatmap(const std::vector<CellResult>& results, SweepMetric metric,
                          AggregateKind aggregate, int n, double s, double alpha);

}  // namespace fcsim
