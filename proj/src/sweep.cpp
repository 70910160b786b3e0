#include "fcsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "fcsim/error.hpp"

namespace fcsim {

std::vector<double> default_density_grid() {
    std::vector<double> grid;
    grid.reserve(24);
    for (int step = 0; step < 24; ++step) grid.push_back(std::exp2(-0.3 * step));
    return grid;
}

ScWeights sc_weights_from_string(const std::string& name) {
    if (name == "binary") return ScWeights::Binary;
    if (name == "uniform01") return ScWeights::Uniform01;
    if (name == "halfnormal") return ScWeights::HalfNormal;
    throw InvalidArgument("unknown sc_weights '" + name +
                          "' (expected binary, uniform01 or halfnormal)");
}

std::string to_string(ScWeights w) {
    switch (w) {
        case ScWeights::Binary: return "binary";
        case ScWeights::Uniform01: return "uniform01";
        case ScWeights::HalfNormal: return "halfnormal";
    }
    return "binary";
}

ErNullStyle er_null_style_from_string(const std::string& name) {
    if (name == "match_edges") return ErNullStyle::MatchEdgeCount;
    if (name == "gnp") return ErNullStyle::Gnp;
    throw InvalidArgument("unknown er_style '" + name + "' (expected match_edges or gnp)");
}

std::string to_string(ErNullStyle style) {
    return style == ErNullStyle::MatchEdgeCount ? "match_edges" : "gnp";
}

void validate(const SweepConfig& config) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(!config.n_values.empty(), "n_values: must be non-empty");
    for (int n : config.n_values)
        require(n >= 2, "n_values: node counts must be >= 2, got " + std::to_string(n));
    require(!config.s_values.empty(), "s_values: must be non-empty");
    for (double s : config.s_values)
        require(s > 0.0 && s < 1.0, "s_values: values must lie in (0,1), got " + std::to_string(s));
    require(!config.alpha_values.empty(), "alpha_values: must be non-empty");
    for (double a : config.alpha_values)
        require(a >= 0.0, "alpha_values: values must be >= 0, got " + std::to_string(a));
    require(!config.p_sc_values.empty(), "p_sc_values: must be non-empty");
    for (double p : config.p_sc_values)
        require(p > 0.0 && p <= 1.0,
                "p_sc_values: densities must lie in (0,1], got " + std::to_string(p));
    require(!config.p_fc_values.empty(), "p_fc_values: must be non-empty");
    for (double p : config.p_fc_values)
        require(p > 0.0 && p <= 1.0,
                "p_fc_values: densities must lie in (0,1], got " + std::to_string(p));
    require(config.realizations >= 1, "realizations: must be >= 1");
    if (config.finite) {
        require(config.finite->t_len >= 3, "t_len: finite mode needs t_len >= 3");
        if (config.finite->burn_in)
            require(*config.finite->burn_in >= 0, "burn_in: must be >= 0");
    }
    require(config.null_realizations >= 1, "null_realizations: must be >= 1");
    require(config.swap_factor > 0.0, "swap_factor: must be positive");
}

std::uint64_t derive_seed(std::uint64_t master_seed, const CellParams& params,
                          int realization, SeedStream stream) {
    return SeedMixer(master_seed)
        .absorb(static_cast<std::uint64_t>(params.n))
        .absorb_double(params.s)
        .absorb_double(params.alpha)
        .absorb_double(params.p_sc)
        .absorb_double(params.p_fc)
        .absorb(static_cast<std::uint64_t>(realization))
        .absorb(static_cast<std::uint64_t>(stream))
        .value();
}

namespace {

StructuralGraph make_structural(const SweepConfig& config, const CellParams& params,
                                std::uint64_t sc_seed) {
    switch (config.sc_weights) {
        case ScWeights::Binary: return generate_er(params.n, params.p_sc, sc_seed);
        case ScWeights::Uniform01:
            return generate_weighted_er(params.n, params.p_sc, WeightDist::Uniform01, sc_seed);
        case ScWeights::HalfNormal:
            return generate_weighted_er(params.n, params.p_sc, WeightDist::HalfNormal, sc_seed);
    }
    throw InvalidArgument("unhandled sc_weights");
}

CorrelationMatrix correlation_for(const SweepConfig& config, const CellParams& params,
                                  const CouplingMatrix& coupling, std::uint64_t series_seed) {
    if (config.finite) {
        const int burn = config.finite->burn_in ? *config.finite->burn_in
                                                : default_burn_in(params.s);
        return pearson_matrix(simulate_ar1(coupling, config.finite->t_len, burn, series_seed));
    }
    return cov_to_corr(asymptotic_covariance(coupling));
}

BinaryGraph draw_null(const SweepConfig& config, const BinaryGraph& fc_graph,
                      std::uint64_t null_seed, bool* partial) {
    if (config.null_model == NullModel::MaslovSneppen) {
        MaslovSneppenResult ms = maslov_sneppen(fc_graph, config.swap_factor, null_seed);
        if (ms.partial) *partial = true;
        return std::move(ms.graph);
    }
    return config.er_style == ErNullStyle::MatchEdgeCount ? er_matched(fc_graph, null_seed)
                                                          : er_gnp(fc_graph, null_seed);
}

}  // namespace

std::optional<CorrelationMatrix> cell_correlation_matrix(const SweepConfig& config,
                                                         const CellParams& params,
                                                         int realization) {
    const std::uint64_t sc_seed =
        derive_seed(config.master_seed, params, realization, SeedStream::ScTopology);
    const std::uint64_t series_seed =
        derive_seed(config.master_seed, params, realization, SeedStream::Series);
    const StructuralGraph sc = make_structural(config, params, sc_seed);
    CouplingMatrix coupling;
    try {
        coupling = build_coupling(sc, params.s, params.alpha);
    } catch (const DegenerateNormalization&) {
        return std::nullopt;
    }
    return correlation_for(config, params, coupling, series_seed);
}

RealizationRecord run_cell(const SweepConfig& config, const CellParams& params,
                           int realization) {
    RealizationRecord record;
    record.params = params;
    record.realization = realization;
    record.sc_seed = derive_seed(config.master_seed, params, realization, SeedStream::ScTopology);
    record.series_seed = derive_seed(config.master_seed, params, realization, SeedStream::Series);
    record.tie_seed = derive_seed(config.master_seed, params, realization, SeedStream::TieBreak);
    record.null_seed = derive_seed(config.master_seed, params, realization, SeedStream::NullGraph);

    const StructuralGraph sc = make_structural(config, params, record.sc_seed);
    CouplingMatrix coupling;
    try {
        coupling = build_coupling(sc, params.s, params.alpha);
    } catch (const DegenerateNormalization&) {
        record.degenerate = true;
        return record;
    }

    const CorrelationMatrix corr = correlation_for(config, params, coupling, record.series_seed);
    const BinarizeResult fc =
        binarize_to_density(corr, params.p_fc, record.tie_seed, config.threshold_mode);
    record.fc_empty = fc.empty_graph;

    const GraphMetrics fc_metrics = metrics(fc.graph);
    record.n_components = fc_metrics.n_components;
    record.connected = fc_metrics.n_components == 1;

    // One null realization by default; with several, the defined per-null
    // ratios are averaged and sigma is recomputed from the averages.
    double gamma_sum = 0.0, lambda_sum = 0.0;
    int gamma_count = 0, lambda_count = 0;
    for (int k = 0; k < config.null_realizations; ++k) {
        const std::uint64_t seed_k = SeedMixer(record.null_seed)
                                         .absorb(static_cast<std::uint64_t>(k))
                                         .value();
        const BinaryGraph null_graph = draw_null(config, fc.graph, seed_k, &record.null_partial);
        const SmallWorldIndices indices = small_world(fc_metrics, metrics(null_graph));
        if (indices.gamma) {
            gamma_sum += *indices.gamma;
            ++gamma_count;
        }
        if (indices.lambda) {
            lambda_sum += *indices.lambda;
            ++lambda_count;
        }
    }
    if (gamma_count > 0) record.gamma = gamma_sum / gamma_count;
    if (lambda_count > 0) record.lambda = lambda_sum / lambda_count;
    if (record.gamma && record.lambda && *record.lambda > 0.0)
        record.sigma = *record.gamma / *record.lambda;
    return record;
}

namespace {

Aggregate aggregate_values(const std::vector<double>& values) {
    Aggregate agg;
    agg.count = static_cast<int>(values.size());
    if (values.empty()) return agg;

    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    agg.mean = mean;

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t half = sorted.size() / 2;
    agg.median = sorted.size() % 2 == 1 ? sorted[half]
                                        : 0.5 * (sorted[half - 1] + sorted[half]);

    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        agg.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return agg;
}

}  // namespace

CellResult aggregate_cell(const SweepConfig& config, const CellParams& params,
                          std::vector<RealizationRecord> records) {
    CellResult cell;
    cell.params = params;
    cell.records = std::move(records);

    std::vector<double> gammas, lambdas, sigmas;
    for (const RealizationRecord& rec : cell.records) {
        if (rec.connected) ++cell.count_connected;
        if (config.connected_only && !rec.connected) continue;
        if (rec.gamma) gammas.push_back(*rec.gamma);
        if (rec.lambda) lambdas.push_back(*rec.lambda);
        if (rec.sigma) {
            sigmas.push_back(*rec.sigma);
            if (*rec.sigma > 1.0) ++cell.count_sigma_gt_1;
        }
    }
    cell.gamma = aggregate_values(gammas);
    cell.lambda = aggregate_values(lambdas);
    cell.sigma = aggregate_values(sigmas);
    cell.sign_test = sign_test(sigmas, 1.0);
    cell.t_test_p = t_test_one_sample(sigmas, 1.0);
    return cell;
}

std::vector<CellResult> run_sweep(const SweepConfig& config, int jobs) {
    validate(config);
    if (jobs < 1) throw InvalidArgument("jobs must be >= 1");

    std::vector<CellParams> cells;
    for (int n : config.n_values)
        for (double s : config.s_values)
            for (double alpha : config.alpha_values)
                for (double p_sc : config.p_sc_values)
                    for (double p_fc : config.p_fc_values)
                        cells.push_back({n, s, alpha, p_sc, p_fc});

    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> next_cell{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t index = next_cell.fetch_add(1);
            if (index >= cells.size() || failed.load()) return;
            try {
                std::vector<RealizationRecord> records;
                records.reserve(static_cast<std::size_t>(config.realizations));
                for (int r = 0; r < config.realizations; ++r)
                    records.push_back(run_cell(config, cells[index], r));
                results[index] = aggregate_cell(config, cells[index], std::move(records));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::size_t thread_count =
            std::min(static_cast<std::size_t>(jobs), cells.size());
        pool.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

SignTestResult sign_test(const std::vector<double>& values, double reference) {
    SignTestResult result;
    for (double v : values) {
        if (v > reference) ++result.n_above;
        else if (v < reference) ++result.n_below;
        else ++result.n_equal;
    }
    const int n = result.n_above + result.n_below;
    if (n == 0) return result;  // undefined: every value equals the reference

    const int tail = std::min(result.n_above, result.n_below);
    double cumulative;
    if (n <= 62) {
        // Exact integer tail count; C(62,31) still fits in 64 bits.
        unsigned long long tail_count = 0;
        unsigned long long binom = 1;  // C(n, 0)
        for (int i = 0; i <= tail; ++i) {
            tail_count += binom;
            binom = binom * static_cast<unsigned long long>(n - i) /
                    static_cast<unsigned long long>(i + 1);
        }
        cumulative = static_cast<double>(tail_count) * std::exp2(-n);
    } else {
        double log_binom = 0.0;  // log C(n, 0)
        cumulative = 0.0;
        for (int i = 0; i <= tail; ++i) {
            cumulative += std::exp(log_binom - n * std::numbers::ln2);
            log_binom += std::log(static_cast<double>(n - i)) -
                         std::log(static_cast<double>(i + 1));
        }
    }
    result.p = std::min(1.0, 2.0 * cumulative);
    return result;
}

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method,
// as in Numerical Recipes' betacf).
namespace {

double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEpsilon = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEpsilon) return h;
    }
    throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // Use the expansion on the side where it converges quickly.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace detail

std::optional<double> t_test_one_sample(const std::vector<double>& values, double reference) {
    const auto n = static_cast<int>(values.size());
    if (n < 2) return std::nullopt;

    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    if (ss <= 0.0) return std::nullopt;  // zero variance

    const double variance = ss / (n - 1);
    const double t = (mean - reference) / std::sqrt(variance / n);
    const double df = static_cast<double>(n - 1);
    // Two-sided p-value: P(|T_df| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
    return detail::regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

SweepMetric sweep_metric_from_string(const std::string& name) {
    if (name == "sigma") return SweepMetric::Sigma;
    if (name == "gamma") return SweepMetric::Gamma;
    if (name == "lambda") return SweepMetric::Lambda;
    throw InvalidArgument("unknown metric '" + name + "' (expected sigma, gamma or lambda)");
}

std::string to_string(SweepMetric metric) {
    switch (metric) {
        case SweepMetric::Sigma: return "sigma";
        case SweepMetric::Gamma: return "gamma";
        case SweepMetric::Lambda: return "lambda";
    }
    return "sigma";
}

AggregateKind aggregate_kind_from_string(const std::string& name) {
    if (name == "mean") return AggregateKind::Mean;
    if (name == "median") return AggregateKind::Median;
    throw InvalidArgument("unknown aggregate '" + name + "' (expected mean or median)");
}

std::string to_string(AggregateKind kind) {
    return kind == AggregateKind::Mean ? "mean" : "median";
}

HeatmapGrid build_heatmap(const std::vector<CellResult>& results, SweepMetric metric,
                          AggregateKind aggregate, int n, double s, double alpha) {
    // Axis values in first-seen order; the sweep emits them in grid order.
    HeatmapGrid grid;
    auto push_unique = [](std::vector<double>& axis, double v) {
        if (std::find(axis.begin(), axis.end(), v) == axis.end()) axis.push_back(v);
    };
    for (const CellResult& cell : results) {
        if (cell.params.n != n || cell.params.s != s || cell.params.alpha != alpha) continue;
        push_unique(grid.p_sc_axis, cell.params.p_sc);
        push_unique(grid.p_fc_axis, cell.params.p_fc);
    }
    if (grid.p_sc_axis.empty())
        throw MissingCellsError("no cells match n=" + std::to_string(n) + " s=" +
                                std::to_string(s) + " alpha=" + std::to_string(alpha));

    const std::size_t rows = grid.p_sc_axis.size();
    const std::size_t cols = grid.p_fc_axis.size();
    grid.values.assign(rows, std::vector<std::optional<double>>(cols));
    std::vector<std::vector<bool>> seen(rows, std::vector<bool>(cols, false));

    for (const CellResult& cell : results) {
        if (cell.params.n != n || cell.params.s != s || cell.params.alpha != alpha) continue;
        const auto row = static_cast<std::size_t>(
            std::find(grid.p_sc_axis.begin(), grid.p_sc_axis.end(), cell.params.p_sc) -
            grid.p_sc_axis.begin());
        const auto col = static_cast<std::size_t>(
            std::find(grid.p_fc_axis.begin(), grid.p_fc_axis.end(), cell.params.p_fc) -
            grid.p_fc_axis.begin());
        const Aggregate& agg = metric == SweepMetric::Sigma   ? cell.sigma
                               : metric == SweepMetric::Gamma ? cell.gamma
                                                              : cell.lambda;
        grid.values[row][col] = aggregate == AggregateKind::Mean ? agg.mean : agg.median;
        seen[row][col] = true;
    }

    std::string missing;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (!seen[r][c])
                missing += " (p_sc=" + std::to_string(grid.p_sc_axis[r]) +
                           ", p_fc=" + std::to_string(grid.p_fc_axis[c]) + ")";
    if (!missing.empty()) throw MissingCellsError("grid is missing cells:" + missing);
    return grid;
}

}  // namespace fcsim
