// fcsim command line: demo | analyze | sweep | heatmap.
//
// Every command is deterministic given its arguments; demo and sweep refuse
// to run without an explicit seed. Exit status 0 on success; on failure a
// single line "error: <category>: <message>" goes to stderr.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fcsim/error.hpp"
#include "fcsim/io.hpp"
#include "fcsim/pipeline.hpp"
#include "fcsim/sweep.hpp"
#include "fcsim/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public fcsim::Error {
public:
    explicit UsageError(const std::string& msg) : Error("usage", msg) {}
};

struct Manifest {
    std::string command;
    json parameters = json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void write(const fs::path& path) {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        json doc;
        doc["command"] = command;
        doc["version"] = fcsim::kVersion;
        doc["master_seed"] = seed;
        doc["parameters"] = parameters;
        doc["outputs"] = outputs;
        doc["duration_seconds"] = seconds;
        fcsim::write_text_file(path.string(), doc.dump(2) + "\n");
    }
};

std::string file_header(const std::string& command, const std::string& params) {
    return "# fcsim v" + std::string(fcsim::kVersion) + " " + command + " " + params + "\n";
}

void ensure_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw fcsim::IoError("cannot create output directory '" + dir.string() + "'");
}

std::string format_indices(const fcsim::SmallWorldIndices& idx) {
    auto opt = [](const std::optional<double>& v) {
        return v ? fcsim::format_double(*v) : std::string("undefined");
    };
    std::ostringstream out;
    out << "gamma = " << opt(idx.gamma) << '\n'
        << "lambda = " << opt(idx.lambda) << '\n'
        << "sigma = " << opt(idx.sigma) << '\n'
        << "null_model = " << fcsim::to_string(idx.null_model) << '\n'
        << "null_seed = " << idx.null_seed << '\n';
    return out.str();
}

std::string format_metrics(const fcsim::GraphMetrics& m) {
    std::ostringstream out;
    out << "clustering = " << fcsim::format_double(m.clustering) << '\n'
        << "avg_path_length = "
        << (m.avg_path_length ? fcsim::format_double(*m.avg_path_length)
                              : std::string("undefined"))
        << '\n'
        << "density = " << fcsim::format_double(m.density) << '\n'
        << "n_components = " << m.n_components << '\n'
        << "finite_pair_fraction = " << fcsim::format_double(m.finite_pair_fraction) << '\n'
        << "degree_sequence =";
    for (int k : m.degree_sequence) out << ' ' << k;
    out << '\n';
    return out.str();
}

int cmd_demo(const fcsim::DemoParams& params, std::uint64_t seed, const fs::path& out_dir) {
    Manifest manifest;
    manifest.command = "demo";
    manifest.seed = seed;
    manifest.parameters = {{"n", params.n},
                           {"p_sc", params.p_sc},
                           {"s", params.s},
                           {"alpha", params.alpha},
                           {"t_len", params.t_len},
                           {"p_fc", params.p_fc ? *params.p_fc : params.p_sc},
                           {"burn_in", params.burn_in ? *params.burn_in
                                                      : fcsim::default_burn_in(params.s)}};

    ensure_output_dir(out_dir);
    const fcsim::DemoResult demo = fcsim::run_demo(params, seed);

    std::ostringstream param_text;
    param_text << "seed=" << seed << " n=" << params.n << " p_sc=" << params.p_sc
               << " s=" << params.s << " alpha=" << params.alpha << " t_len=" << params.t_len;
    const std::string header = file_header("demo", param_text.str());

    auto emit = [&](const char* name, const std::string& body) {
        const fs::path path = out_dir / name;
        fcsim::write_text_file(path.string(), header + body);
        manifest.outputs.push_back(path.string());
    };

    {
        std::ostringstream body;
        fcsim::write_matrix(body, demo.sc.adjacency);
        emit("sc.txt", body.str());
    }
    {
        std::ostringstream body;
        fcsim::write_matrix(body, demo.corr.entries);
        emit("correlation.txt", body.str());
    }
    {
        std::ostringstream body;
        fcsim::write_edge_list(body, demo.fc.graph);
        emit("fc.edges", body.str());
    }
    emit("metrics.txt", "# functional connectivity graph\n" + format_metrics(demo.fc_metrics) +
                            "# structural graph\n" + format_metrics(demo.sc_metrics));
    emit("indices.txt", format_indices(demo.indices));
    manifest.write(out_dir / "manifest.json");

    std::cout << format_indices(demo.indices);
    return 0;
}

int cmd_analyze(const std::string& input_path, std::optional<double> p_fc,
                fcsim::NullModel null_model, double swap_factor, std::uint64_t seed) {
    const fcsim::GraphOrMatrix input = fcsim::read_graph_or_matrix(input_path);

    fcsim::BinaryGraph graph;
    if (input.graph) {
        graph = *input.graph;
    } else {
        if (!p_fc)
            throw UsageError("correlation matrix input requires --p-fc to binarize");
        graph = fcsim::binarize_to_density(*input.matrix, *p_fc,
                                           fcsim::SeedMixer(seed).absorb(3).value())
                    .graph;
    }

    const fcsim::GraphMetrics graph_metrics = fcsim::metrics(graph);
    const std::uint64_t null_seed = fcsim::SeedMixer(seed).absorb(4).value();

    fcsim::BinaryGraph null_graph;
    bool partial = false;
    if (null_model == fcsim::NullModel::MaslovSneppen) {
        auto ms = fcsim::maslov_sneppen(graph, swap_factor, null_seed);
        partial = ms.partial;
        null_graph = std::move(ms.graph);
    } else {
        null_graph = fcsim::er_matched(graph, null_seed);
    }

    fcsim::SmallWorldIndices indices =
        fcsim::small_world(graph_metrics, fcsim::metrics(null_graph));
    indices.null_model = null_model;
    indices.null_seed = null_seed;

    std::cout << format_metrics(graph_metrics) << format_indices(indices);
    if (partial) std::cout << "null_partial = true\n";
    return 0;
}

int cmd_sweep(const fcsim::SweepConfig& config, const fs::path& out_dir, int jobs) {
    Manifest manifest;
    manifest.command = "sweep";
    manifest.seed = config.master_seed;
    {
        std::ostringstream cfg;
        fcsim::write_sweep_config(cfg, config);
        manifest.parameters["config"] = cfg.str();
        manifest.parameters["jobs"] = jobs;
    }

    ensure_output_dir(out_dir);
    const std::vector<fcsim::CellResult> results = fcsim::run_sweep(config, jobs);

    std::ostringstream body;
    fcsim::write_sweep_config(body, config);
    const fs::path config_path = out_dir / "config.txt";
    fcsim::write_text_file(config_path.string(),
                           file_header("sweep", "resolved configuration") + body.str());
    manifest.outputs.push_back(config_path.string());

    const fs::path results_path = out_dir / "results.tsv";
    std::ostringstream table;
    table << file_header("sweep", "master_seed=" + std::to_string(config.master_seed));
    fcsim::write_results_table(table, results);
    fcsim::write_text_file(results_path.string(), table.str());
    manifest.outputs.push_back(results_path.string());

    manifest.write(out_dir / "manifest.json");
    std::cout << "cells = " << results.size() << '\n'
              << "results = " << results_path.string() << '\n';
    return 0;
}

int cmd_heatmap(const std::string& results_path, fcsim::SweepMetric metric,
                fcsim::AggregateKind aggregate, int n, double s, double alpha,
                const std::string& out_prefix) {
    const std::string metric_name = fcsim::to_string(metric);
    const std::string aggregate_name = fcsim::to_string(aggregate);
    Manifest manifest;
    manifest.command = "heatmap";
    manifest.parameters = {{"results", results_path}, {"metric", metric_name},
                           {"aggregate", aggregate_name}, {"n", n},
                           {"s", s},                     {"alpha", alpha}};

    const auto results = fcsim::read_results_table_file(results_path);
    const auto grid = fcsim::build_heatmap(results, metric, aggregate, n, s, alpha);

    std::ostringstream grid_body, axes_body;
    fcsim::write_heatmap(grid_body, axes_body, grid);

    std::ostringstream param_text;
    param_text << "metric=" << metric_name << " aggregate=" << aggregate_name << " n=" << n
               << " s=" << s << " alpha=" << alpha;
    const std::string header = file_header("heatmap", param_text.str());

    const std::string grid_path = out_prefix + ".grid.txt";
    const std::string axes_path = out_prefix + ".axes.txt";
    fcsim::write_text_file(grid_path, header + grid_body.str());
    fcsim::write_text_file(axes_path, header + axes_body.str());
    manifest.outputs.push_back(grid_path);
    manifest.outputs.push_back(axes_path);
    manifest.write(out_prefix + ".manifest.json");

    std::cout << "grid = " << grid_path << '\n' << "axes = " << axes_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AR(1) functional connectivity simulator and small-world analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("fcsim ") + fcsim::kVersion);

    // demo
    auto* demo = app.add_subcommand("demo", "finite-sample pipeline on one ER system");
    fcsim::DemoParams demo_params;
    std::uint64_t demo_seed = 0;
    std::string demo_out = "demo_out";
    double demo_p_fc = -1.0;
    int demo_burn_in = -1;
    auto* demo_seed_opt = demo->add_option("--seed", demo_seed, "master seed (required)");
    demo->add_option("--out", demo_out, "output directory");
    demo->add_option("--n", demo_params.n, "node count");
    demo->add_option("--p-sc", demo_params.p_sc, "structural density");
    demo->add_option("--p-fc", demo_p_fc, "functional density (default: p_sc)");
    demo->add_option("--s", demo_params.s, "coupling strength in (0,1)");
    demo->add_option("--alpha", demo_params.alpha, "autocorrelation weight");
    demo->add_option("--t-len", demo_params.t_len, "sample length");
    demo->add_option("--burn-in", demo_burn_in, "burn-in steps (default: max(1000, 20/(1-s)))");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "metrics and indices for a graph or matrix file");
    std::string analyze_input;
    double analyze_p_fc = -1.0;
    std::string analyze_null = "er";
    double analyze_swap_factor = 10.0;
    std::uint64_t analyze_seed = 0;
    analyze->add_option("input", analyze_input, "edge list, adjacency, or correlation file")
        ->required();
    analyze->add_option("--p-fc", analyze_p_fc, "binarization density for correlation input");
    analyze->add_option("--null", analyze_null, "null model: er | maslov_sneppen");
    analyze->add_option("--swap-factor", analyze_swap_factor, "Maslov-Sneppen swaps per edge");
    analyze->add_option("--seed", analyze_seed, "seed for null model and tie breaking (default 0)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "parameter study from a config file");
    std::string sweep_config_path;
    std::string sweep_out = "sweep_out";
    int sweep_jobs = 1;
    std::uint64_t sweep_seed = 0;
    std::vector<int> ovr_n;
    std::vector<double> ovr_s, ovr_alpha, ovr_p_sc, ovr_p_fc;
    int ovr_realizations = -1;
    std::string ovr_mode, ovr_null, ovr_weights, ovr_threshold, ovr_er_style;
    int ovr_t_len = -1, ovr_burn_in = -1, ovr_null_realizations = -1;
    double ovr_swap_factor = -1.0;
    int ovr_connected_only = -1;
    sweep->add_option("--config", sweep_config_path, "config file (key = value lines)")
        ->required();
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_option("--jobs", sweep_jobs, "worker threads (output is jobs-invariant)");
    auto* sweep_seed_opt =
        sweep->add_option("--seed", sweep_seed, "master seed; overrides config master_seed");
    sweep->add_option("--n-values", ovr_n, "override n_values");
    sweep->add_option("--s-values", ovr_s, "override s_values");
    sweep->add_option("--alpha-values", ovr_alpha, "override alpha_values");
    sweep->add_option("--p-sc-values", ovr_p_sc, "override p_sc_values");
    sweep->add_option("--p-fc-values", ovr_p_fc, "override p_fc_values");
    sweep->add_option("--realizations", ovr_realizations, "override realizations");
    sweep->add_option("--mode", ovr_mode, "override mode: asymptotic | finite");
    sweep->add_option("--t-len", ovr_t_len, "override t_len (finite mode)");
    sweep->add_option("--burn-in", ovr_burn_in, "override burn_in (finite mode)");
    sweep->add_option("--null-model", ovr_null, "override null_model");
    sweep->add_option("--er-style", ovr_er_style, "override er_style: match_edges | gnp");
    sweep->add_option("--null-realizations", ovr_null_realizations, "override null_realizations");
    sweep->add_option("--swap-factor", ovr_swap_factor, "override swap_factor");
    sweep->add_option("--sc-weights", ovr_weights, "override sc_weights");
    sweep->add_option("--threshold", ovr_threshold, "override threshold: signed | absolute");
    sweep->add_option("--connected-only", ovr_connected_only, "override connected_only (0|1)");

    // heatmap
    auto* heatmap = app.add_subcommand("heatmap", "p_sc x p_fc grid from sweep results");
    std::string hm_results, hm_metric = "sigma", hm_aggregate = "median", hm_out = "heatmap";
    int hm_n = 0;
    double hm_s = 0.0, hm_alpha = 0.0;
    heatmap->add_option("--results", hm_results, "results.tsv from sweep")->required();
    heatmap->add_option("--metric", hm_metric, "sigma | gamma | lambda");
    heatmap->add_option("--aggregate", hm_aggregate, "mean | median");
    heatmap->add_option("--n", hm_n, "fixed node count")->required();
    heatmap->add_option("--s", hm_s, "fixed coupling strength")->required();
    heatmap->add_option("--alpha", hm_alpha, "fixed alpha")->required();
    heatmap->add_option("--out", hm_out, "output path prefix");

    try {
        app.parse(argc, argv);

        if (demo->parsed()) {
            if (demo_seed_opt->count() == 0)
                throw UsageError("demo requires --seed (no wall-clock seeding)");
            if (demo_p_fc >= 0.0) demo_params.p_fc = demo_p_fc;
            if (demo_burn_in >= 0) demo_params.burn_in = demo_burn_in;
            return cmd_demo(demo_params, demo_seed, demo_out);
        }
        if (analyze->parsed()) {
            std::optional<double> p_fc;
            if (analyze_p_fc >= 0.0) p_fc = analyze_p_fc;
            return cmd_analyze(analyze_input, p_fc, fcsim::null_model_from_string(analyze_null),
                               analyze_swap_factor, analyze_seed);
        }
        if (sweep->parsed()) {
            fcsim::SweepConfig config = fcsim::read_sweep_config_file(sweep_config_path);
            if (!ovr_n.empty()) config.n_values = ovr_n;
            if (!ovr_s.empty()) config.s_values = ovr_s;
            if (!ovr_alpha.empty()) config.alpha_values = ovr_alpha;
            if (!ovr_p_sc.empty()) config.p_sc_values = ovr_p_sc;
            if (!ovr_p_fc.empty()) config.p_fc_values = ovr_p_fc;
            if (ovr_realizations >= 0) config.realizations = ovr_realizations;
            if (!ovr_mode.empty()) {
                if (ovr_mode == "asymptotic") {
                    config.finite.reset();
                } else if (ovr_mode == "finite") {
                    if (!config.finite) config.finite = fcsim::FiniteMode{};
                } else {
                    throw UsageError("--mode must be asymptotic or finite");
                }
            }
            if (ovr_t_len >= 0) {
                if (!config.finite) throw UsageError("--t-len needs finite mode");
                config.finite->t_len = ovr_t_len;
            }
            if (ovr_burn_in >= 0) {
                if (!config.finite) throw UsageError("--burn-in needs finite mode");
                config.finite->burn_in = ovr_burn_in;
            }
            if (!ovr_null.empty()) config.null_model = fcsim::null_model_from_string(ovr_null);
            if (!ovr_er_style.empty())
                config.er_style = fcsim::er_null_style_from_string(ovr_er_style);
            if (ovr_null_realizations >= 0) config.null_realizations = ovr_null_realizations;
            if (ovr_swap_factor >= 0.0) config.swap_factor = ovr_swap_factor;
            if (!ovr_weights.empty())
                config.sc_weights = fcsim::sc_weights_from_string(ovr_weights);
            if (!ovr_threshold.empty()) {
                if (ovr_threshold == "signed")
                    config.threshold_mode = fcsim::ThresholdMode::Signed;
                else if (ovr_threshold == "absolute")
                    config.threshold_mode = fcsim::ThresholdMode::Absolute;
                else
                    throw UsageError("--threshold must be signed or absolute");
            }
            if (ovr_connected_only >= 0) config.connected_only = ovr_connected_only != 0;
            if (sweep_seed_opt->count() > 0) config.master_seed = sweep_seed;
            else if (config.master_seed == 0)
                throw UsageError("sweep requires a master seed (config master_seed or --seed)");
            fcsim::validate(config);
            return cmd_sweep(config, sweep_out, sweep_jobs);
        }
        if (heatmap->parsed()) {
            fcsim::SweepMetric metric;
            fcsim::AggregateKind aggregate;
            try {
                metric = fcsim::sweep_metric_from_string(hm_metric);
                aggregate = fcsim::aggregate_kind_from_string(hm_aggregate);
            } catch (const fcsim::InvalidArgument& err) {
                throw UsageError(err.what());
            }
            return cmd_heatmap(hm_results, metric, aggregate, hm_n, hm_s, hm_alpha, hm_out);
        }
        throw UsageError("no subcommand given");
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help / --version
        std::cerr << "error: usage: " << err.what() << '\n';
        return 2;
    } catch (const UsageError& err) {
        std::cerr << "error: usage: " << err.what() << '\n';
        return 2;
    } catch (const fcsim::Error& err) {
        std::cerr << "error: " << err.category() << ": " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: internal: " << err.what() << '\n';
        return 3;
    }
}
