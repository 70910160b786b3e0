#include "fcsim/pipeline.hpp"

#include "fcsim/error.hpp"
#include "fcsim/rng.hpp"

namespace fcsim {

DemoResult run_demo(const DemoParams& params, std::uint64_t seed) {
    DemoResult result;
    result.seed = seed;

    const std::uint64_t sc_seed = SeedMixer(seed).absorb(1).value();
    const std::uint64_t series_seed = SeedMixer(seed).absorb(2).value();
    const std::uint64_t tie_seed = SeedMixer(seed).absorb(3).value();

    result.sc = generate_er(params.n, params.p_sc, sc_seed);
    const CouplingMatrix coupling = build_coupling(result.sc, params.s, params.alpha);

    const int burn = params.burn_in ? *params.burn_in : default_burn_in(params.s);
    const TimeSeriesSample series = simulate_ar1(coupling, params.t_len, burn, series_seed);
    result.corr = pearson_matrix(series);

    const double p_fc = params.p_fc ? *params.p_fc : params.p_sc;
    result.fc = binarize_to_density(result.corr, p_fc, tie_seed);

    result.fc_metrics = metrics(result.fc.graph);
    result.sc_metrics = metrics(to_binary_graph(result.sc));

    // The structural matrix doubles as the matched ER realization.
    result.indices = small_world(result.fc_metrics, result.sc_metrics);
    result.indices.null_model = NullModel::Er;
    result.indices.null_seed = sc_seed;
    return result;
}

}  // namespace fcsim
