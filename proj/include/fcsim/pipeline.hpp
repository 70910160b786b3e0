#pragma once

// The finite-sample reference pipeline: ER structural matrix -> AR(1)
// series -> Pearson correlation -> binarized FC graph, with the structural
// matrix itself serving as the matched random graph (it is an ER
// realization of the same density when p_fc = p_sc).

#include <cstdint>
#include <optional>

#include "fcsim/fc.hpp"
#include "fcsim/model.hpp"
#include "fcsim/nullmodels.hpp"

namespace fcsim {

struct DemoParams {
    int n = 100;
    double p_sc = 0.1;
    double s = 0.1;
    double alpha = 2.0;
    int t_len = 300;
    std::optional<int> burn_in;      // default_burn_in(s) when unset
    std::optional<double> p_fc;      // p_sc when unset
};

struct DemoResult {
    StructuralGraph sc;
    CorrelationMatrix corr;
    BinarizeResult fc;
    GraphMetrics fc_metrics;
    GraphMetrics sc_metrics;
    SmallWorldIndices indices;
    std::uint64_t seed = 0;
};

DemoResult run_demo(const DemoParams& params, std::uint64_t seed);

}  // namespace fcsim
