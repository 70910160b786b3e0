#include "fcsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace fcsim {

double NormalSampler::next() noexcept {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // u1 in (0,1] keeps the log finite; u1 == 1 gives r == 0, which is fine.
    const double u1 = 1.0 - rng_.uniform01();
    const double u2 = rng_.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
}

}  // namespace fcsim
