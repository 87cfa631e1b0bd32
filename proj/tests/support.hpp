#pragma once

#include <random>

#include "core/reproduction.hpp"
#include "core/types.hpp"

namespace twostrain::test {

inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

/// Random rates in [lo, hi], epsilon in [0, 1], N = 10000.
inline ModelParams draw_params(std::mt19937_64& gen, double lo = 0.01,
                               double hi = 2.0) {
    ModelParams p;
    p.beta1 = uniform(gen, lo, hi);
    p.beta2 = uniform(gen, lo, hi);
    p.gamma1 = uniform(gen, lo, hi);
    p.gamma2 = uniform(gen, lo, hi);
    p.sigma1 = uniform(gen, lo, hi);
    p.sigma2 = uniform(gen, lo, hi);
    p.epsilon = uniform01(gen);
    p.n_pop = 10000.0;
    return p;
}

/// Redraws until all four thresholds clear `margin` on the required side;
/// thresholds within `band` of 1 are rejected.
template <class Accept>
ModelParams draw_params_where(std::mt19937_64& gen, Accept&& accept) {
    for (int tries = 0; tries < 100000; ++tries) {
        const ModelParams p = draw_params(gen);
        if (accept(p)) {
            return p;
        }
    }
    throw std::runtime_error("draw_params_where exhausted its tries");
}

/// Benchmark scenarios used throughout the tests: strain coexistence,
/// takeover through higher transmissibility, and takeover through
/// cross-immunity.
inline ModelParams coexistence_params() {
    return {0.4, 0.6, 0.2, 0.1, 0.1, 0.1, 0.0, 10000.0};
}
inline ModelParams takeover_params() {
    return {0.3, 0.6, 0.2, 0.1, 0.1, 0.1, 0.0, 10000.0};
}
inline ModelParams cross_immunity_params() {
    return {0.4, 0.6, 0.2, 0.1, 0.1, 0.1, 0.5, 10000.0};
}

} // namespace twostrain::test
