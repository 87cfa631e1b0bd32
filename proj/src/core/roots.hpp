#pragma once

namespace twostrain {

/// Absolute x tolerance of the equilibrium bisections, relative to n_pop.
inline constexpr double kBisectTolRel = 1e-10;
inline constexpr int kBisectMaxIter = 200;

/// Bisection on [lo, hi] for fn with fn(lo) > 0 > fn(hi), to an absolute
/// x tolerance. The bracket sign condition is the caller's responsibility.
template <class Fn>
double bisect_decreasing(Fn&& fn, double lo, double hi, double xtol) {
    for (int it = 0; it < kBisectMaxIter && hi - lo > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fn(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace twostrain
