#pragma once

#include <cstddef>
#include <vector>

#include "core/types.hpp"

namespace twostrain {

/// I2 + epsilon*R2 level where omega switches branch, N(1 - 1/R1).
/// Negative (or -inf) when beta1 <= gamma1; the positive branch of omega
/// is then unreachable for admissible states.
double switching_threshold(const ModelParams& params);

/// Steady-state level of the original strain as a function of the emerging
/// strain, piecewise across the switching line, continuous and >= 0.
double omega(const ModelParams& params, const ReducedState& state);

struct OmegaPartials {
    double d_i2{};
    double d_r2{};
};

/// Closed-form partial derivatives of omega. On or beyond the switching
/// line both are 0; the function is not differentiable exactly on the line.
OmegaPartials omega_partials(const ModelParams& params,
                             const ReducedState& state);

/// Time derivative of the full five-compartment system. Components sum to
/// zero analytically (constant population).
FullState full_rhs(const ModelParams& params, const FullState& state);

/// Time derivative of the reduced planar system with strain 1 held at its
/// quasi-steady level omega.
ReducedState reduced_rhs(const ModelParams& params, const ReducedState& state);

/// One classical RK4 step (no clamping, no finiteness check).
FullState rk4_step(const ModelParams& params, const FullState& state,
                   double h);
ReducedState rk4_step(const ModelParams& params, const ReducedState& state,
                      double h);

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;

    std::size_t size() const { return times.size(); }
};

using FullTrajectory = Trajectory<FullState>;
using ReducedTrajectory = Trajectory<ReducedState>;

/// Fixed-step RK4 over [t0, t1]; a final partial step lands exactly on t1.
/// Stored states have tiny negative round-off (>= -1e-12 * n_pop) clamped
/// to zero. Throws step_not_positive / nonfinite_state.
FullTrajectory integrate_full(const ModelParams& params, const FullState& x0,
                              double t0, double t1, double h);
ReducedTrajectory integrate_reduced(const ModelParams& params,
                                    const ReducedState& y0, double t0,
                                    double t1, double h);

/// New cases per 14-day window, split by strain.
struct IncidenceWindows {
    std::vector<double> original;
    std::vector<double> emerging;

    std::size_t size() const { return original.size(); }
};

/// Force-of-infection inflows of the full system integrated per 14-day
/// window by the trapezoid rule on the stored grid. The grid spacing must
/// divide 14 days; windows are counted from the trajectory start and a
/// trailing partial window is ignored.
IncidenceWindows accumulate_incidence(const ModelParams& params,
                                      const FullTrajectory& trajectory);

/// Strain-1 / strain-2 inflow rates at one reduced-system point, with S and
/// R1 reconstructed from the quasi-steady closure.
struct ReducedInflows {
    double strain1{};
    double strain2{};
};
ReducedInflows reduced_inflows(const ModelParams& params,
                               const ReducedState& state);

/// Same trapezoid windowing as accumulate_incidence, for reduced
/// trajectories.
IncidenceWindows accumulate_incidence_reduced(
    const ModelParams& params, const ReducedTrajectory& trajectory);

} // namespace twostrain
