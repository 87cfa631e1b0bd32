#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace twostrain {

enum class NullclineKind { i2_nullcline, r2_nullcline };

/// Implicit residuals whose zero sets are the nullclines. The I2 residual
/// is the I2 rate divided by I2 (valid for I2 > 0); the R2 residual is the
/// R2 rate itself.
double i2_nullcline_residual(const ModelParams& params,
                             const ReducedState& state);
double r2_nullcline_residual(const ModelParams& params,
                             const ReducedState& state);

/// R2 level of the requested nullcline at fixed I2, by bisection over
/// [0, n_pop - I2]; empty when the curve has left the trapping triangle in
/// that column.
std::optional<double> nullcline_r2(const ModelParams& params,
                                   NullclineKind kind, double i2);

struct NullclineSample {
    NullclineKind which{};
    std::vector<double> grid_i2;
    std::vector<std::optional<double>> r2; // empty entry: no root in column
    bool monotone{}; // strictly decreasing (I2) / increasing (R2) where present
};

/// Samples both nullclines over an I2 grid. Requires R1, R2, R21 > 1.
std::pair<NullclineSample, NullclineSample> sample_nullclines(
    const ModelParams& params, const std::vector<double>& grid_i2);

struct SwitchingLine {
    double threshold{}; // I2 + epsilon * R2 = threshold
    ReducedState end_a; // endpoints clipped to the trapping triangle
    ReducedState end_b;
};

/// Present only when R1 > 1.
std::optional<SwitchingLine> switching_line(const ModelParams& params);

/// Signs of the reduced derivatives: -1, 0, +1, where 0 means within the
/// steady-state residual tolerance 1e-8 * n_pop * max_rate.
std::pair<int, int> region_direction(const ModelParams& params,
                                     const ReducedState& state);

/// Divergence of the reduced field scaled by 1/I2, from the closed-form
/// omega derivatives. Requires I2 > 0.
double dulac_expression(const ModelParams& params, const ReducedState& state);

struct StabilityReport {
    double j11{}, j12{}, j21{}, j22{}; // finite-difference Jacobian
    double trace{};
    double determinant{};
    bool sign_pattern_ok{}; // [[-,-],[+,-]]
};

/// Finite-difference Jacobian checks at a steady state (residual-checked,
/// precondition_failed otherwise). The stencil must not straddle the
/// switching line; the step shrinks 10x up to 3 times before
/// on_switching_line is raised.
StabilityReport stability_sign_check(const ModelParams& params,
                                     const ReducedState& steady);

} // namespace twostrain
