#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/csv.hpp"
#include "core/types.hpp"

namespace twostrain {

/// Biweekly new-case counts split into original (x) and emerging (y) strain.
struct IncidenceSeries {
    std::vector<Date> window_end; // 14 days apart
    std::vector<double> original;
    std::vector<double> emerging;

    std::size_t size() const { return window_end.size(); }
};

/// Windows are anchored to the first date of the daily series; each share
/// row must name the end of one fully covered 14-day window.
IncidenceSeries aggregate_biweekly(const CaseData& daily,
                                   const VariantShares& shares);

/// Sum of squared errors between data and per-window predictions.
double sse_objective(const IncidenceSeries& data,
                     const std::vector<double>& predicted_original,
                     const std::vector<double>& predicted_emerging);

enum class FitModel { full, reduced };

/// Free parameters of a fit. gamma is shared by both strains (the fits
/// impose gamma1 = gamma2). For the reduced model i1_0/r1_0 are derived
/// from the quasi-steady closure, never fitted.
enum class FitParam : int {
    n_pop = 0,
    beta1,
    beta2,
    gamma,
    sigma1,
    sigma2,
    epsilon,
    i1_0,
    r1_0,
    i2_0,
    r2_0,
};
inline constexpr int kFitParamCount = 11;

FitParam fit_param_from_name(const std::string& name);
const char* fit_param_name(FitParam param);

struct FitTheta {
    std::array<double, kFitParamCount> v{};

    double& operator[](FitParam p) { return v[static_cast<int>(p)]; }
    double operator[](FitParam p) const { return v[static_cast<int>(p)]; }

    ModelParams params() const;
    FullState full_initial() const;   // S by conservation
    ReducedState reduced_initial() const;
};

/// Fit configuration. The constraint set is fixed: every rate and epsilon
/// >= 0.001, sigma_i <= 0.5, 0.8 beta1 <= beta2 <= 1.25 beta1, initial
/// compartments >= 0 with their sum <= n_pop, and n_pop at least the
/// largest observed biweekly total divided by 14.
struct FitSpec {
    FitModel model = FitModel::full;
    std::vector<FitParam> free; // empty: default set for the model
    std::uint64_t rng_seed = 0;
    int budget = 2000;
    double step = 0.25;    // integration step, days; must divide 14
    double n_pop_floor = 0.0; // derived from the data by fit()
};

std::vector<FitParam> default_free_params(FitModel model);

/// Throws constraint_violated naming the first broken rule.
void check_constraints(const FitSpec& spec, const FitTheta& theta);
bool satisfies_constraints(const FitSpec& spec, const FitTheta& theta);

/// Nearest feasible point (componentwise clipping; initial compartments
/// rescaled onto the population simplex when needed).
FitTheta project_feasible(const FitSpec& spec, FitTheta theta);

struct Predictions {
    std::vector<double> original;
    std::vector<double> emerging;
};

/// Model-predicted biweekly new cases for n_windows windows, by RK4 and
/// trapezoid accumulation of the force-of-infection inflows.
Predictions predict(const FitSpec& spec, const FitTheta& theta,
                    std::size_t n_windows);

struct FitResult {
    FitTheta theta;
    double sse{};
    Predictions predictions;
    ReproductionSet reproduction;
    int iterations_used{};
    bool improved{}; // false: budget exhausted without improving on theta0
    std::vector<double> accepted_sse; // non-increasing acceptance history
};

/// Deterministic stochastic local search: damped Gauss-Newton step vs one
/// seeded log-normal coordinate perturbation per iteration, keeping the
/// better candidate only when it lowers the SSE.
FitResult fit(const FitSpec& spec, const IncidenceSeries& data,
              const FitTheta& theta0);

/// Strain-1 levels implied by the quasi-steady closure at a reduced state.
struct QuasiSteadyLevels {
    double i1{};
    double r1{};
};
QuasiSteadyLevels quasi_steady_strain1(const ModelParams& params,
                                       const ReducedState& state);

} // namespace twostrain
