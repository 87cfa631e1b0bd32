#pragma once

#include <array>
#include <optional>

#include "core/types.hpp"

namespace twostrain {

enum class SteadyKind {
    disease_free,
    original_only,
    emerging_only,
    coexistence,
};

const char* steady_kind_name(SteadyKind kind);

struct SteadyStateReport {
    SteadyKind kind{};
    FullState state;
    bool physical{};
    double residual{}; // max |full RHS component| at the state
};

/// x0, x1, x2 in closed form. x1 is physical iff beta1 > gamma1, x2 iff
/// beta2 > gamma2; both are reported either way.
std::array<SteadyStateReport, 3> boundary_steady_states(
    const ModelParams& params);

/// The curves of the coexistence construction, all functions of I1 on
/// [0, N(1 - 1/R2)): phi/psi give the strain-2 steady components, f/g are
/// the two R1 expressions whose crossing is the coexistence state.
struct CoexistenceCurves {
    double phi{};
    double psi{};
    double f{};
    double g{};
};

/// Throws out_of_domain when i1 is outside [0, N(1 - 1/R2)).
CoexistenceCurves coexistence_curves(const ModelParams& params, double i1);

enum class ThresholdId { r1, r2, r12, r21 };

const char* threshold_name(ThresholdId id);

struct CoexistenceOutcome {
    std::optional<SteadyStateReport> state;     // set iff coexistence exists
    std::optional<ThresholdId> failing;         // set iff it does not
};

/// Coexistence steady state of the full model by bisection on f - g.
/// Exists iff min{R1, R2, R12, R21} > 1 (threshold equalities count as
/// absent); throws bisection_stagnated if the guaranteed bracket is not
/// observed numerically.
CoexistenceOutcome solve_coexistence_full(const ModelParams& params);

enum class ReducedRegime { coexistence, emerging_only };

const char* regime_name(ReducedRegime regime);

struct ReducedSteadyState {
    ReducedState state;
    ReducedRegime regime{};
    /// The regime split is proven only for epsilon in {0, 1}; interior
    /// epsilon results are conjectural.
    bool regime_conjectured{};
    double residual{}; // max |reduced RHS component|
};

/// Unique nullcline intersection of the reduced system in the interior of
/// the trapping triangle. Requires R1, R2, R21 > 1 (precondition_failed
/// otherwise).
ReducedSteadyState solve_reduced_steady_state(const ModelParams& params);

} // namespace twostrain
