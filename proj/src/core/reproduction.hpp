#pragma once

#include "core/types.hpp"

namespace twostrain {

struct Mat2 {
    double a11{}, a12{}, a21{}, a22{};
};

/// Largest eigenvalue magnitude via the closed-form quadratic.
double spectral_radius_2x2(const Mat2& m);

/// Closed-form reproduction numbers:
///   R1 = beta1/gamma1, R2 = beta2/gamma2,
///   R12 = (R1/R2) * ((1-eps)beta2 + eps gamma2 + sigma2) / (gamma2+sigma2),
///   R21 = (R2/R1) * (beta1 + sigma1) / (gamma1 + sigma1),
///   R0 = max(R1, R2).
/// Throws degenerate_rates on a zero denominator.
ReproductionSet closed_form_reproduction(const ModelParams& params);

/// New-infection and transition Jacobians restricted to the two infectious
/// compartments, evaluated at a steady state of the full system (the caller
/// guarantees steadiness; it is not checked).
struct NgmPieces {
    Mat2 f_matrix;
    Mat2 v_matrix; // diag(gamma1, gamma2) for this model family
    FullState evaluated_at;
};

NgmPieces ngm_at_state(const ModelParams& params, const FullState& state);

/// F V^{-1} assembled from the pieces.
Mat2 next_generation_matrix(const NgmPieces& pieces);

/// Strain-wise 1x1 blocks F_i V_i^{-1} of the (diagonal) NGM.
double strain1_invasion_number(const NgmPieces& pieces);
double strain2_invasion_number(const NgmPieces& pieces);

} // namespace twostrain
