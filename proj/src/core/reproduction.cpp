#include "core/reproduction.hpp"

#include <algorithm>
#include <cmath>

namespace twostrain {

double spectral_radius_2x2(const Mat2& m) {
    const double trace = m.a11 + m.a22;
    const double det = m.a11 * m.a22 - m.a12 * m.a21;
    const double disc = trace * trace - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return std::max(std::abs(0.5 * (trace + root)),
                        std::abs(0.5 * (trace - root)));
    }
    // complex pair: |lambda|^2 = det
    return std::sqrt(det);
}

ReproductionSet closed_form_reproduction(const ModelParams& p) {
    if (p.gamma1 == 0.0 || p.gamma2 == 0.0) {
        raise(errc::degenerate_rates, "gamma1 and gamma2 must be nonzero");
    }
    if (p.gamma1 + p.sigma1 == 0.0 || p.gamma2 + p.sigma2 == 0.0) {
        raise(errc::degenerate_rates,
              "gamma_i + sigma_i must be nonzero for the invasion numbers");
    }
    ReproductionSet out;
    out.r1 = p.beta1 / p.gamma1;
    out.r2 = p.beta2 / p.gamma2;
    out.r12 = (out.r1 / out.r2) *
              (((1.0 - p.epsilon) * p.beta2 + p.epsilon * p.gamma2 +
                p.sigma2) /
               (p.gamma2 + p.sigma2));
    out.r21 = (out.r2 / out.r1) * ((p.beta1 + p.sigma1) /
                                   (p.gamma1 + p.sigma1));
    out.r0 = std::max(out.r1, out.r2);
    out.r12_target_physical = out.r2 > 1.0; // x2 physical iff beta2 > gamma2
    out.r21_target_physical = out.r1 > 1.0;
    return out;
}

NgmPieces ngm_at_state(const ModelParams& p, const FullState& x) {
    NgmPieces out;
    out.f_matrix = {p.beta1 / p.n_pop * (x.s + (1.0 - p.epsilon) * x.r2), 0.0,
                    0.0, p.beta2 / p.n_pop * (x.s + x.r1)};
    out.v_matrix = {p.gamma1, 0.0, 0.0, p.gamma2};
    out.evaluated_at = x;
    return out;
}

Mat2 next_generation_matrix(const NgmPieces& pieces) {
    return {pieces.f_matrix.a11 / pieces.v_matrix.a11, 0.0, 0.0,
            pieces.f_matrix.a22 / pieces.v_matrix.a22};
}

double strain1_invasion_number(const NgmPieces& pieces) {
    return pieces.f_matrix.a11 / pieces.v_matrix.a11;
}

double strain2_invasion_number(const NgmPieces& pieces) {
    return pieces.f_matrix.a22 / pieces.v_matrix.a22;
}

} // namespace twostrain
