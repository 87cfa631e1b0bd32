#include "core/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/dynamics.hpp"
#include "core/phase.hpp"
#include "core/reproduction.hpp"
#include "core/roots.hpp"

namespace twostrain {

const char* steady_kind_name(SteadyKind kind) {
    switch (kind) {
    case SteadyKind::disease_free: return "disease_free";
    case SteadyKind::original_only: return "original_only";
    case SteadyKind::emerging_only: return "emerging_only";
    case SteadyKind::coexistence: return "coexistence";
    }
    return "unknown";
}

const char* threshold_name(ThresholdId id) {
    switch (id) {
    case ThresholdId::r1: return "r1";
    case ThresholdId::r2: return "r2";
    case ThresholdId::r12: return "r12";
    case ThresholdId::r21: return "r21";
    }
    return "unknown";
}

const char* regime_name(ReducedRegime regime) {
    return regime == ReducedRegime::coexistence ? "coexistence"
                                                : "emerging_only";
}

namespace {

double full_residual(const ModelParams& p, const FullState& x) {
    const FullState d = full_rhs(p, x);
    return std::max({std::abs(d.s), std::abs(d.i1), std::abs(d.r1),
                     std::abs(d.i2), std::abs(d.r2)});
}

SteadyStateReport make_report(const ModelParams& p, SteadyKind kind,
                              const FullState& x) {
    SteadyStateReport out;
    out.kind = kind;
    out.state = x;
    out.physical = x.s >= 0.0 && x.i1 >= 0.0 && x.r1 >= 0.0 && x.i2 >= 0.0 &&
                   x.r2 >= 0.0;
    out.residual = full_residual(p, x);
    return out;
}

CoexistenceCurves curves_unchecked(const ModelParams& p, double i1) {
    const double n = p.n_pop;
    const double ce = 1.0 - p.epsilon;
    const double excess = n * (p.beta2 - p.gamma2) - p.beta2 * i1;
    const double pool = p.beta1 * ce * i1 + n * p.sigma2;
    const double scale = p.beta2 * (p.beta1 * ce * i1 + n * (p.gamma2 + p.sigma2));
    CoexistenceCurves out;
    out.phi = excess * pool / scale;
    out.psi = n * p.gamma2 * excess / scale;
    out.f = n - i1 - out.phi - p.epsilon * out.psi - n * p.gamma1 / p.beta1;
    out.g = n * p.gamma1 * i1 / (n * p.sigma1 + p.beta2 * out.phi);
    return out;
}

} // namespace

std::array<SteadyStateReport, 3> boundary_steady_states(
    const ModelParams& p) {
    const double n = p.n_pop;
    const FullState x0{n, 0.0, 0.0, 0.0, 0.0};
    const FullState x1{n * p.gamma1 / p.beta1,
                       n * p.sigma1 * (p.beta1 - p.gamma1) /
                           (p.beta1 * (p.gamma1 + p.sigma1)),
                       n * p.gamma1 * (p.beta1 - p.gamma1) /
                           (p.beta1 * (p.gamma1 + p.sigma1)),
                       0.0, 0.0};
    const FullState x2{n * p.gamma2 / p.beta2, 0.0, 0.0,
                       n * p.sigma2 * (p.beta2 - p.gamma2) /
                           (p.beta2 * (p.gamma2 + p.sigma2)),
                       n * p.gamma2 * (p.beta2 - p.gamma2) /
                           (p.beta2 * (p.gamma2 + p.sigma2))};
    std::array<SteadyStateReport, 3> out = {
        make_report(p, SteadyKind::disease_free, x0),
        make_report(p, SteadyKind::original_only, x1),
        make_report(p, SteadyKind::emerging_only, x2),
    };
    // the physical flags follow the strict transmission thresholds, not the
    // sign scan (beta_i == gamma_i collapses x_i onto x0)
    out[1].physical = p.beta1 > p.gamma1;
    out[2].physical = p.beta2 > p.gamma2;
    // beta_i = 0 makes x_i ill-defined; report it non-physical with x0's data
    if (p.beta1 == 0.0) {
        out[1] = make_report(p, SteadyKind::original_only, x0);
        out[1].physical = false;
    }
    if (p.beta2 == 0.0) {
        out[2] = make_report(p, SteadyKind::emerging_only, x0);
        out[2].physical = false;
    }
    return out;
}

CoexistenceCurves coexistence_curves(const ModelParams& p, double i1) {
    const ReproductionSet rep = closed_form_reproduction(p);
    const double hi = p.n_pop * (1.0 - 1.0 / rep.r2);
    if (!(i1 >= 0.0) || !(i1 < hi)) {
        std::ostringstream os;
        os << "I1 = " << i1 << " outside the curve domain [0, " << hi << ")";
        raise(errc::out_of_domain, os.str());
    }
    return curves_unchecked(p, i1);
}

CoexistenceOutcome solve_coexistence_full(const ModelParams& p) {
    const ReproductionSet rep = closed_form_reproduction(p);
    CoexistenceOutcome out;
    // name the smallest failing threshold (ties resolved in index order)
    const std::pair<double, ThresholdId> th[] = {
        {rep.r1, ThresholdId::r1},
        {rep.r2, ThresholdId::r2},
        {rep.r12, ThresholdId::r12},
        {rep.r21, ThresholdId::r21},
    };
    const auto* worst = &th[0];
    for (const auto& t : th) {
        if (t.first < worst->first) {
            worst = &t;
        }
    }
    if (!(worst->first > 1.0)) {
        out.failing = worst->second;
        return out;
    }

    const double hi = p.n_pop * (1.0 - 1.0 / rep.r2);
    auto gap = [&](double i1) {
        const CoexistenceCurves c = curves_unchecked(p, i1);
        return c.f - c.g;
    };
    // f(0) > g(0) = 0 iff R12 > 1 and g(I1*) > f(I1*) iff R21 > 1, so the
    // thresholds guarantee this bracket
    if (!(gap(0.0) > 0.0) || !(gap(hi) < 0.0)) {
        raise(errc::bisection_stagnated,
              "coexistence bracket not found although all thresholds "
              "exceed 1");
    }
    const double i1 = bisect_decreasing(gap, 0.0, hi, kBisectTolRel * p.n_pop);
    const CoexistenceCurves c = curves_unchecked(p, i1);
    FullState x;
    x.i1 = i1;
    x.i2 = c.phi;
    x.r2 = c.psi;
    x.r1 = c.g;
    x.s = p.n_pop - x.i1 - x.r1 - x.i2 - x.r2;
    out.state = make_report(p, SteadyKind::coexistence, x);
    return out;
}

ReducedSteadyState solve_reduced_steady_state(const ModelParams& p) {
    const ReproductionSet rep = closed_form_reproduction(p);
    if (!(rep.r1 > 1.0) || !(rep.r2 > 1.0) || !(rep.r21 > 1.0)) {
        std::ostringstream os;
        os << "requires R1, R2, R21 > 1; got R1 = " << rep.r1
           << ", R2 = " << rep.r2 << ", R21 = " << rep.r21;
        raise(errc::precondition_failed, os.str());
    }
    const double n = p.n_pop;
    const double xtol = kBisectTolRel * n;

    // I2-intercept of the I2-nullcline brackets every admissible column
    auto f_floor = [&](double i2) {
        return i2_nullcline_residual(p, {i2, 0.0});
    };
    if (!(f_floor(0.0) > 0.0)) {
        raise(errc::bisection_stagnated,
              "I2-nullcline has no positive I2-intercept despite R21 > 1");
    }
    const double i2_cap = bisect_decreasing(f_floor, 0.0, n, xtol);

    // signed vertical gap between the two nullclines at fixed I2
    auto gap = [&](double i2) {
        const double on_f = nullcline_r2(p, NullclineKind::i2_nullcline, i2)
                                .value_or(0.0);
        // the R2-nullcline exiting the triangle counts as "above"
        const double on_g = nullcline_r2(p, NullclineKind::r2_nullcline, i2)
                                .value_or(n - i2);
        return on_f - on_g;
    };
    double lo = std::min(xtol, 0.5 * i2_cap);
    double hi = i2_cap - std::min(xtol, 0.5 * i2_cap);
    if (!(gap(lo) > 0.0) || !(gap(hi) < 0.0)) {
        raise(errc::bisection_stagnated,
              "nullcline gap does not change sign inside the trapping "
              "region");
    }
    const double i2 = bisect_decreasing(gap, lo, hi, xtol);
    ReducedSteadyState out;
    out.state.i2 = i2;
    out.state.r2 =
        nullcline_r2(p, NullclineKind::i2_nullcline, i2).value_or(0.0);
    const ReducedState d = reduced_rhs(p, out.state);
    out.residual = std::max(std::abs(d.i2), std::abs(d.r2));
    out.regime = out.state.i2 + p.epsilon * out.state.r2 <
                         switching_threshold(p)
                     ? ReducedRegime::coexistence
                     : ReducedRegime::emerging_only;
    out.regime_conjectured = p.epsilon > 0.0 && p.epsilon < 1.0;
    return out;
}

} // namespace twostrain
