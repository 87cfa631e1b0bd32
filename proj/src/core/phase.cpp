#include "core/phase.hpp"

#include <cmath>
#include <sstream>

#include "core/dynamics.hpp"
#include "core/reproduction.hpp"
#include "core/roots.hpp"

namespace twostrain {

double i2_nullcline_residual(const ModelParams& p, const ReducedState& y) {
    return p.beta2 - p.gamma2 -
           p.beta2 / p.n_pop * (omega(p, y) + y.i2 + y.r2);
}

double r2_nullcline_residual(const ModelParams& p, const ReducedState& y) {
    return p.gamma2 * y.i2 - p.sigma2 * y.r2 -
           p.beta1 / p.n_pop * (1.0 - p.epsilon) * omega(p, y) * y.r2;
}

std::optional<double> nullcline_r2(const ModelParams& p, NullclineKind kind,
                                   double i2) {
    const double hi = p.n_pop - i2;
    auto residual = [&](double r2) {
        return kind == NullclineKind::i2_nullcline
                   ? i2_nullcline_residual(p, {i2, r2})
                   : r2_nullcline_residual(p, {i2, r2});
    };
    const double at_zero = residual(0.0);
    if (at_zero == 0.0) {
        return 0.0;
    }
    if (at_zero < 0.0 || residual(hi) > 0.0) {
        return std::nullopt; // curve not inside the triangle in this column
    }
    return bisect_decreasing(residual, 0.0, hi, kBisectTolRel * p.n_pop);
}

std::pair<NullclineSample, NullclineSample> sample_nullclines(
    const ModelParams& p, const std::vector<double>& grid_i2) {
    const ReproductionSet rep = closed_form_reproduction(p);
    if (!(rep.r1 > 1.0) || !(rep.r2 > 1.0) || !(rep.r21 > 1.0)) {
        std::ostringstream os;
        os << "nullcline sampling requires R1, R2, R21 > 1; got R1 = "
           << rep.r1 << ", R2 = " << rep.r2 << ", R21 = " << rep.r21;
        raise(errc::precondition_failed, os.str());
    }
    auto sample = [&](NullclineKind kind) {
        NullclineSample s;
        s.which = kind;
        s.grid_i2 = grid_i2;
        s.r2.reserve(grid_i2.size());
        for (double i2 : grid_i2) {
            if (i2 < 0.0 || i2 > p.n_pop) {
                raise(errc::out_of_domain, "grid I2 outside the triangle");
            }
            s.r2.push_back(nullcline_r2(p, kind, i2));
        }
        s.monotone = true;
        const double sense =
            kind == NullclineKind::i2_nullcline ? -1.0 : 1.0;
        const std::optional<double>* prev = nullptr;
        for (const auto& v : s.r2) {
            if (!v) {
                continue;
            }
            if (prev && !(sense * (*v - **prev) > 0.0)) {
                s.monotone = false;
            }
            prev = &v;
        }
        return s;
    };
    return {sample(NullclineKind::i2_nullcline),
            sample(NullclineKind::r2_nullcline)};
}

std::optional<SwitchingLine> switching_line(const ModelParams& p) {
    if (!(p.beta1 > p.gamma1)) {
        return std::nullopt;
    }
    SwitchingLine line;
    line.threshold = switching_threshold(p);
    line.end_a = {line.threshold, 0.0};
    if (p.epsilon == 0.0) {
        line.end_b = {line.threshold, p.n_pop - line.threshold};
    } else {
        const double r2_axis = line.threshold / p.epsilon;
        if (r2_axis <= p.n_pop) {
            line.end_b = {0.0, r2_axis};
        } else {
            // clip against I2 + R2 = N
            const double r2 =
                (p.n_pop - line.threshold) / (1.0 - p.epsilon);
            line.end_b = {p.n_pop - r2, r2};
        }
    }
    return line;
}

std::pair<int, int> region_direction(const ModelParams& p,
                                     const ReducedState& y) {
    const ReducedState d = reduced_rhs(p, y);
    const double tol = 1e-8 * p.n_pop * max_rate(p);
    auto sign = [tol](double v) { return v > tol ? 1 : (v < -tol ? -1 : 0); };
    return {sign(d.i2), sign(d.r2)};
}

double dulac_expression(const ModelParams& p, const ReducedState& y) {
    if (!(y.i2 > 0.0)) {
        raise(errc::out_of_domain,
              "the Dulac multiplier 1/I2 requires I2 > 0");
    }
    const OmegaPartials dw = omega_partials(p, y);
    const double w = omega(p, y);
    return -p.beta2 / p.n_pop * (dw.d_i2 + 1.0) - p.sigma2 / y.i2 -
           p.beta1 * (1.0 - p.epsilon) / (p.n_pop * y.i2) *
               (dw.d_r2 * y.r2 + w);
}

StabilityReport stability_sign_check(const ModelParams& p,
                                     const ReducedState& steady) {
    const ReducedState d0 = reduced_rhs(p, steady);
    const double residual = std::max(std::abs(d0.i2), std::abs(d0.r2));
    const double tol = 1e-8 * p.n_pop * max_rate(p);
    if (residual > tol) {
        std::ostringstream os;
        os << "point is not a steady state: residual " << residual
           << " exceeds " << tol;
        raise(errc::precondition_failed, os.str());
    }

    const double threshold = switching_threshold(p);
    auto side = [&](const ReducedState& y) {
        return y.i2 + p.epsilon * y.r2 < threshold ? -1 : 1;
    };
    const int centre_side = side(steady);

    double h = 1e-5 * p.n_pop;
    for (int attempt = 0;; ++attempt) {
        const ReducedState probes[] = {
            {steady.i2 + h, steady.r2}, {steady.i2 - h, steady.r2},
            {steady.i2, steady.r2 + h}, {steady.i2, steady.r2 - h}};
        bool straddles = false;
        for (const auto& probe : probes) {
            if (side(probe) != centre_side) {
                straddles = true;
                break;
            }
        }
        if (!straddles) {
            break;
        }
        if (attempt == 3) {
            raise(errc::on_switching_line,
                  "finite-difference stencil straddles the switching line");
        }
        h *= 0.1;
    }

    const ReducedState fpi = reduced_rhs(p, {steady.i2 + h, steady.r2});
    const ReducedState fmi = reduced_rhs(p, {steady.i2 - h, steady.r2});
    const ReducedState fpr = reduced_rhs(p, {steady.i2, steady.r2 + h});
    const ReducedState fmr = reduced_rhs(p, {steady.i2, steady.r2 - h});
    StabilityReport out;
    out.j11 = (fpi.i2 - fmi.i2) / (2.0 * h);
    out.j21 = (fpi.r2 - fmi.r2) / (2.0 * h);
    out.j12 = (fpr.i2 - fmr.i2) / (2.0 * h);
    out.j22 = (fpr.r2 - fmr.r2) / (2.0 * h);
    out.trace = out.j11 + out.j22;
    out.determinant = out.j11 * out.j22 - out.j12 * out.j21;
    out.sign_pattern_ok =
        out.j11 < 0.0 && out.j12 < 0.0 && out.j21 > 0.0 && out.j22 < 0.0;
    return out;
}

} // namespace twostrain
