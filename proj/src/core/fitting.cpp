#include "core/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "core/dynamics.hpp"
#include "core/reproduction.hpp"

namespace twostrain {

namespace {

constexpr double kParamFloor = 0.001; // every fitted rate and epsilon
constexpr double kSigmaCap = 0.5;
constexpr double kBetaRatioLo = 0.8;
constexpr double kBetaRatioHi = 1.25;

bool is_rate_like(FitParam p) {
    switch (p) {
    case FitParam::beta1:
    case FitParam::beta2:
    case FitParam::gamma:
    case FitParam::sigma1:
    case FitParam::sigma2:
    case FitParam::epsilon:
        return true;
    default:
        return false;
    }
}

/// Characteristic magnitude used for finite-difference steps.
double param_scale(FitParam p) { return is_rate_like(p) ? 1e-3 : 1.0; }

} // namespace

IncidenceSeries aggregate_biweekly(const CaseData& daily,
                                   const VariantShares& shares) {
    if (daily.size() == 0) {
        raise(errc::incomplete_window, "daily case series is empty");
    }
    IncidenceSeries out;
    const Date anchor = daily.dates.front();
    for (std::size_t w = 0; w < shares.size(); ++w) {
        const Date end = shares.window_end[w];
        const int offset = end - anchor; // end is day 14k-1 of the series
        if (offset < 13 || (offset - 13) % 14 != 0) {
            std::ostringstream os;
            os << "window ending " << format_date(end)
               << " is not anchored to the first data date "
               << format_date(anchor);
            raise(errc::incomplete_window, os.str());
        }
        const Date begin = end + (-13);
        const auto it = std::lower_bound(daily.dates.begin(),
                                         daily.dates.end(), begin);
        const auto index =
            static_cast<std::size_t>(it - daily.dates.begin());
        double total = 0.0;
        for (int d = 0; d < 14; ++d) {
            const std::size_t k = index + static_cast<std::size_t>(d);
            if (k >= daily.size() || !(daily.dates[k] == begin + d)) {
                std::ostringstream os;
                os << "window ending " << format_date(end)
                   << " is not fully covered by the daily series";
                raise(errc::incomplete_window, os.str());
            }
            total += daily.counts[k];
        }
        const double share = shares.share[w];
        if (!(share >= 0.0) || !(share <= 1.0)) {
            raise(errc::share_out_of_range, "share outside [0, 1]");
        }
        out.window_end.push_back(end);
        out.emerging.push_back(total * share);
        out.original.push_back(total * (1.0 - share));
    }
    return out;
}

double sse_objective(const IncidenceSeries& data,
                     const std::vector<double>& predicted_original,
                     const std::vector<double>& predicted_emerging) {
    if (predicted_original.size() != data.size() ||
        predicted_emerging.size() != data.size()) {
        raise(errc::length_mismatch,
              "predictions and data have different window counts");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double dx = data.original[i] - predicted_original[i];
        const double dy = data.emerging[i] - predicted_emerging[i];
        acc += dx * dx + dy * dy;
    }
    return acc;
}

FitParam fit_param_from_name(const std::string& name) {
    static const std::pair<const char*, FitParam> table[] = {
        {"n_pop", FitParam::n_pop},     {"beta1", FitParam::beta1},
        {"beta2", FitParam::beta2},     {"gamma", FitParam::gamma},
        {"sigma1", FitParam::sigma1},   {"sigma2", FitParam::sigma2},
        {"epsilon", FitParam::epsilon}, {"i1_0", FitParam::i1_0},
        {"r1_0", FitParam::r1_0},       {"i2_0", FitParam::i2_0},
        {"r2_0", FitParam::r2_0},
    };
    for (const auto& [key, value] : table) {
        if (name == key) {
            return value;
        }
    }
    raise(errc::invalid_argument, "unknown fit parameter '" + name + "'");
}

const char* fit_param_name(FitParam param) {
    switch (param) {
    case FitParam::n_pop: return "n_pop";
    case FitParam::beta1: return "beta1";
    case FitParam::beta2: return "beta2";
    case FitParam::gamma: return "gamma";
    case FitParam::sigma1: return "sigma1";
    case FitParam::sigma2: return "sigma2";
    case FitParam::epsilon: return "epsilon";
    case FitParam::i1_0: return "i1_0";
    case FitParam::r1_0: return "r1_0";
    case FitParam::i2_0: return "i2_0";
    case FitParam::r2_0: return "r2_0";
    }
    return "unknown";
}

ModelParams FitTheta::params() const {
    ModelParams p;
    p.n_pop = (*this)[FitParam::n_pop];
    p.beta1 = (*this)[FitParam::beta1];
    p.beta2 = (*this)[FitParam::beta2];
    p.gamma1 = (*this)[FitParam::gamma];
    p.gamma2 = (*this)[FitParam::gamma];
    p.sigma1 = (*this)[FitParam::sigma1];
    p.sigma2 = (*this)[FitParam::sigma2];
    p.epsilon = (*this)[FitParam::epsilon];
    return p;
}

FullState FitTheta::full_initial() const {
    FullState x;
    x.i1 = (*this)[FitParam::i1_0];
    x.r1 = (*this)[FitParam::r1_0];
    x.i2 = (*this)[FitParam::i2_0];
    x.r2 = (*this)[FitParam::r2_0];
    x.s = (*this)[FitParam::n_pop] - x.i1 - x.r1 - x.i2 - x.r2;
    return x;
}

ReducedState FitTheta::reduced_initial() const {
    return {(*this)[FitParam::i2_0], (*this)[FitParam::r2_0]};
}

std::vector<FitParam> default_free_params(FitModel model) {
    std::vector<FitParam> out = {
        FitParam::n_pop,  FitParam::beta1,   FitParam::beta2,
        FitParam::gamma,  FitParam::sigma1,  FitParam::sigma2,
        FitParam::epsilon};
    if (model == FitModel::full) {
        out.push_back(FitParam::i1_0);
        out.push_back(FitParam::r1_0);
    }
    out.push_back(FitParam::i2_0);
    out.push_back(FitParam::r2_0);
    return out;
}

namespace {

[[noreturn]] void constraint_fail(const std::string& what) {
    raise(errc::constraint_violated, what);
}

} // namespace

void check_constraints(const FitSpec& spec, const FitTheta& theta) {
    const double n = theta[FitParam::n_pop];
    for (FitParam p : {FitParam::beta1, FitParam::beta2, FitParam::gamma,
                       FitParam::sigma1, FitParam::sigma2,
                       FitParam::epsilon}) {
        if (!(theta[p] >= kParamFloor)) {
            std::ostringstream os;
            os << fit_param_name(p) << " = " << theta[p] << " below "
               << kParamFloor;
            constraint_fail(os.str());
        }
    }
    if (!(theta[FitParam::epsilon] <= 1.0)) {
        constraint_fail("epsilon above 1");
    }
    for (FitParam p : {FitParam::sigma1, FitParam::sigma2}) {
        if (!(theta[p] <= kSigmaCap)) {
            std::ostringstream os;
            os << fit_param_name(p) << " = " << theta[p] << " above "
               << kSigmaCap;
            constraint_fail(os.str());
        }
    }
    const double b1 = theta[FitParam::beta1];
    const double b2 = theta[FitParam::beta2];
    if (!(b2 >= kBetaRatioLo * b1) || !(b2 <= kBetaRatioHi * b1)) {
        std::ostringstream os;
        os << "beta2 = " << b2 << " outside [" << kBetaRatioLo * b1 << ", "
           << kBetaRatioHi * b1 << "] from beta1 = " << b1;
        constraint_fail(os.str());
    }
    if (!(n >= std::max(spec.n_pop_floor, kParamFloor))) {
        std::ostringstream os;
        os << "n_pop = " << n << " below the data floor "
           << std::max(spec.n_pop_floor, kParamFloor);
        constraint_fail(os.str());
    }
    double state_sum = 0.0;
    const auto states = spec.model == FitModel::full
                            ? std::vector<FitParam>{FitParam::i1_0,
                                                    FitParam::r1_0,
                                                    FitParam::i2_0,
                                                    FitParam::r2_0}
                            : std::vector<FitParam>{FitParam::i2_0,
                                                    FitParam::r2_0};
    for (FitParam p : states) {
        if (!(theta[p] >= 0.0)) {
            std::ostringstream os;
            os << fit_param_name(p) << " = " << theta[p] << " negative";
            constraint_fail(os.str());
        }
        state_sum += theta[p];
    }
    if (!(state_sum <= n)) {
        std::ostringstream os;
        os << "initial compartments sum to " << state_sum
           << " which exceeds n_pop = " << n;
        constraint_fail(os.str());
    }
}

bool satisfies_constraints(const FitSpec& spec, const FitTheta& theta) {
    try {
        check_constraints(spec, theta);
        return true;
    } catch (const ModelError&) {
        return false;
    }
}

FitTheta project_feasible(const FitSpec& spec, FitTheta theta) {
    auto clamp = [&](FitParam p, double lo, double hi) {
        theta[p] = std::min(std::max(theta[p], lo), hi);
    };
    const double huge = std::numeric_limits<double>::max();
    clamp(FitParam::n_pop, std::max(spec.n_pop_floor, kParamFloor), huge);
    clamp(FitParam::gamma, kParamFloor, huge);
    clamp(FitParam::beta1, kParamFloor, huge);
    clamp(FitParam::beta2,
          std::max(kParamFloor, kBetaRatioLo * theta[FitParam::beta1]),
          kBetaRatioHi * theta[FitParam::beta1]);
    clamp(FitParam::sigma1, kParamFloor, kSigmaCap);
    clamp(FitParam::sigma2, kParamFloor, kSigmaCap);
    clamp(FitParam::epsilon, kParamFloor, 1.0);
    const auto states = spec.model == FitModel::full
                            ? std::vector<FitParam>{FitParam::i1_0,
                                                    FitParam::r1_0,
                                                    FitParam::i2_0,
                                                    FitParam::r2_0}
                            : std::vector<FitParam>{FitParam::i2_0,
                                                    FitParam::r2_0};
    for (FitParam p : states) {
        theta[p] = std::max(theta[p], 0.0);
    }
    const double n = theta[FitParam::n_pop];
    // rescale onto the simplex; repeat in case rounding leaves the sum a
    // few ulps above n
    for (int attempt = 0; attempt < 4; ++attempt) {
        double state_sum = 0.0;
        for (FitParam p : states) {
            state_sum += theta[p];
        }
        if (state_sum <= n) {
            break;
        }
        const double scale =
            n / state_sum * (attempt == 0 ? 1.0 : 1.0 - 1e-14);
        for (FitParam p : states) {
            theta[p] *= scale;
        }
    }
    return theta;
}

Predictions predict(const FitSpec& spec, const FitTheta& theta,
                    std::size_t n_windows) {
    const ModelParams p = validate_params(theta.params());
    const double t1 = 14.0 * static_cast<double>(n_windows);
    const double per_window = 14.0 / spec.step;
    if (std::abs(per_window - std::llround(per_window)) >
        1e-9 * per_window) {
        raise(errc::window_misaligned,
              "fit integration step must divide 14 days");
    }
    IncidenceWindows windows;
    try {
        if (spec.model == FitModel::full) {
            const FullTrajectory traj =
                integrate_full(p, theta.full_initial(), 0.0, t1, spec.step);
            windows = accumulate_incidence(p, traj);
        } else {
            const ReducedTrajectory traj = integrate_reduced(
                p, theta.reduced_initial(), 0.0, t1, spec.step);
            windows = accumulate_incidence_reduced(p, traj);
        }
    } catch (const ModelError& e) {
        if (e.code() == errc::nonfinite_state) {
            raise(errc::integration_failed, e.what());
        }
        throw;
    }
    if (windows.size() < n_windows) {
        raise(errc::internal_error, "incidence accumulation lost windows");
    }
    Predictions out;
    out.original.assign(windows.original.begin(),
                        windows.original.begin() +
                            static_cast<std::ptrdiff_t>(n_windows));
    out.emerging.assign(windows.emerging.begin(),
                        windows.emerging.begin() +
                            static_cast<std::ptrdiff_t>(n_windows));
    return out;
}

QuasiSteadyLevels quasi_steady_strain1(const ModelParams& p,
                                       const ReducedState& y) {
    QuasiSteadyLevels out;
    out.i1 = omega(p, y);
    out.r1 = out.i1 > 0.0
                 ? p.n_pop * p.gamma1 * out.i1 /
                       (p.n_pop * p.sigma1 + p.beta2 * y.i2)
                 : 0.0;
    return out;
}

namespace {

/// Uniform in [0,1) from the top 53 bits; keeps the stream portable.
double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Box-Muller, pinned arithmetic (std::normal_distribution is
/// implementation-defined).
double standard_normal(std::mt19937_64& gen) {
    const double u1 = std::max(uniform01(gen),
                               std::numeric_limits<double>::min());
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

} // namespace

FitResult fit(const FitSpec& spec_in, const IncidenceSeries& data,
              const FitTheta& theta0) {
    FitSpec spec = spec_in;
    if (spec.free.empty()) {
        spec.free = default_free_params(spec.model);
    }
    if (spec.model == FitModel::reduced) {
        for (FitParam p : spec.free) {
            if (p == FitParam::i1_0 || p == FitParam::r1_0) {
                raise(errc::constraint_violated,
                      "i1_0/r1_0 are derived, not fitted, in the reduced "
                      "model");
            }
        }
    }
    if (spec.budget < 0) {
        raise(errc::invalid_argument, "iteration budget must be >= 0");
    }
    // keep the largest observed biweekly total representable as prevalence
    double floor = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        floor = std::max(floor, (data.original[i] + data.emerging[i]) / 14.0);
    }
    spec.n_pop_floor = std::max(spec.n_pop_floor, floor);

    check_constraints(spec, theta0); // infeasible start: fail before any run

    const std::size_t n = data.size();
    auto objective = [&](const FitTheta& theta) {
        const Predictions pred = predict(spec, theta, n);
        return std::make_pair(sse_objective(data, pred.original,
                                            pred.emerging),
                              pred);
    };
    auto guarded_sse = [&](const FitTheta& theta) {
        try {
            return objective(theta).first;
        } catch (const ModelError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const auto& free = spec.free;
    const auto k = free.size();

    FitTheta current = theta0;
    double current_sse = objective(current).first;
    FitTheta best = current;
    double best_sse = current_sse;
    const double initial_sse = current_sse;

    std::mt19937_64 gen(spec.rng_seed);
    double damping = 1.0;
    int rejections = 0;
    int iterations = 0;
    std::vector<double> accepted = {current_sse};

    Eigen::MatrixXd jac(2 * n, k);
    Eigen::VectorXd res(2 * n);

    for (; iterations < spec.budget && current_sse > 0.0; ++iterations) {
        // residual vector at the current point
        const Predictions pred = predict(spec, current, n);
        for (std::size_t i = 0; i < n; ++i) {
            res(static_cast<Eigen::Index>(i)) =
                pred.original[i] - data.original[i];
            res(static_cast<Eigen::Index>(n + i)) =
                pred.emerging[i] - data.emerging[i];
        }
        // forward-difference Jacobian; probes stay feasible by flipping the
        // step direction at an active bound
        for (std::size_t j = 0; j < k; ++j) {
            const FitParam pj = free[j];
            const double base = current[pj];
            double h = 1e-4 * std::max(std::abs(base), param_scale(pj));
            FitTheta probe = current;
            probe[pj] = base + h;
            if (!satisfies_constraints(spec, probe)) {
                h = -h;
                probe[pj] = base + h;
            }
            bool ok = satisfies_constraints(spec, probe);
            if (ok) {
                try {
                    const Predictions pp = predict(spec, probe, n);
                    for (std::size_t i = 0; i < n; ++i) {
                        jac(static_cast<Eigen::Index>(i),
                            static_cast<Eigen::Index>(j)) =
                            (pp.original[i] - pred.original[i]) / h;
                        jac(static_cast<Eigen::Index>(n + i),
                            static_cast<Eigen::Index>(j)) =
                            (pp.emerging[i] - pred.emerging[i]) / h;
                    }
                } catch (const ModelError&) {
                    ok = false;
                }
            }
            if (!ok) {
                jac.col(static_cast<Eigen::Index>(j)).setZero();
            }
        }

        // damped Gauss-Newton candidate; the damping enters the normal
        // equations (Levenberg style) so halving it navigates curved
        // residual valleys instead of just shortening a bad direction
        Eigen::MatrixXd normal = jac.transpose() * jac;
        const double lambda = 1e-3 * (1.0 / damping - 1.0);
        const double floor_ridge =
            1e-12 * std::max(normal.diagonal().maxCoeff(), 1e-300);
        normal.diagonal() +=
            (lambda * normal.diagonal().array() + floor_ridge).matrix();
        const Eigen::VectorXd delta =
            normal.ldlt().solve(-jac.transpose() * res);
        FitTheta newton = current;
        for (std::size_t j = 0; j < k; ++j) {
            newton[free[j]] += delta(static_cast<Eigen::Index>(j));
        }
        newton = project_feasible(spec, newton);

        // seeded log-normal single-coordinate proposal
        const auto pick = static_cast<std::size_t>(gen() % k);
        const double factor = std::exp(0.1 * standard_normal(gen));
        FitTheta jitter = current;
        jitter[free[pick]] *= factor;
        jitter = project_feasible(spec, jitter);

        const double newton_sse = guarded_sse(newton);
        const double jitter_sse = guarded_sse(jitter);
        const bool newton_wins = newton_sse <= jitter_sse;
        const FitTheta& candidate = newton_wins ? newton : jitter;
        const double candidate_sse = newton_wins ? newton_sse : jitter_sse;

        if (candidate_sse < current_sse) {
            current = candidate;
            current_sse = candidate_sse;
            accepted.push_back(current_sse);
            damping = std::min(1.0, 2.0 * damping);
            rejections = 0;
            if (current_sse < best_sse) {
                best = current;
                best_sse = current_sse;
            }
        } else {
            damping *= 0.5;
            if (++rejections >= 50) {
                current = best;
                current_sse = best_sse;
                damping = 1.0;
                rejections = 0;
            }
        }
    }

    FitResult out;
    out.theta = best;
    const auto [sse, predictions] = objective(best);
    out.sse = sse;
    out.predictions = predictions;
    out.reproduction = closed_form_reproduction(best.params());
    out.iterations_used = iterations;
    out.improved = best_sse < initial_sse || initial_sse == 0.0;
    out.accepted_sse = std::move(accepted);
    return out;
}

} // namespace twostrain
