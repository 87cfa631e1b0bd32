#include "core/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <type_traits>
#include <utility>

namespace twostrain {

double switching_threshold(const ModelParams& p) {
    return p.n_pop * (1.0 - p.gamma1 / p.beta1);
}

double omega(const ModelParams& p, const ReducedState& y) {
    // branch-free piecewise form: the positive part of the distance to the
    // switching line carries the whole case split (including beta1 <=
    // gamma1, where the threshold is nonpositive or -inf)
    const double load = y.i2 + p.epsilon * y.r2;
    const double slack = std::max(switching_threshold(p) - load, 0.0);
    const double n = p.n_pop;
    const double pool = p.beta2 * y.i2 + n * p.sigma1;
    const double scale = p.beta2 * y.i2 + n * (p.gamma1 + p.sigma1);
    return slack * pool / scale;
}

OmegaPartials omega_partials(const ModelParams& p, const ReducedState& y) {
    if (p.beta1 <= p.gamma1 ||
        y.i2 + p.epsilon * y.r2 >= switching_threshold(p)) {
        return {0.0, 0.0};
    }
    const double n = p.n_pop;
    const double pool = p.beta2 * y.i2 + n * p.sigma1;
    const double scale = p.beta2 * y.i2 + n * (p.gamma1 + p.sigma1);
    const double w = omega(p, y);
    OmegaPartials out;
    out.d_i2 = n * p.gamma1 * (1.0 + p.beta2 * w / pool) / scale - 1.0;
    out.d_r2 = -p.epsilon * pool / scale;
    return out;
}

FullState full_rhs(const ModelParams& p, const FullState& x) {
    const double n = p.n_pop;
    const double foi1 = p.beta1 / n * x.i1 * (x.s + (1.0 - p.epsilon) * x.r2);
    const double foi2 = p.beta2 / n * x.i2 * (x.s + x.r1);
    FullState d;
    d.s = -x.s / n * (p.beta1 * x.i1 + p.beta2 * x.i2) + p.sigma1 * x.r1 +
          p.sigma2 * x.r2;
    d.i1 = foi1 - p.gamma1 * x.i1;
    d.r1 = p.gamma1 * x.i1 - p.sigma1 * x.r1 - p.beta2 / n * x.r1 * x.i2;
    d.i2 = foi2 - p.gamma2 * x.i2;
    d.r2 = p.gamma2 * x.i2 - p.sigma2 * x.r2 -
           p.beta1 / n * (1.0 - p.epsilon) * x.r2 * x.i1;
    return d;
}

ReducedState reduced_rhs(const ModelParams& p, const ReducedState& y) {
    const double n = p.n_pop;
    const double w = omega(p, y);
    ReducedState d;
    d.i2 = p.beta2 / n * (n - w - y.i2 - y.r2) * y.i2 - p.gamma2 * y.i2;
    d.r2 = p.gamma2 * y.i2 - p.sigma2 * y.r2 -
           p.beta1 / n * (1.0 - p.epsilon) * w * y.r2;
    return d;
}

namespace {

template <class State>
State rk4_step_impl(const ModelParams& p, const State& x, double h) {
    auto rhs = [&](const State& s) {
        if constexpr (std::is_same_v<State, FullState>) {
            return full_rhs(p, s);
        } else {
            return reduced_rhs(p, s);
        }
    };
    const State k1 = rhs(x);
    const State k2 = rhs(x + (0.5 * h) * k1);
    const State k3 = rhs(x + (0.5 * h) * k2);
    const State k4 = rhs(x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline void clamp_component(double& value, double floor) {
    if (value < 0.0 && value >= floor) {
        value = 0.0;
    }
}

inline void clamp_state(FullState& x, double floor) {
    clamp_component(x.s, floor);
    clamp_component(x.i1, floor);
    clamp_component(x.r1, floor);
    clamp_component(x.i2, floor);
    clamp_component(x.r2, floor);
}

inline void clamp_state(ReducedState& y, double floor) {
    clamp_component(y.i2, floor);
    clamp_component(y.r2, floor);
}

inline bool finite_state(const FullState& x) {
    return std::isfinite(x.s) && std::isfinite(x.i1) && std::isfinite(x.r1) &&
           std::isfinite(x.i2) && std::isfinite(x.r2);
}

inline bool finite_state(const ReducedState& y) {
    return std::isfinite(y.i2) && std::isfinite(y.r2);
}

template <class State>
Trajectory<State> integrate_impl(const ModelParams& p, const State& x0,
                                 double t0, double t1, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        std::ostringstream os;
        os << "integration step " << h << " must be positive";
        raise(errc::step_not_positive, os.str());
    }
    if (!(t1 > t0)) {
        raise(errc::step_not_positive, "time span must satisfy t1 > t0");
    }
    const double span = t1 - t0;
    // whole steps of size h, then one shortened step onto t1
    auto whole = static_cast<std::size_t>(std::floor(span / h + 1e-9));
    double tail = span - static_cast<double>(whole) * h;
    if (tail <= 1e-9 * h) {
        tail = 0.0;
    }
    const double clamp_floor = -1e-12 * p.n_pop;

    Trajectory<State> out;
    out.times.reserve(whole + 2);
    out.states.reserve(whole + 2);
    out.times.push_back(t0);
    out.states.push_back(x0);
    State x = x0;
    for (std::size_t k = 0; k < whole; ++k) {
        x = rk4_step_impl(p, x, h);
        clamp_state(x, clamp_floor);
        const double t = t0 + static_cast<double>(k + 1) * h;
        if (!finite_state(x)) {
            std::ostringstream os;
            os << "state became non-finite at t = " << t;
            raise(errc::nonfinite_state, os.str());
        }
        out.times.push_back(k + 1 == whole && tail == 0.0 ? t1 : t);
        out.states.push_back(x);
    }
    if (tail > 0.0) {
        x = rk4_step_impl(p, x, tail);
        clamp_state(x, clamp_floor);
        if (!finite_state(x)) {
            std::ostringstream os;
            os << "state became non-finite at t = " << t1;
            raise(errc::nonfinite_state, os.str());
        }
        out.times.push_back(t1);
        out.states.push_back(x);
    }
    return out;
}

template <class Trajectory, class Inflow>
IncidenceWindows window_integrals(const Trajectory& traj, Inflow&& inflow) {
    if (traj.size() < 2) {
        raise(errc::window_misaligned,
              "trajectory has fewer than two points");
    }
    const double h = traj.times[1] - traj.times[0];
    const double per_window = 14.0 / h;
    const auto steps = static_cast<std::size_t>(std::llround(per_window));
    if (steps == 0 || std::abs(per_window - static_cast<double>(steps)) >
                          1e-6 * per_window) {
        std::ostringstream os;
        os << "grid spacing " << h << " does not divide the 14-day window";
        raise(errc::window_misaligned, os.str());
    }
    const std::size_t windows = (traj.size() - 1) / steps;
    IncidenceWindows out;
    out.original.reserve(windows);
    out.emerging.reserve(windows);
    for (std::size_t w = 0; w < windows; ++w) {
        const std::size_t begin = w * steps;
        // uniform spacing must hold through the window (a shortened final
        // step disqualifies the trailing partial window)
        if (std::abs(traj.times[begin + steps] - traj.times[begin] - 14.0) >
            1e-6) {
            raise(errc::window_misaligned,
                  "non-uniform spacing inside a 14-day window");
        }
        double acc1 = 0.0;
        double acc2 = 0.0;
        auto [f1, f2] = inflow(traj.states[begin]);
        for (std::size_t k = begin + 1; k <= begin + steps; ++k) {
            auto [g1, g2] = inflow(traj.states[k]);
            acc1 += 0.5 * h * (f1 + g1);
            acc2 += 0.5 * h * (f2 + g2);
            f1 = g1;
            f2 = g2;
        }
        out.original.push_back(acc1);
        out.emerging.push_back(acc2);
    }
    return out;
}

} // namespace

FullState rk4_step(const ModelParams& p, const FullState& x, double h) {
    return rk4_step_impl(p, x, h);
}

ReducedState rk4_step(const ModelParams& p, const ReducedState& y, double h) {
    return rk4_step_impl(p, y, h);
}

FullTrajectory integrate_full(const ModelParams& p, const FullState& x0,
                              double t0, double t1, double h) {
    return integrate_impl(p, x0, t0, t1, h);
}

ReducedTrajectory integrate_reduced(const ModelParams& p,
                                    const ReducedState& y0, double t0,
                                    double t1, double h) {
    return integrate_impl(p, y0, t0, t1, h);
}

IncidenceWindows accumulate_incidence(const ModelParams& p,
                                      const FullTrajectory& traj) {
    return window_integrals(traj, [&](const FullState& x) {
        const double foi1 =
            p.beta1 / p.n_pop * x.i1 * (x.s + (1.0 - p.epsilon) * x.r2);
        const double foi2 = p.beta2 / p.n_pop * x.i2 * (x.s + x.r1);
        return std::pair<double, double>(foi1, foi2);
    });
}

ReducedInflows reduced_inflows(const ModelParams& p, const ReducedState& y) {
    const double n = p.n_pop;
    const double w = omega(p, y);
    // R1 from the strain-1 quasi-steady balance, then S by conservation.
    // w > 0 forces a positive denominator; w == 0 carries no immune pool.
    const double r1 =
        w > 0.0 ? n * p.gamma1 * w / (n * p.sigma1 + p.beta2 * y.i2) : 0.0;
    const double s = n - w - r1 - y.i2 - y.r2;
    ReducedInflows out;
    out.strain1 = p.beta1 / n * w * (s + (1.0 - p.epsilon) * y.r2);
    out.strain2 = p.beta2 / n * y.i2 * (s + r1);
    return out;
}

IncidenceWindows accumulate_incidence_reduced(const ModelParams& p,
                                              const ReducedTrajectory& traj) {
    return window_integrals(traj, [&](const ReducedState& y) {
        const ReducedInflows f = reduced_inflows(p, y);
        return std::pair<double, double>(f.strain1, f.strain2);
    });
}

} // namespace twostrain
