#include "core/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace twostrain {

const char* errc_name(errc code) {
    switch (code) {
    case errc::ok: return "ok";
    case errc::nonpositive_population: return "nonpositive_population";
    case errc::negative_rate: return "negative_rate";
    case errc::epsilon_out_of_range: return "epsilon_out_of_range";
    case errc::degenerate_rates: return "degenerate_rates";
    case errc::step_not_positive: return "step_not_positive";
    case errc::nonfinite_state: return "nonfinite_state";
    case errc::window_misaligned: return "window_misaligned";
    case errc::bisection_stagnated: return "bisection_stagnated";
    case errc::precondition_failed: return "precondition_failed";
    case errc::out_of_domain: return "out_of_domain";
    case errc::on_switching_line: return "on_switching_line";
    case errc::no_root_in_column: return "no_root_in_column";
    case errc::constraint_violated: return "constraint_violated";
    case errc::integration_failed: return "integration_failed";
    case errc::length_mismatch: return "length_mismatch";
    case errc::budget_exhausted: return "budget_exhausted";
    case errc::parse_error: return "parse_error";
    case errc::non_monotone_dates: return "non_monotone_dates";
    case errc::negative_cases: return "negative_cases";
    case errc::incomplete_window: return "incomplete_window";
    case errc::share_out_of_range: return "share_out_of_range";
    case errc::config_error: return "config_error";
    case errc::invalid_axis: return "invalid_axis";
    case errc::io_error: return "io_error";
    case errc::invalid_argument: return "invalid_argument";
    case errc::internal_error: return "internal_error";
    }
    return "unknown";
}

int exit_code_for(errc code) {
    switch (code) {
    case errc::ok:
        return 0;
    case errc::nonpositive_population:
    case errc::negative_rate:
    case errc::epsilon_out_of_range:
    case errc::config_error:
    case errc::invalid_axis:
    case errc::invalid_argument:
        return 2;
    case errc::parse_error:
    case errc::non_monotone_dates:
    case errc::negative_cases:
    case errc::incomplete_window:
    case errc::share_out_of_range:
    case errc::io_error:
        return 3;
    default:
        return 4;
    }
}

void raise(errc code, const std::string& message) {
    throw ModelError(code, message);
}

namespace {

void require_rate(double value, const char* name, bool strictly_positive) {
    if (!std::isfinite(value) || value < 0.0 ||
        (strictly_positive && value == 0.0)) {
        std::ostringstream os;
        os << "parameter " << name << " = " << value << " violates "
           << (strictly_positive ? "> 0" : ">= 0");
        raise(errc::negative_rate, os.str());
    }
}

} // namespace

ModelParams validate_params(const ModelParams& raw) {
    require_rate(raw.beta1, "beta1", false);
    require_rate(raw.beta2, "beta2", false);
    require_rate(raw.gamma1, "gamma1", true);
    require_rate(raw.gamma2, "gamma2", true);
    require_rate(raw.sigma1, "sigma1", false);
    require_rate(raw.sigma2, "sigma2", false);
    if (!std::isfinite(raw.epsilon) || raw.epsilon < 0.0 ||
        raw.epsilon > 1.0) {
        std::ostringstream os;
        os << "epsilon = " << raw.epsilon << " violates 0 <= epsilon <= 1";
        raise(errc::epsilon_out_of_range, os.str());
    }
    if (!std::isfinite(raw.n_pop) || raw.n_pop <= 0.0) {
        std::ostringstream os;
        os << "n_pop = " << raw.n_pop << " violates n_pop > 0";
        raise(errc::nonpositive_population, os.str());
    }
    return raw;
}

double max_rate(const ModelParams& p) {
    return std::max({p.beta1, p.beta2, p.gamma1, p.gamma2, p.sigma1,
                     p.sigma2});
}

FullState validate_state(const FullState& state) {
    const double values[] = {state.s, state.i1, state.r1, state.i2, state.r2};
    const char* names[] = {"S", "I1", "R1", "I2", "R2"};
    for (int i = 0; i < 5; ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            std::ostringstream os;
            os << "state component " << names[i] << " = " << values[i]
               << " violates >= 0";
            raise(errc::nonfinite_state, os.str());
        }
    }
    return state;
}

ReducedState validate_state(const ModelParams& params,
                            const ReducedState& state) {
    if (!std::isfinite(state.i2) || !std::isfinite(state.r2) ||
        state.i2 < 0.0 || state.r2 < 0.0 ||
        state.i2 + state.r2 > params.n_pop) {
        std::ostringstream os;
        os << "reduced state (" << state.i2 << ", " << state.r2
           << ") lies outside the trapping region";
        raise(errc::nonfinite_state, os.str());
    }
    return state;
}

} // namespace twostrain
