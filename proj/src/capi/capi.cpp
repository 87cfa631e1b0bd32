#include "twostrain.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <variant>

#include "core/bifurcation.hpp"
#include "core/commands.hpp"
#include "core/dynamics.hpp"
#include "core/equilibria.hpp"
#include "core/phase.hpp"
#include "core/reproduction.hpp"
#include "core/types.hpp"

using namespace twostrain;

extern "C" {

struct ts_trajectory {
    std::variant<FullTrajectory, ReducedTrajectory> data;
};

} // extern "C"

namespace {

thread_local std::string g_last_error;

ts_status map_code(errc code) {
    switch (code) {
    case errc::ok: return TS_OK;
    case errc::nonpositive_population: return TS_E_NONPOSITIVE_POPULATION;
    case errc::negative_rate: return TS_E_NEGATIVE_RATE;
    case errc::epsilon_out_of_range: return TS_E_EPSILON_OUT_OF_RANGE;
    case errc::degenerate_rates: return TS_E_DEGENERATE_RATES;
    case errc::step_not_positive: return TS_E_STEP_NOT_POSITIVE;
    case errc::nonfinite_state: return TS_E_NONFINITE_STATE;
    case errc::window_misaligned: return TS_E_WINDOW_MISALIGNED;
    case errc::bisection_stagnated: return TS_E_BISECTION_STAGNATED;
    case errc::precondition_failed: return TS_E_PRECONDITION_FAILED;
    case errc::out_of_domain: return TS_E_OUT_OF_DOMAIN;
    case errc::on_switching_line: return TS_E_ON_SWITCHING_LINE;
    case errc::no_root_in_column: return TS_E_NO_ROOT_IN_COLUMN;
    case errc::constraint_violated: return TS_E_CONSTRAINT_VIOLATED;
    case errc::integration_failed: return TS_E_INTEGRATION_FAILED;
    case errc::length_mismatch: return TS_E_LENGTH_MISMATCH;
    case errc::budget_exhausted: return TS_E_BUDGET_EXHAUSTED;
    case errc::parse_error: return TS_E_PARSE;
    case errc::non_monotone_dates: return TS_E_NON_MONOTONE_DATES;
    case errc::negative_cases: return TS_E_NEGATIVE_CASES;
    case errc::incomplete_window: return TS_E_INCOMPLETE_WINDOW;
    case errc::share_out_of_range: return TS_E_SHARE_OUT_OF_RANGE;
    case errc::config_error: return TS_E_CONFIG;
    case errc::invalid_axis: return TS_E_INVALID_AXIS;
    case errc::io_error: return TS_E_IO;
    case errc::invalid_argument: return TS_E_INVALID_ARGUMENT;
    case errc::internal_error: return TS_E_INTERNAL;
    }
    return TS_E_INTERNAL;
}

template <class Fn>
ts_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return TS_OK;
    } catch (const ModelError& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return TS_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TS_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return TS_E_INTERNAL;
    }
}

ts_status invalid(const char* what) {
    g_last_error = what;
    return TS_E_INVALID_ARGUMENT;
}

ModelParams to_core(const ts_params& p) {
    return {p.beta1, p.beta2, p.gamma1, p.gamma2,
            p.sigma1, p.sigma2, p.epsilon, p.n_pop};
}

FullState to_core(const ts_full_state& x) {
    return {x.s, x.i1, x.r1, x.i2, x.r2};
}

ReducedState to_core(const ts_reduced_state& y) { return {y.i2, y.r2}; }

ts_full_state from_core(const FullState& x) {
    return {x.s, x.i1, x.r1, x.i2, x.r2};
}

ts_reduced_state from_core(const ReducedState& y) { return {y.i2, y.r2}; }

ts_reproduction from_core(const ReproductionSet& r) {
    ts_reproduction out;
    out.r0 = r.r0;
    out.r1 = r.r1;
    out.r2 = r.r2;
    out.r12 = r.r12;
    out.r21 = r.r21;
    out.r12_target_physical = r.r12_target_physical ? 1 : 0;
    out.r21_target_physical = r.r21_target_physical ? 1 : 0;
    return out;
}

ts_steady_report from_core(const SteadyStateReport& s) {
    ts_steady_report out;
    out.kind = static_cast<int>(s.kind);
    out.state = from_core(s.state);
    out.physical = s.physical ? 1 : 0;
    out.residual = s.residual;
    return out;
}

} // namespace

extern "C" {

const char* ts_status_name(ts_status status) {
    switch (status) {
    case TS_OK: return "ok";
    case TS_E_NONPOSITIVE_POPULATION: return "nonpositive_population";
    case TS_E_NEGATIVE_RATE: return "negative_rate";
    case TS_E_EPSILON_OUT_OF_RANGE: return "epsilon_out_of_range";
    case TS_E_DEGENERATE_RATES: return "degenerate_rates";
    case TS_E_STEP_NOT_POSITIVE: return "step_not_positive";
    case TS_E_NONFINITE_STATE: return "nonfinite_state";
    case TS_E_WINDOW_MISALIGNED: return "window_misaligned";
    case TS_E_BISECTION_STAGNATED: return "bisection_stagnated";
    case TS_E_PRECONDITION_FAILED: return "precondition_failed";
    case TS_E_OUT_OF_DOMAIN: return "out_of_domain";
    case TS_E_ON_SWITCHING_LINE: return "on_switching_line";
    case TS_E_NO_ROOT_IN_COLUMN: return "no_root_in_column";
    case TS_E_CONSTRAINT_VIOLATED: return "constraint_violated";
    case TS_E_INTEGRATION_FAILED: return "integration_failed";
    case TS_E_LENGTH_MISMATCH: return "length_mismatch";
    case TS_E_BUDGET_EXHAUSTED: return "budget_exhausted";
    case TS_E_PARSE: return "parse_error";
    case TS_E_NON_MONOTONE_DATES: return "non_monotone_dates";
    case TS_E_NEGATIVE_CASES: return "negative_cases";
    case TS_E_INCOMPLETE_WINDOW: return "incomplete_window";
    case TS_E_SHARE_OUT_OF_RANGE: return "share_out_of_range";
    case TS_E_CONFIG: return "config_error";
    case TS_E_INVALID_AXIS: return "invalid_axis";
    case TS_E_IO: return "io_error";
    case TS_E_INVALID_ARGUMENT: return "invalid_argument";
    case TS_E_INTERNAL: return "internal_error";
    }
    return "unknown";
}

int ts_status_exit_code(ts_status status) {
    switch (status) {
    case TS_OK:
        return 0;
    case TS_E_NONPOSITIVE_POPULATION:
    case TS_E_NEGATIVE_RATE:
    case TS_E_EPSILON_OUT_OF_RANGE:
    case TS_E_CONFIG:
    case TS_E_INVALID_AXIS:
    case TS_E_INVALID_ARGUMENT:
        return 2;
    case TS_E_PARSE:
    case TS_E_NON_MONOTONE_DATES:
    case TS_E_NEGATIVE_CASES:
    case TS_E_INCOMPLETE_WINDOW:
    case TS_E_SHARE_OUT_OF_RANGE:
    case TS_E_IO:
        return 3;
    default:
        return 4;
    }
}

const char* ts_last_error_message(void) { return g_last_error.c_str(); }

const char* ts_version(void) { return "1.0.0"; }

ts_status ts_params_validate(const ts_params* params) {
    if (!params) {
        return invalid("params is null");
    }
    return guarded([&] { validate_params(to_core(*params)); });
}

ts_status ts_reproduction_numbers(const ts_params* params,
                                  ts_reproduction* out) {
    if (!params || !out) {
        return invalid("params/out is null");
    }
    return guarded([&] {
        *out = from_core(
            closed_form_reproduction(validate_params(to_core(*params))));
    });
}

ts_status ts_full_rhs(const ts_params* params, const ts_full_state* state,
                      ts_full_state* out_derivative) {
    if (!params || !state || !out_derivative) {
        return invalid("argument is null");
    }
    return guarded([&] {
        *out_derivative = from_core(
            full_rhs(validate_params(to_core(*params)), to_core(*state)));
    });
}

ts_status ts_reduced_rhs(const ts_params* params,
                         const ts_reduced_state* state,
                         ts_reduced_state* out_derivative) {
    if (!params || !state || !out_derivative) {
        return invalid("argument is null");
    }
    return guarded([&] {
        *out_derivative = from_core(
            reduced_rhs(validate_params(to_core(*params)), to_core(*state)));
    });
}

ts_status ts_omega(const ts_params* params, const ts_reduced_state* state,
                   double* out) {
    if (!params || !state || !out) {
        return invalid("argument is null");
    }
    return guarded([&] {
        *out = omega(validate_params(to_core(*params)), to_core(*state));
    });
}

ts_status ts_switching_threshold(const ts_params* params, double* out) {
    if (!params || !out) {
        return invalid("argument is null");
    }
    return guarded([&] {
        *out = switching_threshold(validate_params(to_core(*params)));
    });
}

ts_status ts_simulate_full(const ts_params* params, const ts_full_state* x0,
                           double t0, double t1, double step,
                           ts_trajectory** out) {
    if (!params || !x0 || !out) {
        return invalid("argument is null");
    }
    return guarded([&] {
        auto traj = integrate_full(validate_params(to_core(*params)),
                                   to_core(*x0), t0, t1, step);
        *out = new ts_trajectory{std::move(traj)};
    });
}

ts_status ts_simulate_reduced(const ts_params* params,
                              const ts_reduced_state* y0, double t0,
                              double t1, double step, ts_trajectory** out) {
    if (!params || !y0 || !out) {
        return invalid("argument is null");
    }
    return guarded([&] {
        auto traj = integrate_reduced(validate_params(to_core(*params)),
                                      to_core(*y0), t0, t1, step);
        *out = new ts_trajectory{std::move(traj)};
    });
}

size_t ts_trajectory_size(const ts_trajectory* trajectory) {
    if (!trajectory) {
        return 0;
    }
    return std::visit([](const auto& t) { return t.size(); },
                      trajectory->data);
}

ts_status ts_trajectory_time(const ts_trajectory* trajectory, size_t index,
                             double* out) {
    if (!trajectory || !out) {
        return invalid("argument is null");
    }
    if (index >= ts_trajectory_size(trajectory)) {
        return invalid("index out of range");
    }
    std::visit([&](const auto& t) { *out = t.times[index]; },
               trajectory->data);
    return TS_OK;
}

ts_status ts_trajectory_full_state(const ts_trajectory* trajectory,
                                   size_t index, ts_full_state* out) {
    if (!trajectory || !out) {
        return invalid("argument is null");
    }
    const auto* full = std::get_if<FullTrajectory>(&trajectory->data);
    if (!full) {
        return invalid("trajectory holds reduced states");
    }
    if (index >= full->size()) {
        return invalid("index out of range");
    }
    *out = from_core(full->states[index]);
    return TS_OK;
}

ts_status ts_trajectory_reduced_state(const ts_trajectory* trajectory,
                                      size_t index, ts_reduced_state* out) {
    if (!trajectory || !out) {
        return invalid("argument is null");
    }
    const auto* reduced = std::get_if<ReducedTrajectory>(&trajectory->data);
    if (!reduced) {
        return invalid("trajectory holds full states");
    }
    if (index >= reduced->size()) {
        return invalid("index out of range");
    }
    *out = from_core(reduced->states[index]);
    return TS_OK;
}

void ts_trajectory_free(ts_trajectory* trajectory) { delete trajectory; }

ts_status ts_boundary_steady_states(const ts_params* params,
                                    ts_steady_report out[3]) {
    if (!params || !out) {
        return invalid("argument is null");
    }
    return guarded([&] {
        const auto reports =
            boundary_steady_states(validate_params(to_core(*params)));
        for (int i = 0; i < 3; ++i) {
            out[i] = from_core(reports[static_cast<std::size_t>(i)]);
        }
    });
}

ts_status ts_solve_coexistence(const ts_params* params,
                               ts_steady_report* out, int* exists,
                               int* failing) {
    if (!params || !out || !exists || !failing) {
        return invalid("argument is null");
    }
    return guarded([&] {
        const CoexistenceOutcome outcome =
            solve_coexistence_full(validate_params(to_core(*params)));
        if (outcome.state) {
            *exists = 1;
            *out = from_core(*outcome.state);
            *failing = -1;
        } else {
            *exists = 0;
            *failing = static_cast<int>(*outcome.failing);
            std::memset(out, 0, sizeof *out);
        }
    });
}

ts_status ts_solve_reduced_steady_state(const ts_params* params,
                                        ts_reduced_state* out,
                                        int* coexistence_regime,
                                        int* conjectured) {
    if (!params || !out || !coexistence_regime || !conjectured) {
        return invalid("argument is null");
    }
    return guarded([&] {
        const ReducedSteadyState solved =
            solve_reduced_steady_state(validate_params(to_core(*params)));
        *out = from_core(solved.state);
        *coexistence_regime =
            solved.regime == ReducedRegime::coexistence ? 1 : 0;
        *conjectured = solved.regime_conjectured ? 1 : 0;
    });
}

ts_status ts_region_direction(const ts_params* params,
                              const ts_reduced_state* state, int* sign_di2,
                              int* sign_dr2) {
    if (!params || !state || !sign_di2 || !sign_dr2) {
        return invalid("argument is null");
    }
    return guarded([&] {
        const auto [si, sr] = region_direction(
            validate_params(to_core(*params)), to_core(*state));
        *sign_di2 = si;
        *sign_dr2 = sr;
    });
}

ts_status ts_dulac_expression(const ts_params* params,
                              const ts_reduced_state* state, double* out) {
    if (!params || !state || !out) {
        return invalid("argument is null");
    }
    return guarded([&] {
        *out = dulac_expression(validate_params(to_core(*params)),
                                to_core(*state));
    });
}

ts_status ts_classify_region(const ts_params* params, int* label,
                             int* contested) {
    if (!params || !label || !contested) {
        return invalid("argument is null");
    }
    return guarded([&] {
        const RegionLabel region =
            classify_region(validate_params(to_core(*params)));
        *label = static_cast<int>(region.label);
        *contested = region.contested ? 1 : 0;
    });
}

ts_status ts_run_command(const char* command, const char* config_path,
                         const char* out_dir, uint64_t seed, int has_seed,
                         int reproducible) {
    if (!command || !config_path) {
        return invalid("command/config_path is null");
    }
    return guarded([&] {
        CommandOptions opt;
        opt.config_path = config_path;
        opt.out_dir = out_dir ? out_dir : ".";
        if (has_seed) {
            opt.seed = seed;
        }
        opt.reproducible = reproducible != 0;
        run_command(command, opt);
    });
}

} // extern "C"
