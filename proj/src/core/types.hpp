#pragma once

#include <stdexcept>
#include <string>

namespace twostrain {

enum class errc {
    ok = 0,
    // parameter / state validation
    nonpositive_population,
    negative_rate,
    epsilon_out_of_range,
    degenerate_rates,
    // numerics
    step_not_positive,
    nonfinite_state,
    window_misaligned,
    bisection_stagnated,
    precondition_failed,
    out_of_domain,
    on_switching_line,
    no_root_in_column,
    // fitting
    constraint_violated,
    integration_failed,
    length_mismatch,
    budget_exhausted,
    // data files
    parse_error,
    non_monotone_dates,
    negative_cases,
    incomplete_window,
    share_out_of_range,
    // configuration / usage
    config_error,
    invalid_axis,
    io_error,
    invalid_argument,
    internal_error,
};

const char* errc_name(errc code);

/// CLI convention: 0 success, 2 config error, 3 data error, 4 numerical.
int exit_code_for(errc code);

class ModelError : public std::runtime_error {
public:
    ModelError(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] void raise(errc code, const std::string& message);

/// The seven rate parameters plus population size. Rates are per day.
struct ModelParams {
    double beta1{};
    double beta2{};
    double gamma1{};
    double gamma2{};
    double sigma1{};
    double sigma2{};
    double epsilon{};
    double n_pop{};
};

/// Bounds: beta_i >= 0, gamma_i > 0, sigma_i >= 0, 0 <= epsilon <= 1,
/// n_pop > 0, everything finite. Returns the params unchanged when valid.
ModelParams validate_params(const ModelParams& raw);

double max_rate(const ModelParams& params);

/// Point of the full system, in people.
struct FullState {
    double s{};
    double i1{};
    double r1{};
    double i2{};
    double r2{};

    double sum() const { return s + i1 + r1 + i2 + r2; }
};

/// Point of the reduced planar system, in people.
struct ReducedState {
    double i2{};
    double r2{};
};

/// Non-negativity is exact (tolerance 0); simulation output is separately
/// clamped for integrator round-off (see dynamics).
FullState validate_state(const FullState& state);

/// Membership in the trapping triangle: i2, r2 >= 0, i2 + r2 <= n_pop.
ReducedState validate_state(const ModelParams& params,
                            const ReducedState& state);

struct ReproductionSet {
    double r0{};
    double r1{};
    double r2{};
    double r12{};
    double r21{};
    // r12/r21 are evaluated from the closed forms even when the invaded
    // endemic state is non-physical; these flags mark that situation.
    bool r12_target_physical{};
    bool r21_target_physical{};
};

// vector-space operations used by the integrator
inline FullState operator+(const FullState& a, const FullState& b) {
    return {a.s + b.s, a.i1 + b.i1, a.r1 + b.r1, a.i2 + b.i2, a.r2 + b.r2};
}
inline FullState operator*(double c, const FullState& a) {
    return {c * a.s, c * a.i1, c * a.r1, c * a.i2, c * a.r2};
}
inline ReducedState operator+(const ReducedState& a, const ReducedState& b) {
    return {a.i2 + b.i2, a.r2 + b.r2};
}
inline ReducedState operator*(double c, const ReducedState& a) {
    return {c * a.i2, c * a.r2};
}

} // namespace twostrain
