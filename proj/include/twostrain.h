/* twostrain: two-strain epidemic model with asymmetric temporary immunity
 * periods and partial cross-immunity.
 *
 * C interface to the shared library. All functions return a ts_status code;
 * TS_OK (0) means success. On failure, ts_last_error_message() returns a
 * human-readable description (thread-local, valid until the next failing
 * call in the same thread). Opaque handles must be released with the
 * matching *_free function.
 */
#ifndef TWOSTRAIN_H
#define TWOSTRAIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TS_API __declspec(dllexport)
#else
#define TS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
    TS_OK = 0,
    /* parameter / state validation */
    TS_E_NONPOSITIVE_POPULATION,
    TS_E_NEGATIVE_RATE,
    TS_E_EPSILON_OUT_OF_RANGE,
    TS_E_DEGENERATE_RATES,
    /* numerics */
    TS_E_STEP_NOT_POSITIVE,
    TS_E_NONFINITE_STATE,
    TS_E_WINDOW_MISALIGNED,
    TS_E_BISECTION_STAGNATED,
    TS_E_PRECONDITION_FAILED,
    TS_E_OUT_OF_DOMAIN,
    TS_E_ON_SWITCHING_LINE,
    TS_E_NO_ROOT_IN_COLUMN,
    /* fitting */
    TS_E_CONSTRAINT_VIOLATED,
    TS_E_INTEGRATION_FAILED,
    TS_E_LENGTH_MISMATCH,
    TS_E_BUDGET_EXHAUSTED,
    /* data files */
    TS_E_PARSE,
    TS_E_NON_MONOTONE_DATES,
    TS_E_NEGATIVE_CASES,
    TS_E_INCOMPLETE_WINDOW,
    TS_E_SHARE_OUT_OF_RANGE,
    /* configuration / usage */
    TS_E_CONFIG,
    TS_E_INVALID_AXIS,
    TS_E_IO,
    TS_E_INVALID_ARGUMENT,
    TS_E_INTERNAL
} ts_status;

/* Stable name of a status code ("ok", "negative_rate", ...). */
TS_API const char* ts_status_name(ts_status status);

/* Process exit code convention for CLI front ends:
 * 0 success, 2 configuration error, 3 data error, 4 numerical failure. */
TS_API int ts_status_exit_code(ts_status status);

/* Message describing the most recent failure in this thread. */
TS_API const char* ts_last_error_message(void);

TS_API const char* ts_version(void);

/* ------------------------------------------------------------------ */
/* model types                                                         */
/* ------------------------------------------------------------------ */

/* Rates are per day; n_pop is the (real-valued) population size. */
typedef struct ts_params {
    double beta1, beta2;   /* transmission rates */
    double gamma1, gamma2; /* recovery rates */
    double sigma1, sigma2; /* immunity-loss rates */
    double epsilon;        /* cross-immunity degree in [0,1] */
    double n_pop;
} ts_params;

typedef struct ts_full_state {
    double s, i1, r1, i2, r2;
} ts_full_state;

typedef struct ts_reduced_state {
    double i2, r2;
} ts_reduced_state;

typedef struct ts_reproduction {
    double r0, r1, r2, r12, r21;
    /* 1 when the invaded endemic state backing r12/r21 is physical */
    int r12_target_physical;
    int r21_target_physical;
} ts_reproduction;

/* Checks all parameter bounds. */
TS_API ts_status ts_params_validate(const ts_params* params);

/* Closed-form reproduction numbers. */
TS_API ts_status ts_reproduction_numbers(const ts_params* params,
                                         ts_reproduction* out);

/* Right-hand sides of the full and reduced systems. */
TS_API ts_status ts_full_rhs(const ts_params* params,
                             const ts_full_state* state,
                             ts_full_state* out_derivative);
TS_API ts_status ts_reduced_rhs(const ts_params* params,
                                const ts_reduced_state* state,
                                ts_reduced_state* out_derivative);

/* Quasi-steady-state level of the original strain. */
TS_API ts_status ts_omega(const ts_params* params,
                          const ts_reduced_state* state, double* out);

/* I2 + epsilon*R2 threshold where the reduced vector field switches.
 * Meaningful only when beta1 > gamma1. */
TS_API ts_status ts_switching_threshold(const ts_params* params, double* out);

/* ------------------------------------------------------------------ */
/* simulation                                                          */
/* ------------------------------------------------------------------ */

typedef struct ts_trajectory ts_trajectory;

/* Fixed-step RK4 over [t0,t1]; the final step is shortened to land on t1. */
TS_API ts_status ts_simulate_full(const ts_params* params,
                                  const ts_full_state* x0, double t0,
                                  double t1, double step,
                                  ts_trajectory** out);
TS_API ts_status ts_simulate_reduced(const ts_params* params,
                                     const ts_reduced_state* y0, double t0,
                                     double t1, double step,
                                     ts_trajectory** out);

TS_API size_t ts_trajectory_size(const ts_trajectory* trajectory);
TS_API ts_status ts_trajectory_time(const ts_trajectory* trajectory,
                                    size_t index, double* out);
TS_API ts_status ts_trajectory_full_state(const ts_trajectory* trajectory,
                                          size_t index, ts_full_state* out);
TS_API ts_status ts_trajectory_reduced_state(const ts_trajectory* trajectory,
                                             size_t index,
                                             ts_reduced_state* out);
TS_API void ts_trajectory_free(ts_trajectory* trajectory);

/* ------------------------------------------------------------------ */
/* equilibria                                                          */
/* ------------------------------------------------------------------ */

typedef enum ts_steady_kind {
    TS_STEADY_DISEASE_FREE = 0,
    TS_STEADY_ORIGINAL_ONLY,
    TS_STEADY_EMERGING_ONLY,
    TS_STEADY_COEXISTENCE
} ts_steady_kind;

typedef struct ts_steady_report {
    int kind; /* ts_steady_kind */
    ts_full_state state;
    int physical;
    double residual; /* max |full RHS| at the state */
} ts_steady_report;

/* Fills out[0..2] with the disease-free, original-only and emerging-only
 * steady states. */
TS_API ts_status ts_boundary_steady_states(const ts_params* params,
                                           ts_steady_report out[3]);

typedef enum ts_threshold_id {
    TS_THRESHOLD_R1 = 0,
    TS_THRESHOLD_R2,
    TS_THRESHOLD_R12,
    TS_THRESHOLD_R21
} ts_threshold_id;

/* *exists is set to 1 and *out filled when the coexistence state exists;
 * otherwise *exists is 0 and *failing names the threshold <= 1. */
TS_API ts_status ts_solve_coexistence(const ts_params* params,
                                      ts_steady_report* out, int* exists,
                                      int* failing /* ts_threshold_id */);

/* Unique steady state of the reduced system (requires R1, R2, R21 > 1).
 * *coexistence_regime is 1 when omega > 0 there; *conjectured is 1 when
 * epsilon lies strictly between 0 and 1. */
TS_API ts_status ts_solve_reduced_steady_state(const ts_params* params,
                                               ts_reduced_state* out,
                                               int* coexistence_regime,
                                               int* conjectured);

/* ------------------------------------------------------------------ */
/* phase-plane and bifurcation analysis                                */
/* ------------------------------------------------------------------ */

/* Signs (-1, 0, +1) of the reduced derivatives at a point; 0 means the
 * component is within the steady-state residual tolerance. */
TS_API ts_status ts_region_direction(const ts_params* params,
                                     const ts_reduced_state* state,
                                     int* sign_di2, int* sign_dr2);

/* Divergence of the (1/I2)-scaled reduced field. */
TS_API ts_status ts_dulac_expression(const ts_params* params,
                                     const ts_reduced_state* state,
                                     double* out);

/* Region labels: 1 = disease-free, 2 = original only, 3 = emerging only,
 * 4 = coexistence. */
TS_API ts_status ts_classify_region(const ts_params* params, int* label,
                                    int* contested);

/* ------------------------------------------------------------------ */
/* workflow commands (CLI backend)                                     */
/* ------------------------------------------------------------------ */

/* Runs one of "simulate", "analyze", "phase", "scan", "fit" against a
 * configuration file, writing output files into out_dir. has_seed != 0
 * makes `seed` override the configured RNG seed; reproducible != 0
 * suppresses timestamp header lines in the outputs. */
TS_API ts_status ts_run_command(const char* command, const char* config_path,
                                const char* out_dir, uint64_t seed,
                                int has_seed, int reproducible);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TWOSTRAIN_H */
