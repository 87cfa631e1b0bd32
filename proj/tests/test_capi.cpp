#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "twostrain.h"

using doctest::Approx;

namespace {

ts_params coexistence_params() {
    return {0.4, 0.6, 0.2, 0.1, 0.1, 0.1, 0.0, 10000.0};
}

} // namespace

TEST_CASE("status names and exit codes") {
    CHECK(std::strcmp(ts_status_name(TS_OK), "ok") == 0);
    CHECK(std::strcmp(ts_status_name(TS_E_NEGATIVE_RATE),
                      "negative_rate") == 0);
    CHECK(ts_status_exit_code(TS_OK) == 0);
    CHECK(ts_status_exit_code(TS_E_CONFIG) == 2);
    CHECK(ts_status_exit_code(TS_E_PARSE) == 3);
    CHECK(ts_status_exit_code(TS_E_NONFINITE_STATE) == 4);
    CHECK(ts_version() != nullptr);
}

TEST_CASE("parameter validation through the C surface") {
    ts_params p = coexistence_params();
    CHECK(ts_params_validate(&p) == TS_OK);
    p.epsilon = 1.5;
    CHECK(ts_params_validate(&p) == TS_E_EPSILON_OUT_OF_RANGE);
    CHECK(std::string(ts_last_error_message()).find("epsilon") !=
          std::string::npos);
    p = coexistence_params();
    p.n_pop = 0.0;
    CHECK(ts_params_validate(&p) == TS_E_NONPOSITIVE_POPULATION);
    p = coexistence_params();
    p.gamma1 = -1.0;
    CHECK(ts_params_validate(&p) == TS_E_NEGATIVE_RATE);
    CHECK(ts_params_validate(nullptr) == TS_E_INVALID_ARGUMENT);
}

TEST_CASE("reproduction numbers match the benchmark values") {
    const ts_params p = coexistence_params();
    ts_reproduction r;
    REQUIRE(ts_reproduction_numbers(&p, &r) == TS_OK);
    CHECK(r.r1 == Approx(2.0));
    CHECK(r.r2 == Approx(6.0));
    CHECK(r.r12 == Approx(1.1666666666666667));
    CHECK(r.r21 == Approx(5.0));
    CHECK(r.r0 == Approx(6.0));
    CHECK(r.r12_target_physical == 1);
}

TEST_CASE("right-hand sides and omega") {
    const ts_params p = coexistence_params();
    const ts_full_state x{9000.0, 500.0, 0.0, 500.0, 0.0};
    ts_full_state d;
    REQUIRE(ts_full_rhs(&p, &x, &d) == TS_OK);
    CHECK(d.i1 == Approx(80.0));
    CHECK(d.i2 == Approx(220.0));

    const ts_reduced_state y{2000.0, 1000.0};
    ts_reduced_state dr;
    REQUIRE(ts_reduced_rhs(&p, &y, &dr) == TS_OK);
    CHECK(dr.i2 == Approx(451.42857142857144));

    double w = 0.0;
    REQUIRE(ts_omega(&p, &y, &w) == TS_OK);
    CHECK(w == Approx(1571.4285714285714));

    double threshold = 0.0;
    REQUIRE(ts_switching_threshold(&p, &threshold) == TS_OK);
    CHECK(threshold == Approx(5000.0));
}

TEST_CASE("trajectory lifecycle") {
    const ts_params p = coexistence_params();
    const ts_full_state x0{9000.0, 0.0, 0.0, 1000.0, 0.0};
    ts_trajectory* traj = nullptr;
    REQUIRE(ts_simulate_full(&p, &x0, 0.0, 10.0, 0.5, &traj) == TS_OK);
    REQUIRE(traj != nullptr);
    CHECK(ts_trajectory_size(traj) == 21);
    double t = -1.0;
    CHECK(ts_trajectory_time(traj, 20, &t) == TS_OK);
    CHECK(t == 10.0);
    ts_full_state xe;
    CHECK(ts_trajectory_full_state(traj, 20, &xe) == TS_OK);
    CHECK(xe.s + xe.i1 + xe.r1 + xe.i2 + xe.r2 == Approx(10000.0));
    ts_reduced_state ye;
    CHECK(ts_trajectory_reduced_state(traj, 0, &ye) ==
          TS_E_INVALID_ARGUMENT);
    CHECK(ts_trajectory_time(traj, 21, &t) == TS_E_INVALID_ARGUMENT);
    ts_trajectory_free(traj);

    ts_trajectory* bad = nullptr;
    CHECK(ts_simulate_full(&p, &x0, 0.0, 10.0, -1.0, &bad) ==
          TS_E_STEP_NOT_POSITIVE);
    CHECK(bad == nullptr);
}

TEST_CASE("equilibria through the C surface") {
    const ts_params p = coexistence_params();
    ts_steady_report reports[3];
    REQUIRE(ts_boundary_steady_states(&p, reports) == TS_OK);
    CHECK(reports[0].kind == TS_STEADY_DISEASE_FREE);
    CHECK(reports[0].state.s == 10000.0);
    CHECK(reports[1].state.i1 == Approx(1666.6666666666667));
    CHECK(reports[1].physical == 1);

    ts_steady_report coex;
    int exists = 0;
    int failing = -1;
    REQUIRE(ts_solve_coexistence(&p, &coex, &exists, &failing) == TS_OK);
    CHECK(exists == 1);
    CHECK(coex.state.i2 == Approx(4269.2546880147171));

    ts_params b = coexistence_params();
    b.beta1 = 0.3;
    REQUIRE(ts_solve_coexistence(&b, &coex, &exists, &failing) == TS_OK);
    CHECK(exists == 0);
    CHECK(failing == TS_THRESHOLD_R12);

    ts_reduced_state steady;
    int regime = -1;
    int conjectured = -1;
    REQUIRE(ts_solve_reduced_steady_state(&p, &steady, &regime,
                                          &conjectured) == TS_OK);
    CHECK(regime == 1);
    CHECK(conjectured == 0);
    CHECK(steady.i2 == Approx(4269.2546880147171).epsilon(1e-6));
}

TEST_CASE("phase and region queries") {
    const ts_params p = coexistence_params();
    int label = 0;
    int contested = -1;
    REQUIRE(ts_classify_region(&p, &label, &contested) == TS_OK);
    CHECK(label == 4);
    CHECK(contested == 0);

    const ts_reduced_state y{2000.0, 1000.0};
    int si = 0, sr = 0;
    REQUIRE(ts_region_direction(&p, &y, &si, &sr) == TS_OK);
    CHECK(si == 1);
    CHECK(sr == 1);

    double dulac = 0.0;
    REQUIRE(ts_dulac_expression(&p, &y, &dulac) == TS_OK);
    CHECK(dulac < 0.0);
    const ts_reduced_state axis{0.0, 1000.0};
    CHECK(ts_dulac_expression(&p, &axis, &dulac) == TS_E_OUT_OF_DOMAIN);
}

TEST_CASE("command runner end to end") {
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / "twostrain_capi_test";
    fs::create_directories(dir);
    const fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "[analyze]\nbeta1 = 0.4\nbeta2 = 0.6\ngamma1 = 0.2\n"
               "gamma2 = 0.1\nsigma1 = 0.1\nsigma2 = 0.1\nepsilon = 0\n"
               "n_pop = 10000\n";
    }
    const fs::path out_dir = dir / "out";
    CHECK(ts_run_command("analyze", cfg.string().c_str(),
                         out_dir.string().c_str(), 0, 0, 1) == TS_OK);
    CHECK(fs::exists(out_dir / "analysis.txt"));

    CHECK(ts_run_command("analyze", (dir / "missing.cfg").string().c_str(),
                         out_dir.string().c_str(), 0, 0, 1) == TS_E_CONFIG);
    CHECK(ts_run_command("bogus", cfg.string().c_str(),
                         out_dir.string().c_str(), 0, 0, 1) ==
          TS_E_INVALID_ARGUMENT);
    fs::remove_all(dir);
}
