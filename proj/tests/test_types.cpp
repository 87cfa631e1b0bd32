#include <doctest.h>

#include <functional>

#include "core/types.hpp"
#include "support.hpp"

using namespace twostrain;

namespace {

errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ModelError& e) {
        return e.code();
    }
    return errc::ok;
}

} // namespace

TEST_SUITE("types") {

TEST_CASE("benchmark parameter set validates") {
    const ModelParams p = validate_params(test::coexistence_params());
    CHECK(p.beta1 == 0.4);
    CHECK(p.n_pop == 10000.0);
}

TEST_CASE("validation is idempotent") {
    const ModelParams once = validate_params(test::cross_immunity_params());
    const ModelParams twice = validate_params(once);
    CHECK(once.beta1 == twice.beta1);
    CHECK(once.beta2 == twice.beta2);
    CHECK(once.gamma1 == twice.gamma1);
    CHECK(once.gamma2 == twice.gamma2);
    CHECK(once.sigma1 == twice.sigma1);
    CHECK(once.sigma2 == twice.sigma2);
    CHECK(once.epsilon == twice.epsilon);
    CHECK(once.n_pop == twice.n_pop);
}

TEST_CASE("epsilon outside [0,1] is rejected") {
    ModelParams p = test::coexistence_params();
    p.epsilon = 1.5;
    CHECK(thrown_code([&] { validate_params(p); }) ==
          errc::epsilon_out_of_range);
    p.epsilon = -0.1;
    CHECK(thrown_code([&] { validate_params(p); }) ==
          errc::epsilon_out_of_range);
}

TEST_CASE("nonpositive population is rejected") {
    ModelParams p = test::coexistence_params();
    p.n_pop = 0.0;
    CHECK(thrown_code([&] { validate_params(p); }) ==
          errc::nonpositive_population);
}

TEST_CASE("negative and degenerate rates are rejected") {
    ModelParams p = test::coexistence_params();
    p.beta1 = -0.1;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::negative_rate);
    p = test::coexistence_params();
    p.gamma2 = 0.0; // recovery rates must be strictly positive
    CHECK(thrown_code([&] { validate_params(p); }) == errc::negative_rate);
    p = test::coexistence_params();
    p.sigma1 = -1e-9;
    CHECK(thrown_code([&] { validate_params(p); }) == errc::negative_rate);
}

TEST_CASE("state validation is exact") {
    CHECK(validate_state(FullState{1.0, 0.0, 0.0, 0.0, 0.0}).s == 1.0);
    CHECK(thrown_code([] {
              validate_state(FullState{-1e-300, 0.0, 0.0, 0.0, 0.0});
          }) == errc::nonfinite_state);
}

TEST_CASE("reduced state must lie in the trapping triangle") {
    const ModelParams p = test::coexistence_params();
    CHECK(validate_state(p, ReducedState{4000.0, 6000.0}).i2 == 4000.0);
    CHECK(thrown_code([&] {
              validate_state(p, ReducedState{6000.0, 6000.0});
          }) == errc::nonfinite_state);
    CHECK(thrown_code([&] {
              validate_state(p, ReducedState{-1.0, 0.0});
          }) == errc::nonfinite_state);
}

TEST_CASE("exit code mapping") {
    CHECK(exit_code_for(errc::ok) == 0);
    CHECK(exit_code_for(errc::config_error) == 2);
    CHECK(exit_code_for(errc::epsilon_out_of_range) == 2);
    CHECK(exit_code_for(errc::parse_error) == 3);
    CHECK(exit_code_for(errc::negative_cases) == 3);
    CHECK(exit_code_for(errc::nonfinite_state) == 4);
    CHECK(exit_code_for(errc::bisection_stagnated) == 4);
}

} // TEST_SUITE
