#include <doctest.h>

#include <cmath>

#include "core/dynamics.hpp"
#include "core/equilibria.hpp"
#include "core/phase.hpp"
#include "core/reproduction.hpp"
#include "support.hpp"

using namespace twostrain;
using doctest::Approx;

namespace {

bool attractor_hypotheses(const ModelParams& p) {
    const ReproductionSet r = closed_form_reproduction(p);
    return r.r1 > 1.05 && r.r2 > 1.05 && r.r21 > 1.05;
}

/// Central-difference divergence of the (1/I2)-scaled reduced field.
double dulac_by_differences(const ModelParams& p, const ReducedState& y,
                            double h) {
    auto scaled_i2 = [&](double i2, double r2) {
        return reduced_rhs(p, {i2, r2}).i2 / i2;
    };
    auto scaled_r2 = [&](double i2, double r2) {
        return reduced_rhs(p, {i2, r2}).r2 / i2;
    };
    return (scaled_i2(y.i2 + h, y.r2) - scaled_i2(y.i2 - h, y.r2)) /
               (2.0 * h) +
           (scaled_r2(y.i2, y.r2 + h) - scaled_r2(y.i2, y.r2 - h)) /
               (2.0 * h);
}

} // namespace

TEST_SUITE("phase") {

TEST_CASE("r2-nullcline passes through the origin") {
    const ModelParams p = test::coexistence_params();
    const auto r2 = nullcline_r2(p, NullclineKind::r2_nullcline, 0.0);
    REQUIRE(r2.has_value());
    CHECK(*r2 == 0.0);
}

TEST_CASE("i2-nullcline R2-intercept closed form") {
    const ModelParams p = test::coexistence_params();
    const auto r2 = nullcline_r2(p, NullclineKind::i2_nullcline, 0.0);
    REQUIRE(r2.has_value());
    CHECK(*r2 == Approx(6666.6666666666667).epsilon(1e-7));
}

TEST_CASE("nullcline monotonicity for epsilon 0 and 1") {
    for (double epsilon : {0.0, 1.0}) {
        ModelParams p = test::coexistence_params();
        p.epsilon = epsilon;
        std::vector<double> grid;
        for (int k = 0; k < 40; ++k) {
            grid.push_back(4100.0 * k / 39.0);
        }
        const auto [i2n, r2n] = sample_nullclines(p, grid);
        CHECK(i2n.monotone); // strictly decreasing
        CHECK(r2n.monotone); // strictly increasing
        CHECK(i2n.which == NullclineKind::i2_nullcline);
        // residual at each returned point is tiny
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (i2n.r2[k]) {
                CHECK(std::abs(i2_nullcline_residual(
                          p, {grid[k], *i2n.r2[k]})) <=
                      1e-8 * max_rate(p));
            }
            if (r2n.r2[k]) {
                CHECK(std::abs(r2_nullcline_residual(
                          p, {grid[k], *r2n.r2[k]})) <=
                      1e-8 * p.n_pop * max_rate(p));
            }
        }
    }
}

TEST_CASE("nullcline sampling requires the attractor hypotheses") {
    ModelParams p = test::coexistence_params();
    p.beta1 = 0.1; // R1 < 1
    CHECK_THROWS_AS(sample_nullclines(p, {0.0, 100.0}), ModelError);
}

TEST_CASE("direction signs in the four nullcline-bounded regions") {
    const ModelParams p = test::coexistence_params();
    const double i2 = 2000.0;
    const double on_f = *nullcline_r2(p, NullclineKind::i2_nullcline, i2);
    const double on_g = *nullcline_r2(p, NullclineKind::r2_nullcline, i2);
    const double above = std::max(on_f, on_g) + 300.0;
    const double below = std::min(on_f, on_g) - 300.0;
    REQUIRE(below > 0.0);
    REQUIRE(i2 + above < p.n_pop);

    CHECK(region_direction(p, {i2, above}) == std::pair{-1, -1});
    CHECK(region_direction(p, {i2, below}) == std::pair{1, 1});
    // between the curves the signs split
    const double mid = 0.5 * (on_f + on_g);
    const auto [di2, dr2] = region_direction(p, {i2, mid});
    CHECK(di2 * dr2 == -1);
    // on the I2-nullcline the I2 component is numerically zero
    CHECK(region_direction(p, {i2, on_f}).first == 0);
}

TEST_CASE("direction field matches the nullcline geometry on a grid") {
    for (double epsilon : {0.0, 1.0}) {
        ModelParams p = test::coexistence_params();
        p.epsilon = epsilon;
        REQUIRE(attractor_hypotheses(p));
        const double tol = 1e-8 * p.n_pop * max_rate(p);
        for (int a = 1; a < 20; ++a) {
            for (int b = 1; b < 20; ++b) {
                const double i2 = p.n_pop * a / 20.0;
                const double r2 = p.n_pop * b / 20.0;
                if (i2 + r2 >= p.n_pop) {
                    continue;
                }
                const auto on_f =
                    nullcline_r2(p, NullclineKind::i2_nullcline, i2);
                const auto on_g =
                    nullcline_r2(p, NullclineKind::r2_nullcline, i2);
                // columns where a nullcline left the triangle resolve to a
                // definite side
                const double f_level = on_f ? *on_f : -1.0;
                const double g_level = on_g ? *on_g : p.n_pop + 1.0;
                if (std::abs(r2 - f_level) < 50.0 ||
                    std::abs(r2 - g_level) < 50.0) {
                    continue; // too close to a curve for a sign call
                }
                const ReducedState d = reduced_rhs(p, {i2, r2});
                if (r2 > f_level) {
                    CHECK(d.i2 < tol);
                } else {
                    CHECK(d.i2 > -tol);
                }
                if (r2 > g_level) {
                    CHECK(d.r2 < tol);
                } else {
                    CHECK(d.r2 > -tol);
                }
            }
        }
    }
}

TEST_CASE("switching line endpoints stay in the triangle") {
    const auto none = switching_line(test::takeover_params());
    REQUIRE(none.has_value()); // R1 = 1.5 > 1

    ModelParams sub = test::coexistence_params();
    sub.beta1 = 0.1;
    CHECK_FALSE(switching_line(sub).has_value());

    const auto vertical = switching_line(test::coexistence_params());
    REQUIRE(vertical.has_value());
    CHECK(vertical->threshold == Approx(5000.0).epsilon(1e-12));
    CHECK(vertical->end_a.i2 == Approx(5000.0));
    CHECK(vertical->end_b.i2 == Approx(5000.0)); // epsilon = 0: vertical

    const auto slanted = switching_line(test::cross_immunity_params());
    REQUIRE(slanted.has_value());
    for (const ReducedState& e : {slanted->end_a, slanted->end_b}) {
        CHECK(e.i2 >= 0.0);
        CHECK(e.r2 >= 0.0);
        CHECK(e.i2 + e.r2 <= slanted->threshold / 0.5 + 1e-9);
        CHECK(e.i2 + 0.5 * e.r2 == Approx(slanted->threshold));
    }
}

TEST_CASE("dulac expression is negative and matches finite differences") {
    std::mt19937_64 gen(9001);
    for (double epsilon : {0.0, 1.0}) {
        int draws = 0;
        while (draws < 50) {
            ModelParams p = test::draw_params(gen);
            p.epsilon = epsilon;
            if (!attractor_hypotheses(p)) {
                continue;
            }
            const double threshold = switching_threshold(p);
            const double band = 1e-3 * p.n_pop;
            const double h = 1e-4 * p.n_pop;
            for (int a = 1; a < 20; ++a) {
                for (int b = 1; b < 20; ++b) {
                    const double i2 = p.n_pop * a / 20.0;
                    const double r2 = p.n_pop * b / 20.0;
                    if (i2 + r2 >= p.n_pop) {
                        continue;
                    }
                    const double load = i2 + p.epsilon * r2;
                    if (std::abs(load - threshold) <= band) {
                        continue;
                    }
                    const double closed = dulac_expression(p, {i2, r2});
                    CHECK(closed < 0.0);
                    // derivative stencils must stay inside one branch
                    if (std::abs(load - threshold) <=
                        2.0 * h * (1.0 + p.epsilon)) {
                        continue;
                    }
                    const double fd = dulac_by_differences(p, {i2, r2}, h);
                    CHECK(closed ==
                          Approx(fd).epsilon(1e-3).scale(
                              std::abs(closed)));
                }
            }
            ++draws;
        }
    }
}

TEST_CASE("stability signs at the benchmark steady states") {
    for (const ModelParams& p : {test::coexistence_params(), test::takeover_params()}) {
        const ReducedSteadyState rs = solve_reduced_steady_state(p);
        const StabilityReport report = stability_sign_check(p, rs.state);
        CHECK(report.trace < 0.0);
        CHECK(report.determinant > 0.0);
        CHECK(report.sign_pattern_ok);
    }
}

TEST_CASE("stability check rejects non-steady points") {
    const ModelParams p = test::coexistence_params();
    CHECK_THROWS_AS(stability_sign_check(p, {1000.0, 1000.0}), ModelError);
}

TEST_CASE("stability check shrinks its stencil near the switching line") {
    // drive R12 toward 1 until the steady state sits closer to the line
    // than the default 1e-5*N stencil
    ModelParams p = test::coexistence_params();
    auto line_gap = [&](double beta1) {
        p.beta1 = beta1;
        const ReducedSteadyState rs = solve_reduced_steady_state(p);
        return rs.state.i2 + p.epsilon * rs.state.r2 -
               switching_threshold(p);
    };
    // |line_gap| grows with beta1 above the R12 = 1 point near 0.3428571
    double lo = 0.3428572;
    double hi = 0.4;
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(line_gap(mid)) > 3e-6 * p.n_pop ? hi : lo) = mid;
    }
    p.beta1 = 0.5 * (lo + hi);
    const ReducedSteadyState rs = solve_reduced_steady_state(p);
    const double gap = std::abs(rs.state.i2 - switching_threshold(p));
    REQUIRE(gap < 1e-5 * p.n_pop); // the default stencil would straddle
    REQUIRE(gap > 1e-8 * p.n_pop); // but a shrunk one resolves it
    const StabilityReport report = stability_sign_check(p, rs.state);
    CHECK(report.trace < 0.0);
    CHECK(report.determinant > 0.0);
}

TEST_CASE("a steady state exactly on the line is reported") {
    // beta1 = 1.5, beta2 = 3, gamma = 1, sigma2 = 1 gives R12 = 1 exactly
    // and parks the emerging-only steady state on the switching line
    ModelParams p;
    p.beta1 = 1.5;
    p.beta2 = 3.0;
    p.gamma1 = p.gamma2 = 1.0;
    p.sigma1 = 0.5;
    p.sigma2 = 1.0;
    p.epsilon = 0.0;
    p.n_pop = 10000.0;
    const ReproductionSet r = closed_form_reproduction(p);
    REQUIRE(r.r12 == 1.0);
    const double t = switching_threshold(p);
    try {
        stability_sign_check(p, {t, t});
        FAIL("expected on_switching_line");
    } catch (const ModelError& e) {
        CHECK(e.code() == errc::on_switching_line);
    }
}

TEST_CASE("nullcline gap closes at the reduced steady state") {
    for (const ModelParams& p :
         {test::coexistence_params(), test::takeover_params(), test::cross_immunity_params()}) {
        const ReducedSteadyState rs = solve_reduced_steady_state(p);
        const auto on_f =
            nullcline_r2(p, NullclineKind::i2_nullcline, rs.state.i2);
        const auto on_g =
            nullcline_r2(p, NullclineKind::r2_nullcline, rs.state.i2);
        REQUIRE(on_f.has_value());
        REQUIRE(on_g.has_value());
        CHECK(std::abs(*on_f - rs.state.r2) <= 1e-6 * p.n_pop);
        CHECK(std::abs(*on_f - *on_g) <= 1e-6 * p.n_pop);
    }
}

} // TEST_SUITE
