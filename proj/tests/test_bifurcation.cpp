#include <doctest.h>

#include <cmath>

#include "core/bifurcation.hpp"
#include "core/dynamics.hpp"
#include "core/equilibria.hpp"
#include "support.hpp"

using namespace twostrain;
using doctest::Approx;

namespace {

ModelParams unit_rates() {
    // gamma = sigma = 1 backbone of the region scans
    return {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 10000.0};
}

} // namespace

TEST_SUITE("bifurcation") {

TEST_CASE("benchmark scenarios classify as IV and III") {
    CHECK(classify_region(test::coexistence_params()).label == Region::IV);
    CHECK(classify_region(test::takeover_params()).label == Region::III);
    CHECK(classify_region(test::cross_immunity_params()).label == Region::III);
}

TEST_CASE("subcritical strains classify as region I") {
    ModelParams p = test::coexistence_params();
    p.beta1 = 0.5 * p.gamma1;
    p.beta2 = 0.5 * p.gamma2;
    CHECK(classify_region(p).label == Region::I);
}

TEST_CASE("threshold ties fall to the lower-numbered region") {
    ModelParams p = unit_rates();
    p.beta1 = 1.0; // R1 = 1 exactly
    p.beta2 = 0.5;
    CHECK(classify_region(p).label == Region::I);
    p.beta2 = 2.0; // R2 > 1 with R1 = 1
    CHECK(classify_region(p).label == Region::III);
}

TEST_CASE("single-strain dominance cases") {
    ModelParams p = unit_rates();
    p.beta1 = 1.8;
    p.beta2 = 0.5;
    CHECK(classify_region(p).label == Region::II);
    p.beta1 = 0.5;
    p.beta2 = 1.8;
    CHECK(classify_region(p).label == Region::III);
    // both supercritical, emerging cannot invade (R21 <= 1)
    p = unit_rates();
    p.beta1 = 1.8;
    p.beta2 = 1.2;
    p.sigma1 = 100.0;
    const RegionLabel label = classify_region(p);
    CHECK(label.thresholds.r21 < 1.0);
    CHECK(label.label == Region::II);
    CHECK_FALSE(label.contested);
}

TEST_CASE("the contested corner cannot occur with strict supercriticality") {
    // R12 * R21 = s12 * s21 with both s-factors >= 1 when beta_i > gamma_i,
    // so both invasion numbers cannot drop below 1 simultaneously
    std::mt19937_64 gen(55);
    for (int k = 0; k < 1000; ++k) {
        const RegionLabel label = classify_region(test::draw_params(gen));
        CHECK_FALSE(label.contested);
        if (label.thresholds.r1 > 1.0 && label.thresholds.r2 > 1.0) {
            CHECK(label.thresholds.r12 * label.thresholds.r21 >=
                  1.0 - 1e-12);
        }
    }
}

TEST_CASE("region IV is exactly the all-supercritical set") {
    std::mt19937_64 gen(56);
    for (int k = 0; k < 1000; ++k) {
        const RegionLabel label = classify_region(test::draw_params(gen));
        const ReproductionSet& r = label.thresholds;
        const bool all_above =
            std::min({r.r1, r.r2, r.r12, r.r21}) > 1.0;
        CHECK((label.label == Region::IV) == all_above);
        const bool both_below = r.r1 <= 1.0 && r.r2 <= 1.0;
        CHECK((label.label == Region::I) == both_below);
    }
}

TEST_CASE("uniform axes hit both endpoints") {
    const AxisSpec axis = make_axis(ScanAxis::beta1, 0.0, 2.0, 21);
    CHECK(axis.values.front() == 0.0);
    CHECK(axis.values.back() == 2.0);
    CHECK(axis.values[10] == Approx(1.0).epsilon(1e-15));
    CHECK(axis.values.size() == 21);
}

TEST_CASE("transmission-plane region scan") {
    const ModelParams fixed = unit_rates();
    const AxisSpec a1 = make_axis(ScanAxis::beta1, 0.0, 2.0, 21);
    const AxisSpec a2 = make_axis(ScanAxis::beta2, 0.0, 2.0, 21);
    const ScanGrid<RegionLabel> grid = scan_regions(fixed, a1, a2);
    REQUIRE(grid.cells.size() == 441);

    auto label_at = [&](double b1, double b2) {
        const auto i = static_cast<std::size_t>(std::llround(b1 * 10.0));
        const auto j = static_cast<std::size_t>(std::llround(b2 * 10.0));
        return grid.at(i, j).label;
    };
    CHECK(label_at(0.5, 0.5) == Region::I);
    CHECK(label_at(1.5, 0.5) == Region::II);
    CHECK(label_at(0.5, 1.5) == Region::III);
    CHECK(label_at(2.0, 2.0) == Region::IV);
    // the R1 = 1 boundary sits exactly on the beta1 = 1 column
    CHECK(label_at(1.0, 0.5) == Region::I);
    CHECK(label_at(1.1, 0.5) == Region::II);
    CHECK(label_at(1.0, 1.5) == Region::III);
    CHECK(label_at(1.1, 1.5) != Region::I);
}

TEST_CASE("invasion heatmap corner cell") {
    ModelParams fixed = unit_rates();
    fixed.epsilon = 0.5;
    const AxisSpec a1 = make_axis(ScanAxis::beta1, 1.0, 2.0, 11);
    const AxisSpec a2 = make_axis(ScanAxis::beta2, 1.0, 2.0, 11);
    const ScanGrid<double> grid =
        scan_scalar(fixed, a1, a2, ScanQuantity::r21);
    CHECK(grid.at(10, 10) == Approx(1.5).epsilon(1e-12));
}

TEST_CASE("immunity and cross-immunity heatmap cells") {
    ModelParams fixed = unit_rates();
    fixed.beta1 = 4.0;
    fixed.beta2 = 2.0;
    const AxisSpec a1 = make_axis(ScanAxis::sigma2, 1e-9, 1.0, 11);
    const AxisSpec a2 = make_axis(ScanAxis::epsilon, 0.0, 1.0, 11);
    const ScanGrid<double> grid =
        scan_scalar(fixed, a1, a2, ScanQuantity::r12);
    CHECK(grid.at(10, 0) == Approx(3.0).epsilon(1e-12));   // sigma2=1, eps=0
    CHECK(grid.at(0, 10) == Approx(2.0).epsilon(1e-6));    // sigma2->0, eps=1
    // r21 never depends on sigma2 or epsilon
    const ScanGrid<double> other =
        scan_scalar(fixed, a1, a2, ScanQuantity::r21);
    for (double v : other.cells) {
        CHECK(v == other.cells.front());
    }
}

TEST_CASE("r21 decreases along sigma1 when beta1 is supercritical") {
    ModelParams fixed = unit_rates();
    fixed.beta1 = 1.5;
    fixed.beta2 = 1.2;
    const AxisSpec a1 = make_axis(ScanAxis::sigma1, 0.1, 10.0, 15);
    const AxisSpec a2 = make_axis(ScanAxis::epsilon, 0.0, 1.0, 3);
    const ScanGrid<double> grid =
        scan_scalar(fixed, a1, a2, ScanQuantity::r21);
    for (std::size_t j = 0; j < a2.values.size(); ++j) {
        for (std::size_t i = 1; i < a1.values.size(); ++i) {
            CHECK(grid.at(i, j) < grid.at(i - 1, j));
        }
    }
}

TEST_CASE("the coexistence region shrinks as cross-immunity grows") {
    std::size_t previous = static_cast<std::size_t>(-1);
    for (double epsilon : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        ModelParams fixed = unit_rates();
        fixed.epsilon = epsilon;
        const ScanGrid<RegionLabel> grid =
            scan_regions(fixed, make_axis(ScanAxis::beta1, 0.0, 2.0, 21),
                         make_axis(ScanAxis::beta2, 0.0, 2.0, 21));
        std::size_t count = 0;
        for (const RegionLabel& cell : grid.cells) {
            count += cell.label == Region::IV;
        }
        CHECK(count <= previous);
        previous = count;
    }
}

TEST_CASE("region IV cells admit a coexistence solve") {
    const ModelParams fixed = unit_rates();
    const AxisSpec a1 = make_axis(ScanAxis::beta1, 0.1, 2.0, 10);
    const AxisSpec a2 = make_axis(ScanAxis::beta2, 0.1, 2.0, 10);
    const ScanGrid<RegionLabel> grid = scan_regions(fixed, a1, a2);
    for (std::size_t i = 0; i < a1.values.size(); ++i) {
        for (std::size_t j = 0; j < a2.values.size(); ++j) {
            const ModelParams cell =
                apply_axes(fixed, a1, a1.values[i], a2, a2.values[j]);
            const bool exists =
                solve_coexistence_full(cell).state.has_value();
            CHECK(exists == (grid.at(i, j).label == Region::IV));
        }
    }
}

TEST_CASE("invalid axes are rejected") {
    const ModelParams fixed = unit_rates();
    CHECK_THROWS_AS(parse_axis("r_nought"), ModelError);
    CHECK_THROWS_AS(make_axis(ScanAxis::beta1, 2.0, 0.0, 5), ModelError);
    CHECK_THROWS_AS(scan_regions(fixed,
                                 make_axis(ScanAxis::beta1, 0.0, 1.0, 5),
                                 make_axis(ScanAxis::beta1, 0.0, 1.0, 5)),
                    ModelError);
    // a gamma axis through zero produces an invalid cell
    CHECK_THROWS_AS(scan_regions(fixed,
                                 make_axis(ScanAxis::gamma1, 0.0, 1.0, 5),
                                 make_axis(ScanAxis::beta2, 0.0, 1.0, 5)),
                    ModelError);
}

TEST_CASE("long-run simulation agrees with the region label") {
    // light spot check; the acceptance suite samples 90 cells
    const struct {
        double beta1, beta2;
    } cells[] = {{1.8, 1.2}, {1.2, 1.8}, {2.0, 2.0}, {0.5, 0.5}};
    for (const auto& cell : cells) {
        ModelParams p = unit_rates();
        p.beta1 = cell.beta1;
        p.beta2 = cell.beta2;
        const RegionLabel label = classify_region(p);
        FullState x0;
        x0.i1 = 0.1 * p.n_pop;
        x0.r1 = 0.05 * p.n_pop;
        x0.i2 = 0.1 * p.n_pop;
        x0.r2 = 0.05 * p.n_pop;
        x0.s = p.n_pop - x0.i1 - x0.r1 - x0.i2 - x0.r2;
        const FullState xe =
            integrate_full(p, x0, 0.0, 10000.0, 0.05).states.back();
        const bool strain1 = xe.i1 > 1e-3 * p.n_pop;
        const bool strain2 = xe.i2 > 1e-3 * p.n_pop;
        switch (label.label) {
        case Region::I: CHECK((!strain1 && !strain2)); break;
        case Region::II: CHECK((strain1 && !strain2)); break;
        case Region::III: CHECK((!strain1 && strain2)); break;
        case Region::IV: CHECK((strain1 && strain2)); break;
        }
    }
}

} // TEST_SUITE
