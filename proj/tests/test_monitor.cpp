// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pot1d/monitor.hpp"
#include "pot1d/stepper.hpp"

namespace pot1d {
namespace {

constexpr double kQuad = kDefaultQuadTol;

/// Row with grad_centered(row, grid, j) == t[j] for j = 0..J, built by the
/// recursion U_{j+1} = U_{j-1} + 2 dx t_j.
GridRow row_with_gradient(const Grid& grid, const std::vector<double>& t) {
    GridRow row(grid.j_count());
    row[-1] = 0.0;
    row[0] = 0.0;
    for (int j = 0; j <= grid.j_count(); ++j) {
        row[j + 1] = row[j - 1] + 2.0 * grid.dx() * t[static_cast<std::size_t>(j)];
    }
    return row;
}

std::vector<double> oracle_on(const CatalogEntry& e, const Grid& grid) {
    const auto n = grid.nodes();
    return optimal_map_sweep(OptimalMap{e}, n.subspan(1, static_cast<std::size_t>(grid.j_count()) + 1));
}

TEST(ErrorFunction, ZeroForIdentityTransport) {
    const auto e = catalog("uniform_uniform");
    const Grid grid(-1.0, 1.0, 32);
    const auto row = sample_row(grid, e.u0);
    for (int j = 0; j <= 32; ++j) EXPECT_NEAR(error_function(e, row, grid, j), 0.0, 2.0 * kQuad);
}

TEST(ErrorFunction, UnitSourceWideTarget) {
    const auto e = make_custom_entry("t", make_piecewise_cubic(0.0, 1.0, {}, {{{1.0, 0, 0, 0}}}),
                                     make_piecewise_cubic(-1.0, 1.0, {}, {{{0.5, 0, 0, 0}}}));
    const Grid grid(0.0, 1.0, 10);
    const auto row = sample_row(grid, [](double x) { return 0.5 * x * x; });  // S(x) = x
    EXPECT_NEAR(error_function(e, row, grid, 5), 0.25, 2.0 * kQuad);
}

TEST(ErrorFunction, VanishesOnTheExactMap) {
    for (const auto& id : catalog_ids()) {
        const auto e = catalog(id);
        const Grid grid(e.f.interval_lo, e.f.interval_hi, 64);
        const auto row = row_with_gradient(grid, oracle_on(e, grid));
        ErrorEvaluator ev(e, grid, kQuad);
        std::vector<int> all(65);
        std::iota(all.begin(), all.end(), 0);
        const auto es = ev.evaluate(row, all, kQuad);
        for (int j = 0; j <= 64; ++j) {
            EXPECT_LE(error_function(e, row, grid, j), 2.0 * kQuad) << id << " j=" << j;
            EXPECT_LE(es[static_cast<std::size_t>(j)], 2.0 * kQuad) << id << " j=" << j;
        }
    }
}

TEST(ErrorFunction, ClampsAndFlagsExcursions) {
    const auto e = catalog("ex_simple");
    const Grid grid(-1.0, 1.0, 16);
    const auto row = sample_row(grid, [](double x) { return x * x; });  // grad = 2x
    const auto s = error_sample(e, row, grid, 16);
    EXPECT_TRUE(s.clamped);
    EXPECT_NEAR(s.value, 0.0, 2.0 * kQuad);  // clamped to D = 1, F(1) = G(1) = 1
    EXPECT_FALSE(error_sample(e, row, grid, 8).clamped);

    ErrorEvaluator ev(e, grid, kQuad);
    const std::vector<int> js{0, 8, 16};
    ev.evaluate(row, js, kQuad);
    EXPECT_EQ(ev.excursions(), 2);
}

TEST(MaxError, SingleProbeAndSupersets) {
    const auto e = catalog("ex_simple");
    const Grid grid(-1.0, 1.0, 32);
    const auto row = sample_row(grid, e.u0);
    const std::vector<int> one{7};
    EXPECT_DOUBLE_EQ(max_error(e, row, grid, one), error_function(e, row, grid, 7));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> pick(0, 32);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> sub{pick(rng), pick(rng)};
        auto super = sub;
        super.push_back(pick(rng));
        EXPECT_GE(max_error(e, row, grid, super), max_error(e, row, grid, sub));
    }
}

TEST(MaxError, EvaluatorMatchesDirect) {
    const auto e = catalog("ex_piecewise_mixed");
    const Grid grid(-1.0, 1.0, 40);
    const auto row = sample_row(grid, [](double x) { return 0.5 * x * x + 0.1 * std::sin(x); });
    ErrorEvaluator ev(e, grid, kQuad);
    std::vector<int> js{40, 3, 17, 0, 22};
    const auto es = ev.evaluate(row, js, kQuad);
    for (std::size_t k = 0; k < js.size(); ++k) {
        EXPECT_NEAR(es[k], error_function(e, row, grid, js[k]), 4.0 * kQuad);
    }
}

TEST(MapErrorBound, Examples) {
    EXPECT_NEAR(map_error_bound(0.01, catalog("ex_simple")), 0.03, 1e-12);
    EXPECT_NEAR(map_error_bound(0.001, catalog("ex_near_zero")), 0.002, 1e-15);
    const double i0 = bessel_i0(1.0);
    EXPECT_NEAR(map_error_bound(0.01, catalog("ex_vonmises_quantile")),
                0.01 * 2.0 * M_PI * i0 * std::exp(1.0), 1e-12);
}

TEST(Monotonicity, HalfSquareIsMonotone) {
    const Grid grid(-1.0, 1.0, 32);
    const auto r = monotonicity_check(sample_row(grid, [](double x) { return 0.5 * x * x; }), grid);
    EXPECT_TRUE(r.ok);
    EXPECT_FALSE(r.first_violation.has_value());
}

TEST(Monotonicity, FlippedValueIsReported) {
    const Grid grid(-1.0, 1.0, 32);
    auto row = sample_row(grid, [](double x) { return 0.5 * x * x + 1.0; });
    row[10] = -row[10];
    const auto r = monotonicity_check(row, grid);
    EXPECT_FALSE(r.ok);
    ASSERT_TRUE(r.first_violation.has_value());
    EXPECT_GE(*r.first_violation, 9);
    EXPECT_LE(*r.first_violation, 11);
}

TEST(Monotonicity, ImpliedByNonnegativeLap) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Grid grid(0.0, 1.0, 50);
    for (int trial = 0; trial < 50; ++trial) {
        // Integrate a random nonnegative second difference twice.
        GridRow row(50);
        row[-1] = u(rng);
        row[0] = u(rng);
        double slope = row[0] - row[-1];
        for (int j = 0; j <= 50; ++j) {
            slope += grid.dx() * grid.dx() * u(rng) * (trial % 3 == 0 ? 0.0 : 1.0);
            row[j + 1] = row[j] + slope;
        }
        // Rounding in the double summation, relative to dx^2.
        ASSERT_GE(min_lap(row, grid), -1e-12 / (grid.dx() * grid.dx()));
        EXPECT_TRUE(monotonicity_check(row, grid).ok);
    }
}

TEST(OracleError, IdentityTransport) {
    const auto e = catalog("uniform_uniform");
    const Grid grid(-1.0, 1.0, 64);
    EXPECT_LE(oracle_error(e, sample_row(grid, e.u0), grid, OptimalMap{e}), 1e-10);
}

TEST(ProbeIndices, EvenlySpacedWithEnds) {
    for (int count : {2, 3, 8, 17, 65}) {
        const auto p = probe_indices(64, count);
        EXPECT_EQ(p.front(), 0);
        EXPECT_EQ(p.back(), 64);
        EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
        EXPECT_EQ(std::adjacent_find(p.begin(), p.end()), p.end());
        EXPECT_EQ(static_cast<int>(p.size()), std::min(count, 65));
    }
}

}  // namespace
}  // namespace pot1d
