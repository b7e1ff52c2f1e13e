// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pot1d/error.hpp"
#include "pot1d/oracle.hpp"

namespace pot1d {
namespace {

constexpr double kQuad = kDefaultQuadTol;

CatalogEntry unit_to_pm1() {
    return make_custom_entry("unit_to_pm1",
                             make_piecewise_cubic(0.0, 1.0, {}, {{{1.0, 0, 0, 0}}}),
                             make_piecewise_cubic(-1.0, 1.0, {}, {{{0.5, 0, 0, 0}}}));
}

TEST(InvertCdf, LinearCdf) {
    const auto g = catalog("uniform_uniform").g;
    EXPECT_NEAR(invert_cdf(g, 0.75, 1e-12, kQuad), 0.5, 1e-11);
}

TEST(InvertCdf, EndpointsExact) {
    for (const auto& id : catalog_ids()) {
        const auto g = catalog(id).g;
        EXPECT_EQ(invert_cdf(g, 0.0, 1e-12, kQuad), g.interval_lo) << id;
        EXPECT_EQ(invert_cdf(g, 1.0, 1e-12, kQuad), g.interval_hi) << id;
    }
}

TEST(InvertCdf, VonMisesMedianIsZero) {
    const auto g = catalog("ex_vonmises_quantile").g;
    EXPECT_NEAR(invert_cdf(g, 0.5, 1e-12, kQuad), 0.0, 1e-9);
}

TEST(InvertCdf, RejectsProbabilitiesOutsideUnitInterval) {
    const auto g = catalog("ex_simple").g;
    EXPECT_THROW(invert_cdf(g, -1e-3, 1e-12, kQuad), DomainError);
    EXPECT_THROW(invert_cdf(g, 1.0 + 1e-9, 1e-12, kQuad), DomainError);
}

TEST(InvertCdf, RoundTripOnRandomProbabilities) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& id : catalog_ids()) {
        const auto g = catalog(id).g;
        const double inv_tol = 1e-12;
        // Bracket width times max g, plus the CDF error of the two evaluations.
        const double tol = extrema(g, 10000).max_val * inv_tol + 2.0 * kQuad;
        for (int k = 0; k < 100; ++k) {
            const double p = u(rng);
            const double y = invert_cdf(g, p, inv_tol, kQuad);
            EXPECT_NEAR(cdf(g, y), p, tol) << id << " p=" << p;
        }
    }
}

TEST(OptimalMap, UniformToWider) {
    const OptimalMap om{unit_to_pm1()};
    EXPECT_NEAR(optimal_map(om, 0.25), -0.5, 1e-10);
    EXPECT_EQ(optimal_map(om, 0.0), -1.0);
    EXPECT_EQ(optimal_map(om, 1.0), 1.0);
    EXPECT_THROW(optimal_map(om, 1.5), DomainError);
}

double near_zero_t(double x) { return 2.0 * (0.225 * (x * x - 1.0) + 0.5 * (x + 1.0)) - 1.0; }

TEST(OptimalMap, NearZeroClosedForm) {
    const OptimalMap om{catalog("ex_near_zero")};
    EXPECT_NEAR(optimal_map(om, 0.0), -0.45, 1e-10);
    for (double x : {-0.9, -0.4, 0.3, 0.8}) EXPECT_NEAR(optimal_map(om, x), near_zero_t(x), 1e-9);
}

TEST(OptimalMap, HighFrequencyPairAreInverses) {
    const OptimalMap fwd{catalog("ex_highfreq_fwd")};
    const OptimalMap inv{catalog("ex_highfreq_inv")};
    for (int k = 0; k <= 40; ++k) {
        const double x = -1.0 + 2.0 * k / 40.0;
        EXPECT_NEAR(optimal_map(inv, optimal_map(fwd, x)), x, 1e-8) << x;
    }
}

TEST(OptimalMap, NondecreasingAndEndpointExact) {
    for (const auto& id : catalog_ids()) {
        const OptimalMap om{catalog(id)};
        const auto& f = om.entry.f;
        double prev = -INFINITY;
        for (int k = 0; k <= 200; ++k) {
            const double x = f.interval_lo + f.length() * k / 200.0;
            const double t = optimal_map(om, x);
            EXPECT_GE(t, prev) << id << " x=" << x;
            prev = t;
        }
        EXPECT_EQ(optimal_map(om, f.interval_lo), om.entry.g.interval_lo) << id;
        EXPECT_EQ(optimal_map(om, f.interval_hi), om.entry.g.interval_hi) << id;
    }
}

TEST(OptimalMap, PushForwardOnSubintervals) {
    std::mt19937_64 rng(33);
    for (const auto& id : catalog_ids()) {
        const OptimalMap om{catalog(id)};
        const auto& f = om.entry.f;
        const auto& g = om.entry.g;
        std::uniform_real_distribution<double> u(f.interval_lo, f.interval_hi);
        for (int k = 0; k < 20; ++k) {
            double x1 = u(rng), x2 = u(rng);
            if (x1 > x2) std::swap(x1, x2);
            const double lhs = cdf(f, x2) - cdf(f, x1);
            const double rhs = cdf(g, optimal_map(om, x2)) - cdf(g, optimal_map(om, x1));
            EXPECT_NEAR(lhs, rhs, 4.0 * kQuad) << id;
        }
    }
}

TEST(OptimalMap, SweepMatchesPointwise) {
    for (const auto& id : catalog_ids()) {
        const OptimalMap om{catalog(id)};
        const auto& f = om.entry.f;
        std::vector<double> xs;
        for (int k = 0; k <= 64; ++k) xs.push_back(f.interval_lo + f.length() * k / 64.0);
        xs.back() = f.interval_hi;
        const auto swept = optimal_map_sweep(om, xs);
        ASSERT_EQ(swept.size(), xs.size());
        const double ming = extrema(om.entry.g, 10000).min_val;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            EXPECT_NEAR(swept[k], optimal_map(om, xs[k]), 4.0 * kQuad / ming + 1e-11) << id;
        }
    }
}

}  // namespace
}  // namespace pot1d
