// SPDX-License-Identifier: MIT
#include <cmath>
#include <numbers>
#include <sstream>

#include "pot1d/densities.hpp"
#include "pot1d/error.hpp"

namespace pot1d {
namespace {

constexpr double kPi = std::numbers::pi;

DensitySpec constant_density(double lo, double hi) {
    const double c = 1.0 / (hi - lo);
    DensitySpec d;
    d.interval_lo = lo;
    d.interval_hi = hi;
    d.eval = [c](double) { return c; };
    d.eval_d1 = [](double) { return 0.0; };
    d.eval_d2 = [](double) { return 0.0; };
    d.analytic_cdf = [c, lo](double x) { return c * (x - lo); };
    std::ostringstream s;
    s << "uniform " << c << " on [" << lo << ", " << hi << "]";
    d.description = s.str();
    return d;
}

// (log(x+2) + 2) / (3 log 3 + 2) on [-1, 1]
DensitySpec log_density() {
    const double z = 3.0 * std::log(3.0) + 2.0;
    DensitySpec d;
    d.interval_lo = -1.0;
    d.interval_hi = 1.0;
    d.eval = [z](double x) { return (std::log(x + 2.0) + 2.0) / z; };
    d.eval_d1 = [z](double x) { return 1.0 / ((x + 2.0) * z); };
    d.eval_d2 = [z](double x) { return -1.0 / ((x + 2.0) * (x + 2.0) * z); };
    d.analytic_cdf = [z](double x) {
        const double s = x + 2.0;
        return (s * std::log(s) - s + 2.0 * x + 3.0) / z;
    };
    d.description = "(log(x+2)+2)/(3log3+2) on [-1, 1]";
    return d;
}

// x^2/2 + 1/3 on [-1, 1]
DensitySpec quadratic_density() {
    DensitySpec d;
    d.interval_lo = -1.0;
    d.interval_hi = 1.0;
    d.eval = [](double y) { return 0.5 * y * y + 1.0 / 3.0; };
    d.eval_d1 = [](double y) { return y; };
    d.eval_d2 = [](double) { return 1.0; };
    d.analytic_cdf = [](double y) { return y * y * y / 6.0 + y / 3.0 + 0.5; };
    d.description = "x^2/2 + 1/3 on [-1, 1]";
    return d;
}

// 50 (cos(100x) + 2) / (sin(100) + 200) on [-1, 1]
DensitySpec oscillating_density() {
    const double k = 50.0 / (std::sin(100.0) + 200.0);
    const double s100 = std::sin(100.0);
    DensitySpec d;
    d.interval_lo = -1.0;
    d.interval_hi = 1.0;
    d.eval = [k](double x) { return k * (std::cos(100.0 * x) + 2.0); };
    d.eval_d1 = [k](double x) { return -100.0 * k * std::sin(100.0 * x); };
    d.eval_d2 = [k](double x) { return -1e4 * k * std::cos(100.0 * x); };
    d.analytic_cdf = [k, s100](double x) {
        return k * ((std::sin(100.0 * x) + s100) / 100.0 + 2.0 * (x + 1.0));
    };
    d.description = "50(cos(100x)+2)/(sin(100)+200) on [-1, 1]";
    return d;
}

// (x + 2) / 4 on [-1, 1]
DensitySpec affine_quarter_density() {
    DensitySpec d;
    d.interval_lo = -1.0;
    d.interval_hi = 1.0;
    d.eval = [](double x) { return 0.25 * (x + 2.0); };
    d.eval_d1 = [](double) { return 0.25; };
    d.eval_d2 = [](double) { return 0.0; };
    d.analytic_cdf = [](double x) { return ((x + 2.0) * (x + 2.0) - 1.0) / 8.0; };
    d.description = "(x+2)/4 on [-1, 1]";
    return d;
}

// exp(cos y) / (2 pi I0(1)) on [-pi, pi]
DensitySpec von_mises_density() {
    const double norm = 2.0 * kPi * bessel_i0(1.0);
    DensitySpec d;
    d.interval_lo = -kPi;
    d.interval_hi = kPi;
    d.eval = [norm](double y) { return std::exp(std::cos(y)) / norm; };
    d.eval_d1 = [norm](double y) { return -std::sin(y) * std::exp(std::cos(y)) / norm; };
    d.eval_d2 = [norm](double y) {
        const double s = std::sin(y);
        return (s * s - std::cos(y)) * std::exp(std::cos(y)) / norm;
    };
    d.description = "von Mises (mu=0, kappa=1) on [-pi, pi]";
    return d;
}

// (9/20) x + 1/2 on [-1, 1]
DensitySpec near_zero_density() {
    DensitySpec d;
    d.interval_lo = -1.0;
    d.interval_hi = 1.0;
    d.eval = [](double x) { return 0.45 * x + 0.5; };
    d.eval_d1 = [](double) { return 0.45; };
    d.eval_d2 = [](double) { return 0.0; };
    d.analytic_cdf = [](double x) { return (9.0 / 40.0) * (x * x - 1.0) + 0.5 * (x + 1.0); };
    d.description = "(9/20)x + 1/2 on [-1, 1]";
    return d;
}

DensitySpec step_density() {
    DensitySpec d = make_piecewise_cubic(-1.0, 1.0, {-0.5, 0.0, 0.5},
                                         {{{0.3, 0, 0, 0}},
                                          {{0.6, 0, 0, 0}},
                                          {{0.2, 0, 0, 0}},
                                          {{0.9, 0, 0, 0}}});
    d.description = "0.3 | 0.6 | 0.2 | 0.9 with breaks at -0.5, 0, 0.5";
    return d;
}

// log piece on [-1, 0), quadratic piece on [0, 1]. The printed constant
// 13/12 - 2 log 2 gives a sign-changing function of mass 1 - log 2; the
// constant 13/12 - log 2 is the one that normalizes it.
DensitySpec log_quadratic_density() {
    const double c = 13.0 / 12.0 - std::log(2.0);
    DensitySpec d;
    d.interval_lo = -1.0;
    d.interval_hi = 1.0;
    d.breakpoints = {0.0};
    d.eval = [c](double x) {
        return x < 0.0 ? 0.5 * std::log(x + 2.0) + c : 0.25 * x * x + 1.0 / 3.0;
    };
    d.eval_d1 = [](double x) { return x < 0.0 ? 0.5 / (x + 2.0) : 0.5 * x; };
    d.eval_d2 = [](double x) { return x < 0.0 ? -0.5 / ((x + 2.0) * (x + 2.0)) : 0.5; };
    d.description = "log(x+2)/2 + 13/12 - log 2 for x < 0, x^2/4 + 1/3 for x >= 0";
    return d;
}

DensitySpec tent_density() {
    DensitySpec d = make_piecewise_cubic(-1.0, 1.0, {-1.0 / 3.0, 1.0 / 3.0},
                                         {{{0.7, 0.3, 0, 0}},
                                          {{0.5, 0, 0, 0}},
                                          {{0.7, -0.3, 0, 0}}});
    d.description = "0.3x+0.7 | 1/2 | -0.3x+0.7 with breaks at -1/3, 1/3";
    return d;
}

CatalogEntry with_half_square(std::string id, DensitySpec f, DensitySpec g, std::string notes) {
    CatalogEntry e;
    e.id = std::move(id);
    e.f = std::move(f);
    e.g = std::move(g);
    e.u0 = [](double x) { return 0.5 * x * x; };
    e.u0_d1 = [](double x) { return x; };
    e.u0_d2 = [](double) { return 1.0; };
    e.u0_d3 = [](double) { return 0.0; };
    e.notes = std::move(notes);
    return e;
}

}  // namespace

const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids{
        "uniform_uniform",      "ex_simple",   "ex_highfreq_fwd",    "ex_highfreq_inv",
        "ex_vonmises_quantile", "ex_near_zero", "ex_piecewise_const", "ex_piecewise_mixed"};
    return ids;
}

CatalogEntry catalog(std::string_view id) {
    if (id == "uniform_uniform") {
        return with_half_square("uniform_uniform", constant_density(-1, 1),
                                constant_density(-1, 1), "identity transport; u0 is optimal");
    }
    if (id == "ex_simple") {
        return with_half_square("ex_simple", log_density(), quadratic_density(),
                                "smooth log source to quadratic target");
    }
    if (id == "ex_highfreq_fwd") {
        return with_half_square("ex_highfreq_fwd", oscillating_density(),
                                affine_quarter_density(),
                                "oscillating source to affine target");
    }
    if (id == "ex_highfreq_inv") {
        return with_half_square("ex_highfreq_inv", affine_quarter_density(),
                                oscillating_density(),
                                "affine source to oscillating target; inverse of "
                                "ex_highfreq_fwd");
    }
    if (id == "ex_vonmises_quantile") {
        CatalogEntry e;
        e.id = "ex_vonmises_quantile";
        e.f = constant_density(0.0, 1.0);
        e.g = von_mises_density();
        e.u0 = [](double x) { return kPi * (x * x - x); };
        e.u0_d1 = [](double x) { return kPi * (2.0 * x - 1.0); };
        e.u0_d2 = [](double) { return 2.0 * kPi; };
        e.u0_d3 = [](double) { return 0.0; };
        e.notes = "uniform source; the optimal map is the von Mises quantile function";
        return e;
    }
    if (id == "ex_near_zero") {
        return with_half_square("ex_near_zero", near_zero_density(), constant_density(-1, 1),
                                "source density close to zero at x = -1");
    }
    if (id == "ex_piecewise_const") {
        return with_half_square("ex_piecewise_const", step_density(), constant_density(-1, 1),
                                "piecewise constant source; outside the smooth theory");
    }
    if (id == "ex_piecewise_mixed") {
        return with_half_square("ex_piecewise_mixed", log_quadratic_density(), tent_density(),
                                "piecewise source and target with different breaks");
    }

    std::ostringstream msg;
    msg << "unknown example '" << id << "'; valid ids:";
    for (const auto& known : catalog_ids()) msg << ' ' << known;
    throw UnknownExample(msg.str());
}

CatalogEntry make_custom_entry(std::string id, DensitySpec f, DensitySpec g) {
    const double a = f.interval_lo;
    const double c = g.interval_lo;
    const double slope = g.length() / f.length();
    CatalogEntry e;
    e.id = std::move(id);
    e.f = std::move(f);
    e.g = std::move(g);
    e.u0 = [a, c, slope](double x) { return c * x + 0.5 * slope * (x - a) * (x - a); };
    e.u0_d1 = [a, c, slope](double x) { return c + slope * (x - a); };
    e.u0_d2 = [slope](double) { return slope; };
    e.u0_d3 = [](double) { return 0.0; };
    e.notes = "custom densities; affine initial map";
    return e;
}

}  // namespace pot1d
