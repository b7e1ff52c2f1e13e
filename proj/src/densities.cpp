// SPDX-License-Identifier: MIT
#include "pot1d/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "pot1d/error.hpp"
#include "pot1d/quadrature.hpp"

namespace pot1d {
namespace {

SimpsonOptions simpson_for(const DensitySpec& d, double quad_tol) {
    SimpsonOptions opts;
    opts.abs_tol = quad_tol;
    opts.max_panel = d.length() / 256.0;
    return opts;
}

void check_inside(const DensitySpec& d, double x, const char* what) {
    if (!(x >= d.interval_lo && x <= d.interval_hi)) {
        std::ostringstream msg;
        msg << what << ": x=" << x << " outside [" << d.interval_lo << ", " << d.interval_hi
            << "]";
        throw DomainError(msg.str());
    }
}

std::size_t piece_index(const std::vector<double>& breakpoints, double x) {
    return static_cast<std::size_t>(
        std::upper_bound(breakpoints.begin(), breakpoints.end(), x) - breakpoints.begin());
}

}  // namespace

DensitySpec make_piecewise_cubic(double lo, double hi, std::vector<double> breakpoints,
                                 std::vector<CubicCoeffs> pieces) {
    if (!(hi > lo)) throw InvalidArgument("piecewise cubic: need hi > lo");
    if (pieces.size() != breakpoints.size() + 1) {
        throw InvalidArgument("piecewise cubic: need one coefficient set per piece");
    }
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > lo && breakpoints[i] < hi) ||
            (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))) {
            throw InvalidArgument(
                "piecewise cubic: breakpoints must be strictly increasing and interior");
        }
    }

    auto bps = std::make_shared<const std::vector<double>>(breakpoints);
    auto cs = std::make_shared<const std::vector<CubicCoeffs>>(std::move(pieces));

    DensitySpec d;
    d.interval_lo = lo;
    d.interval_hi = hi;
    d.breakpoints = std::move(breakpoints);
    d.eval = [bps, cs](double x) {
        const auto& c = (*cs)[piece_index(*bps, x)];
        return c[0] + x * (c[1] + x * (c[2] + x * c[3]));
    };
    d.eval_d1 = [bps, cs](double x) {
        const auto& c = (*cs)[piece_index(*bps, x)];
        return c[1] + x * (2.0 * c[2] + 3.0 * x * c[3]);
    };
    d.eval_d2 = [bps, cs](double x) {
        const auto& c = (*cs)[piece_index(*bps, x)];
        return 2.0 * c[2] + 6.0 * x * c[3];
    };
    d.description = "piecewise cubic with " + std::to_string(cs->size()) + " piece(s)";
    return d;
}

double cdf_quadrature(const DensitySpec& d, double x, double quad_tol) {
    check_inside(d, x, "cdf");
    return integrate_piecewise(d.eval, d.interval_lo, x, d.breakpoints,
                               simpson_for(d, quad_tol));
}

double cdf(const DensitySpec& d, double x, double quad_tol) {
    check_inside(d, x, "cdf");
    if (d.has_analytic_cdf()) return d.analytic_cdf(x);
    return cdf_quadrature(d, x, quad_tol);
}

double integrate_density(const DensitySpec& d, double x0, double x1, double quad_tol) {
    check_inside(d, x0, "integrate_density");
    check_inside(d, x1, "integrate_density");
    if (d.has_analytic_cdf()) return d.analytic_cdf(x1) - d.analytic_cdf(x0);
    return integrate_piecewise(d.eval, x0, x1, d.breakpoints, simpson_for(d, quad_tol));
}

std::vector<double> sample_points(const DensitySpec& d, int n_samples) {
    const int n = std::max(n_samples, 2);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n) + 2 * d.breakpoints.size());
    const double h = d.length() / (n - 1);
    for (int i = 0; i < n - 1; ++i) xs.push_back(d.interval_lo + i * h);
    xs.push_back(d.interval_hi);
    for (double bp : d.breakpoints) {
        xs.push_back(bp);
        xs.push_back(std::nextafter(bp, -std::numeric_limits<double>::infinity()));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

ValidationReport validate(const DensitySpec& d, int n_samples, double quad_tol) {
    ValidationReport r;
    r.quad_tol = quad_tol;
    r.breakpoints_ok = std::is_sorted(d.breakpoints.begin(), d.breakpoints.end()) &&
                       std::adjacent_find(d.breakpoints.begin(), d.breakpoints.end()) ==
                           d.breakpoints.end() &&
                       std::all_of(d.breakpoints.begin(), d.breakpoints.end(), [&](double b) {
                           return b > d.interval_lo && b < d.interval_hi;
                       });

    r.min_val = std::numeric_limits<double>::infinity();
    r.max_val = -std::numeric_limits<double>::infinity();
    bool finite = true;
    for (double x : sample_points(d, n_samples)) {
        const double v = d.eval(x);
        finite = finite && std::isfinite(v);
        r.min_val = std::min(r.min_val, v);
        r.max_val = std::max(r.max_val, v);
    }
    r.positive = finite && r.min_val > 0.0;
    r.mass = cdf_quadrature(d, d.interval_hi, quad_tol);
    r.unit_mass = std::abs(r.mass - 1.0) <= 10.0 * quad_tol;
    return r;
}

namespace {

/// Golden-section search for the extremum of sign * d.eval on [a, b].
double refine_extremum(const DensitySpec& d, double a, double b, double sign) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), e = a + r * (b - a);
    double fc = sign * d.eval(c), fe = sign * d.eval(e);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - r * (b - a);
            fc = sign * d.eval(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + r * (b - a);
            fe = sign * d.eval(e);
        }
    }
    return std::min(fc, fe) * sign;
}

}  // namespace

Extrema extrema(const DensitySpec& d, int n_samples) {
    Extrema e;
    e.min_val = e.min_d1_abs = std::numeric_limits<double>::infinity();
    e.max_val = e.max_d1_abs = -std::numeric_limits<double>::infinity();
    const auto xs = sample_points(d, n_samples);
    std::size_t k_min = 0, k_max = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double v = d.eval(xs[k]);
        const double s = std::abs(d.eval_d1(xs[k]));
        if (v < e.min_val) {
            e.min_val = v;
            k_min = k;
        }
        if (v > e.max_val) {
            e.max_val = v;
            k_max = k;
        }
        e.min_d1_abs = std::min(e.min_d1_abs, s);
        e.max_d1_abs = std::max(e.max_d1_abs, s);
    }
    // Polish interior extrema between the neighbouring samples. Breakpoints
    // are samples, so each bracket lies within one piece up to its right end.
    auto bracket = [&](std::size_t k) {
        const double a = xs[k == 0 ? 0 : k - 1];
        const double b = xs[k + 1 < xs.size() ? k + 1 : k];
        return std::make_pair(a, std::nextafter(b, a));
    };
    if (xs.size() >= 3) {
        const auto [a0, b0] = bracket(k_min);
        e.min_val = std::min(e.min_val, refine_extremum(d, a0, b0, 1.0));
        const auto [a1, b1] = bracket(k_max);
        e.max_val = std::max(e.max_val, refine_extremum(d, a1, b1, -1.0));
    }
    return e;
}

double bessel_i0(double x) {
    // sum_k (x^2/4)^k / (k!)^2
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-16) break;
    }
    return sum;
}

}  // namespace pot1d
