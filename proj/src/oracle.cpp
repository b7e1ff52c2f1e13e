// SPDX-License-Identifier: MIT
#include "pot1d/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "pot1d/error.hpp"

namespace pot1d {
namespace {

constexpr int kMaxBisections = 60;

struct Bracket {
    double lo;
    double cdf_lo;  // G(lo)
};

// Bisects [start.lo, D] for G(y) = p. Returns the final midpoint and leaves
// `start` at the last lower end so a caller sweeping increasing p can reuse it.
double bisect(const DensitySpec& g, double p, Bracket& start, double inv_tol, double quad_tol) {
    double lo = start.lo;
    double g_lo = start.cdf_lo;
    double hi = g.interval_hi;
    // Sub-integrals are chained, so each gets a share of the tolerance.
    const double piece_tol = quad_tol / (2.0 * kMaxBisections);
    for (int it = 0; it < kMaxBisections && hi - lo > inv_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = g.has_analytic_cdf() ? g.analytic_cdf(mid)
                                                  : g_lo + integrate_density(g, lo, mid, piece_tol);
        if (g_mid < p) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    start = {lo, g_lo};
    return 0.5 * (lo + hi);
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "invert_cdf: p=" << p << " outside [0, 1]";
        throw DomainError(msg.str());
    }
}

}  // namespace

double invert_cdf(const DensitySpec& g, double p, double inv_tol, double quad_tol) {
    check_probability(p);
    if (p == 0.0) return g.interval_lo;
    if (p == 1.0) return g.interval_hi;
    Bracket start{g.interval_lo, 0.0};
    return bisect(g, p, start, inv_tol, quad_tol);
}

double optimal_map(const OptimalMap& om, double x) {
    const auto& e = om.entry;
    if (x == e.f.interval_lo) return e.g.interval_lo;
    if (x == e.f.interval_hi) return e.g.interval_hi;
    const double p = std::clamp(cdf(e.f, x, om.quad_tol), 0.0, 1.0);
    return invert_cdf(e.g, p, om.inv_tol, om.quad_tol);
}

std::vector<double> optimal_map_sweep(const OptimalMap& om, std::span<const double> xs) {
    const auto& f = om.entry.f;
    const auto& g = om.entry.g;
    std::vector<double> out;
    out.reserve(xs.size());

    double x_prev = f.interval_lo;
    double p_prev = 0.0;
    Bracket bracket{g.interval_lo, 0.0};
    for (double x : xs) {
        if (x < x_prev) {
            // Not monotone: restart both accumulations.
            x_prev = f.interval_lo;
            p_prev = 0.0;
            bracket = {g.interval_lo, 0.0};
        }
        if (x == f.interval_lo) {
            out.push_back(g.interval_lo);
            continue;
        }
        if (x == f.interval_hi) {
            out.push_back(g.interval_hi);
            continue;
        }
        const double p = f.has_analytic_cdf()
                             ? f.analytic_cdf(x)
                             : p_prev + integrate_density(f, x_prev, x,
                                                         om.quad_tol * (x - x_prev) / f.length());
        x_prev = x;
        p_prev = p;
        out.push_back(bisect(g, std::clamp(p, 0.0, 1.0), bracket, om.inv_tol, om.quad_tol));
    }
    return out;
}

}  // namespace pot1d
