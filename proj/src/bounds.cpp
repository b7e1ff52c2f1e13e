// SPDX-License-Identifier: MIT
#include "pot1d/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pot1d/error.hpp"

namespace pot1d {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::computed: return "computed";
        case Provenance::user_supplied: return "user_supplied";
        case Provenance::heuristic: return "heuristic";
    }
    return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sampled sup of |ratio| of a density's derivatives.
struct LogDerivativeMaxima {
    double first = 0.0;   ///< max |h'/h|
    double second = 0.0;  ///< max |(h'/h)'| = max |h''/h - (h'/h)^2|
};

LogDerivativeMaxima log_derivative_maxima(const DensitySpec& d, const std::vector<double>& xs,
                                          bool need_second) {
    if (!d.eval_d1) throw MissingDerivative("density has no first derivative");
    if (need_second && !d.has_d2()) throw MissingDerivative("density has no second derivative");
    LogDerivativeMaxima m;
    for (double x : xs) {
        const double v = d.eval(x);
        const double r = d.eval_d1(x) / v;
        m.first = std::max(m.first, std::abs(r));
        if (need_second) m.second = std::max(m.second, std::abs(d.eval_d2(x) / v - r * r));
    }
    return m;
}

// max |(g'/g)''| by centered differences of (g'/g)' on the sample points.
double log_derivative_third_max(const DensitySpec& g, const std::vector<double>& ys) {
    std::vector<double> gp(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double v = g.eval(ys[i]);
        const double r = g.eval_d1(ys[i]) / v;
        gp[i] = g.eval_d2(ys[i]) / v - r * r;
    }
    double out = 0.0;
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1;
        out = std::max(out, std::abs((gp[hi] - gp[lo]) / (ys[hi] - ys[lo])));
    }
    return out;
}

double clamp_to(const DensitySpec& d, double y) {
    return std::clamp(y, d.interval_lo, d.interval_hi);
}

}  // namespace

std::pair<double, double> vxx_bounds(const CatalogEntry& entry, int n_samples) {
    const Extrema ef = extrema(entry.f, n_samples);
    const Extrema eg = extrema(entry.g, n_samples);

    double u2_min = kInf;
    double u2_max = -kInf;
    for (double x : sample_points(entry.f, n_samples)) {
        const double u2 = entry.u0_d2(x);
        u2_min = std::min(u2_min, u2);
        u2_max = std::max(u2_max, u2);
    }
    if (!(u2_min > 0.0)) throw DomainError("vxx_bounds: initial potential is not strictly convex");

    const double delta1 = u2_min * (ef.min_val / ef.max_val) * (eg.min_val / eg.max_val);
    const double delta2 = u2_max * (ef.max_val / ef.min_val) * (eg.max_val / eg.min_val);
    return {delta1, delta2};
}

double max_initial_vt(const CatalogEntry& entry, int n_samples) {
    double out = 0.0;
    for (double x : sample_points(entry.f, n_samples)) {
        const double u2 = entry.u0_d2(x);
        const double fx = entry.f.eval(x);
        if (!(u2 > 0.0)) throw DomainError("max_initial_vt: u0'' <= 0");
        if (!(fx > 0.0)) throw DomainError("max_initial_vt: f <= 0");
        const double gy = entry.g.eval(clamp_to(entry.g, entry.u0_d1(x)));
        out = std::max(out, std::abs(std::log(u2 * gy / fx)));
    }
    return out;
}

double vxxx_bound(const CatalogEntry& entry, DerivativeBounds& db, int n_samples) {
    const auto xs = sample_points(entry.f, n_samples);
    const auto ys = sample_points(entry.g, n_samples);
    const LogDerivativeMaxima fm = log_derivative_maxima(entry.f, xs, false);
    const LogDerivativeMaxima gm = log_derivative_maxima(entry.g, ys, true);
    if (!entry.u0_d3) throw MissingDerivative("initial potential has no third derivative");

    // F and G(v_x) are evaluated at unrelated points, so |F - G phi| is
    // bounded over the whole rectangle rather than pointwise.
    double c1 = 0.0;
    for (double phi : {db.delta1, db.delta2}) {
        const double a = fm.first + gm.first * phi;
        c1 = std::max(c1, a + std::sqrt(a * a + 4.0 * gm.second * phi * phi));
    }

    // t = 0: w_x = u0'''/u0'' - F + G(u0') u0'' with everything known.
    double c2 = 0.0;
    for (double x : xs) {
        const double u2 = entry.u0_d2(x);
        const double fx = entry.f.eval(x);
        const double y = clamp_to(entry.g, entry.u0_d1(x));
        const double big_g = entry.g.eval_d1(y) / entry.g.eval(y);
        const double big_f = entry.f.eval_d1(x) / fx;
        c2 = std::max(c2, std::abs(entry.u0_d3(x) / u2 - big_f + big_g * u2));
    }

    db.c1 = c1;
    db.c2 = c2;
    db.w_bound = std::max(c1, c2) * std::exp(db.max_vt0);
    // phi_x = phi (w_x + F - G phi)
    return db.delta2 * (db.w_bound + fm.first + gm.first * db.delta2);
}

double vxxxx_bound(const CatalogEntry& entry, DerivativeBounds& db, double phi_x_bound,
                   int n_samples) {
    if (entry.f.piecewise() || entry.g.piecewise()) {
        throw MissingDerivative("vxxxx_bound: densities are not smooth across breakpoints");
    }
    const auto xs = sample_points(entry.f, n_samples);
    const auto ys = sample_points(entry.g, n_samples);
    const LogDerivativeMaxima fm = log_derivative_maxima(entry.f, xs, true);
    const LogDerivativeMaxima gm = log_derivative_maxima(entry.g, ys, true);
    const double gpp = log_derivative_third_max(entry.g, ys);

    const double d1 = db.delta1;
    const double d2 = db.delta2;
    const double m = db.w_bound;
    const double psi = phi_x_bound;

    double zx = 0.0;
    if (m > 0.0) {
        // |(G'(v_x) phi)_x| <= |G''| phi^2 + |G'| |phi_x|
        const double h_x = gpp * d2 * d2 + gm.second * psi;
        const double q = 1.0 + m * psi / d1;
        const double bracket = (m + fm.first) * psi / d1 + fm.second + 3.0 * d2 * gm.second +
                               d2 * h_x * m + 0.5 * gm.second * d2 * d2;
        zx = q + std::sqrt(4.0 * m * m * bracket + q * q);
        zx = std::max(zx, std::exp(0.5));
    }
    db.zx_bound = zx;

    // phi_xx = phi (z_x + phi_x^2/phi^2 + F' - G' phi^2 - G phi_x)
    return d2 * (zx + psi * psi / (d1 * d1) + fm.second + gm.second * d2 * d2 +
                 gm.first * psi);
}

DerivativeBounds compute_bounds(const CatalogEntry& entry, const BoundsOptions& opts) {
    const int n = opts.n_samples;
    const auto& ov = opts.overrides;
    DerivativeBounds db;
    auto& prov = db.provenance;

    const Extrema eg = extrema(entry.g, n);
    db.min_g = eg.min_val * opts.min_safety;
    db.max_g = eg.max_val * opts.max_safety;
    db.max_g_d1 = eg.max_d1_abs * opts.max_safety;
    prov["min_g"] = prov["max_g"] = prov["max_g_d1"] = Provenance::computed;

    const auto [d1, d2] = vxx_bounds(entry, n);
    db.delta1 = ov.delta1.value_or(d1);
    db.delta2 = ov.delta2.value_or(d2);
    prov["delta1"] = ov.delta1 ? Provenance::user_supplied : Provenance::computed;
    prov["delta2"] = ov.delta2 ? Provenance::user_supplied : Provenance::computed;

    db.max_vt0 = max_initial_vt(entry, n);
    prov["max_vt0"] = Provenance::computed;

    if (ov.psi) {
        // W is still needed by the v_xxxx chain.
        vxxx_bound(entry, db, n);
        db.psi = *ov.psi;
        prov["psi"] = Provenance::user_supplied;
    } else {
        db.psi = vxxx_bound(entry, db, n);
        prov["psi"] = Provenance::computed;
    }

    if (ov.gamma) {
        db.gamma = *ov.gamma;
        prov["gamma"] = Provenance::user_supplied;
    } else {
        try {
            db.gamma = vxxxx_bound(entry, db, db.psi, n);
            prov["gamma"] = Provenance::computed;
        } catch (const MissingDerivative&) {
            db.gamma = opts.fallback_gamma;
            prov["gamma"] = Provenance::user_supplied;
        }
    }

    if (ov.k_tt) {
        db.k_tt = *ov.k_tt;
        prov["k_tt"] = Provenance::user_supplied;
    } else {
        db.k_tt = 2.0 * db.max_vt0 / opts.k_time_scale;
        prov["k_tt"] = Provenance::heuristic;
    }

    db.heuristic = entry.f.piecewise() || entry.g.piecewise();
    return db;
}

double select_dx(const DerivativeBounds& db) {
    const double by_psi = db.psi > 0.0 ? 3.0 * db.delta1 / (2.0 * db.psi) : kInf;
    const double by_gamma = db.gamma > 0.0 ? std::sqrt(6.0 * db.delta1 / db.gamma) : kInf;
    return std::min(by_psi, by_gamma);
}

StepSums summarize(std::span<const double> dt_history) {
    StepSums s;
    for (double dt : dt_history) s.add(dt);
    return s;
}

namespace {

double g_ratio(const DerivativeBounds& db) { return db.max_g_d1 / db.min_g; }

}  // namespace

double apriori_interior_bound(const DerivativeBounds& db, const StepSums& s, double dx) {
    const double dx2 = dx * dx;
    const double per_dt = dx2 * db.gamma / (6.0 * db.delta1) + g_ratio(db) * dx2 * db.psi / 6.0;
    return 0.5 * db.k_tt * s.sum_dt2 + per_dt * s.sum_dt;
}

double apriori_interior_bound(const DerivativeBounds& db, std::span<const double> dt_history,
                              double dx) {
    return apriori_interior_bound(db, summarize(dt_history), dx);
}

double apriori_interior_bound_theorem_form(const DerivativeBounds& db, const StepSums& s,
                                           double dx) {
    const double dx2 = dx * dx;
    return 0.5 * db.k_tt * s.sum_dt2 + dx2 * db.gamma / (6.0 * db.delta1) * s.sum_dt +
           static_cast<double>(s.count) * g_ratio(db) * dx2 * db.psi / 6.0;
}

double apriori_interior_bound_theorem_form(const DerivativeBounds& db,
                                           std::span<const double> dt_history, double dx) {
    return apriori_interior_bound_theorem_form(db, summarize(dt_history), dx);
}

double apriori_boundary_bound(const DerivativeBounds& db, const StepSums& s, double dx) {
    const double per_dt = dx * db.psi / (3.0 * db.delta1) + g_ratio(db) * dx * dx * db.psi / 6.0;
    return 0.5 * db.k_tt * s.sum_dt2 + per_dt * s.sum_dt;
}

double apriori_boundary_bound(const DerivativeBounds& db, std::span<const double> dt_history,
                              double dx) {
    return apriori_boundary_bound(db, summarize(dt_history), dx);
}

}  // namespace pot1d
