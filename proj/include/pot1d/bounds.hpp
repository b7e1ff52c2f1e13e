// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "pot1d/densities.hpp"

namespace pot1d {

enum class Provenance { computed, user_supplied, heuristic };

std::string to_string(Provenance p);

/// Uniform bounds on the derivatives of the parabolic flow solution v(t, x)
/// together with the density constants that enter step-size selection:
///
///   delta1 <= v_xx <= delta2,  |v_xxx| <= psi,  |v_xxxx| <= gamma,
///   |v_tt| <= k_tt.
struct DerivativeBounds {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
    double k_tt = 0.0;
    double min_g = 0.0;
    double max_g = 0.0;
    double max_g_d1 = 0.0;
    double max_vt0 = 0.0;
    std::map<std::string, Provenance> provenance;

    /// Intermediate constants from the v_xxx / v_xxxx chain, for reporting.
    double c1 = 0.0;
    double c2 = 0.0;
    double w_bound = 0.0;
    double zx_bound = 0.0;

    /// Set when either density has breakpoints: the smoothness hypotheses
    /// behind every bound fail and the values are heuristic only.
    bool heuristic = false;

    bool valid() const {
        return delta1 > 0.0 && delta1 <= delta2 && psi >= 0.0 && gamma >= 0.0 &&
               k_tt >= 0.0 && min_g > 0.0;
    }
};

/// Per-constant overrides. A set value replaces the computed one and is
/// tagged user_supplied.
struct BoundOverrides {
    std::optional<double> k_tt;
    std::optional<double> gamma;
    std::optional<double> psi;
    std::optional<double> delta1;
    std::optional<double> delta2;
};

struct BoundsOptions {
    int n_samples = 100000;
    /// Safety factors on sampled density extrema used for min g and max |g'|.
    double min_safety = 0.99;
    double max_safety = 1.01;
    /// Gamma used when the densities lack usable second derivatives.
    double fallback_gamma = 1.0;
    /// K = 2 max|v_t(0, .)| / t_scale unless overridden.
    double k_time_scale = 1.0;
    BoundOverrides overrides;
};

/// Lower/upper bounds on v_xx from the extrema of u0'', f and g.
/// Throws DomainError if min u0'' <= 0.
std::pair<double, double> vxx_bounds(const CatalogEntry& entry, int n_samples);

/// max over samples of |log(u0'' g(u0') / f)|, i.e. of |v_t(0, .)|.
double max_initial_vt(const CatalogEntry& entry, int n_samples);

/// Bound on |v_xxx|. Fills db.c1, db.c2 and db.w_bound and returns psi.
/// Requires db.delta1, db.delta2 and db.max_vt0.
double vxxx_bound(const CatalogEntry& entry, DerivativeBounds& db, int n_samples);

/// Bound on |v_xxxx| from the interior estimate for z_x = w_xx. Requires
/// db.w_bound from vxxx_bound(). Throws MissingDerivative when a density has
/// breakpoints or no second derivative; compute_bounds() then falls back to
/// the configured gamma.
double vxxxx_bound(const CatalogEntry& entry, DerivativeBounds& db, double phi_x_bound,
                   int n_samples);

/// Full pipeline: extrema, v_xx, v_xxx, v_xxxx bounds, K, then overrides.
DerivativeBounds compute_bounds(const CatalogEntry& entry, const BoundsOptions& opts = {});

/// min{3 delta1 / (2 psi), sqrt(6 delta1 / gamma)}; a zero psi or gamma
/// makes its term +inf.
double select_dx(const DerivativeBounds& db);

/// Running sums of the time steps, enough to evaluate the a-priori bounds.
struct StepSums {
    double sum_dt = 0.0;
    double sum_dt2 = 0.0;
    long long count = 0;

    void add(double dt) {
        sum_dt += dt;
        sum_dt2 += dt * dt;
        ++count;
    }
};

StepSums summarize(std::span<const double> dt_history);

/// sum_i dt_i (dt_i K / 2 + dx^2 Gamma / (6 delta1) + (max|g'| / min g) dx^2 Psi / 6)
double apriori_interior_bound(const DerivativeBounds& db, std::span<const double> dt_history,
                              double dx);
double apriori_interior_bound(const DerivativeBounds& db, const StepSums& sums, double dx);

/// Variant with the g-term outside the dt_i factor:
/// sum_i [dt_i (dt_i K / 2 + dx^2 Gamma / (6 delta1)) + (max|g'| / min g) dx^2 Psi / 6]
double apriori_interior_bound_theorem_form(const DerivativeBounds& db,
                                           std::span<const double> dt_history, double dx);
double apriori_interior_bound_theorem_form(const DerivativeBounds& db, const StepSums& sums,
                                           double dx);

/// sum_i dt_i (dt_i K / 2 + dx Psi / (3 delta1) + (max|g'| / min g) dx^2 Psi / 6)
double apriori_boundary_bound(const DerivativeBounds& db, std::span<const double> dt_history,
                              double dx);
double apriori_boundary_bound(const DerivativeBounds& db, const StepSums& sums, double dx);

}  // namespace pot1d
