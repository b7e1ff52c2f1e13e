// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pot1d {

using RealFn = std::function<double(double)>;

/// A positive probability density on a bounded interval together with its
/// derivatives. Piecewise densities are right-continuous at breakpoints and
/// their derivatives are taken piece by piece.
///
/// Immutable after construction; safe for concurrent reads.
struct DensitySpec {
    double interval_lo = 0.0;
    double interval_hi = 1.0;
    RealFn eval;
    RealFn eval_d1;
    RealFn eval_d2;  ///< may be empty
    std::vector<double> breakpoints;
    RealFn analytic_cdf;  ///< may be empty
    std::string description;

    bool has_d2() const { return static_cast<bool>(eval_d2); }
    bool has_analytic_cdf() const { return static_cast<bool>(analytic_cdf); }
    bool piecewise() const { return !breakpoints.empty(); }
    double length() const { return interval_hi - interval_lo; }
};

/// Per-piece cubic c0 + c1 x + c2 x^2 + c3 x^3 in the global coordinate x.
using CubicCoeffs = std::array<double, 4>;

/// Builds a density from ordered interior breakpoints and one cubic per piece
/// (pieces.size() == breakpoints.size() + 1). Throws InvalidArgument on
/// malformed input; positivity and mass are checked by validate().
DensitySpec make_piecewise_cubic(double lo, double hi, std::vector<double> breakpoints,
                                 std::vector<CubicCoeffs> pieces);

/// Default quadrature tolerance used throughout.
inline constexpr double kDefaultQuadTol = 1e-10;

/// F(x) = integral of the density from interval_lo to x. Uses the analytic
/// antiderivative when present, otherwise breakpoint-split adaptive Simpson.
/// Throws DomainError if x is outside the interval.
double cdf(const DensitySpec& d, double x, double quad_tol = kDefaultQuadTol);

/// Same as cdf() but always by quadrature.
double cdf_quadrature(const DensitySpec& d, double x, double quad_tol = kDefaultQuadTol);

/// Integral of the density over [x0, x1] (both inside the interval). Uses the
/// analytic antiderivative when present.
double integrate_density(const DensitySpec& d, double x0, double x1,
                         double quad_tol = kDefaultQuadTol);

struct ValidationReport {
    double min_val = 0.0;
    double max_val = 0.0;
    double mass = 0.0;
    double quad_tol = 0.0;
    bool positive = false;
    bool unit_mass = false;
    bool breakpoints_ok = false;

    bool passed() const { return positive && unit_mass && breakpoints_ok; }
};

/// Checks positivity on a sample grid (breakpoints included), unit mass
/// within 10 * quad_tol and breakpoint ordering. Failures are reported, not
/// thrown.
ValidationReport validate(const DensitySpec& d, int n_samples,
                          double quad_tol = kDefaultQuadTol);

struct Extrema {
    double min_val = 0.0;
    double max_val = 0.0;
    double min_d1_abs = 0.0;
    double max_d1_abs = 0.0;
};

/// Sampled extrema of the density and of |d1| over n_samples uniform points
/// plus each breakpoint and its left neighbour. The density extrema are then
/// polished by golden-section search between the neighbouring samples.
Extrema extrema(const DensitySpec& d, int n_samples);

/// The sample points used by extrema() and the bound computations.
std::vector<double> sample_points(const DensitySpec& d, int n_samples);

/// Modified Bessel function of the first kind, order zero, by power series.
double bessel_i0(double x);

/// A source/target pair with a strictly convex initial potential whose
/// derivative maps [A, B] onto [C, D].
struct CatalogEntry {
    std::string id;
    DensitySpec f;
    DensitySpec g;
    RealFn u0;
    RealFn u0_d1;
    RealFn u0_d2;
    RealFn u0_d3;
    std::string notes;
};

/// Valid catalog identifiers, in listing order.
const std::vector<std::string>& catalog_ids();

/// Looks up a built-in example. Throws UnknownExample listing the valid ids.
CatalogEntry catalog(std::string_view id);

/// Pairs two densities with the quadratic initial potential whose derivative
/// is the affine map [A, B] -> [C, D].
CatalogEntry make_custom_entry(std::string id, DensitySpec f, DensitySpec g);

}  // namespace pot1d
