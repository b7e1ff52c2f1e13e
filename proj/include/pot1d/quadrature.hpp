// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <span>

namespace pot1d {

/// Tuning for adaptive Simpson quadrature.
struct SimpsonOptions {
    double abs_tol = 1e-10;
    /// Panels wider than this are always split, regardless of the error
    /// estimate. Guards against aliasing on oscillatory integrands.
    double max_panel = 1.0 / 64.0;
    int max_depth = 48;
};

/// Adaptive Simpson on a single smooth piece [a, b]. Returns 0 for a == b and
/// a negated integral for b < a.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const SimpsonOptions& opts);

/// Integrate over [a, b], splitting at every breakpoint strictly inside it.
/// The tolerance is distributed over the pieces in proportion to length.
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const SimpsonOptions& opts);

}  // namespace pot1d
