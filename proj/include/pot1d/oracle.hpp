// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <vector>

#include "pot1d/densities.hpp"

namespace pot1d {

/// The optimal map T = G^{-1} o F evaluated directly from the two CDFs.
struct OptimalMap {
    CatalogEntry entry;
    double inv_tol = 1e-12;
    double quad_tol = kDefaultQuadTol;
};

/// y in [C, D] with G(y) = p, by bisection on [C, D]. p = 0 maps to C and
/// p = 1 to D exactly. Throws DomainError if p is outside [0, 1].
double invert_cdf(const DensitySpec& g, double p, double inv_tol, double quad_tol);

/// T(x). T(A) = C and T(B) = D exactly. Throws DomainError outside [A, B].
double optimal_map(const OptimalMap& om, double x);

/// T at every point of a nondecreasing sequence. Both CDFs are accumulated
/// incrementally along the sweep.
std::vector<double> optimal_map_sweep(const OptimalMap& om, std::span<const double> xs);

}  // namespace pot1d
