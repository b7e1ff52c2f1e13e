// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pot1d/densities.hpp"
#include "pot1d/grid.hpp"
#include "pot1d/oracle.hpp"

namespace pot1d {

/// When to stop time marching: max_j E(grad U, x_j) <= sigma.
struct StoppingRule {
    double sigma = 0.01;
    /// Number of evenly spaced probe nodes used between full checks; 0 means
    /// max(2, J/16).
    int check_subset = 0;
    /// Confirm a probe hit with a pass over every node before stopping.
    bool full_confirm = true;
    /// Steps between probe checks.
    int check_cadence = 200;
};

/// One progress record, emitted at every probe check.
struct Checkpoint {
    long long step = 0;
    double t = 0.0;
    double dt = 0.0;
    double max_e = 0.0;
    double min_lap = 0.0;
};

struct ConvergenceReport {
    bool converged = false;
    long long iterations = 0;
    double t_total = 0.0;
    double max_e_final = 0.0;
    double sigma = 0.0;
    double map_error_bound = 0.0;
    std::optional<double> oracle_max_err;
    double apriori_interior = 0.0;
    double apriori_interior_theorem_form = 0.0;
    double apriori_boundary = 0.0;
    double wall_seconds = 0.0;
    std::map<std::string, std::string> bounds_provenance;
    std::vector<Checkpoint> checkpoints;
    /// Smallest discrete second derivative seen at any accepted step.
    double min_lap_seen = 0.0;
    /// Probe evaluations whose gradient left [C, D] and was clamped.
    long long range_excursions = 0;
    /// Whether max|g'| dx min(delta1/2, min lap) / (2 min g) < 1 held at
    /// every step (the dt-independent part of the s < r condition).
    bool s_condition_ok = true;
    bool heuristic_bounds = false;
};

struct ErrorSample {
    double value = 0.0;
    bool clamped = false;
};

/// E(S, x_j) = |F(x_j) - G(grad U_j)|, with grad U_j clamped into [C, D]
/// (reported through `clamped`).
ErrorSample error_sample(const CatalogEntry& entry, const GridRow& row, const Grid& grid, int j,
                         double quad_tol = kDefaultQuadTol);

double error_function(const CatalogEntry& entry, const GridRow& row, const Grid& grid, int j,
                      double quad_tol = kDefaultQuadTol);

/// max over probe_js of error_function.
double max_error(const CatalogEntry& entry, const GridRow& row, const Grid& grid,
                 std::span<const int> probe_js, double quad_tol = kDefaultQuadTol);

/// sigma / min g, the guaranteed bound on max |T - grad U| once max E <= sigma.
double map_error_bound(double sigma, const CatalogEntry& entry);

struct MonotonicityResult {
    bool ok = true;
    std::optional<int> first_violation;
};

/// grad U nondecreasing over 0..J, with a -1e-12 slack.
MonotonicityResult monotonicity_check(const GridRow& row, const Grid& grid);

/// max_j |grad U_j - T(x_j)|.
double oracle_error(const CatalogEntry& entry, const GridRow& row, const Grid& grid,
                    const OptimalMap& oracle);

/// `count` evenly spaced indices in 0..J, always including 0 and J.
std::vector<int> probe_indices(int j_count, int count);

/// Evaluates E at many nodes of one grid. F(x_j) is computed once for every
/// node; G is accumulated along increasing gradient values.
class ErrorEvaluator {
public:
    ErrorEvaluator(const CatalogEntry& entry, const Grid& grid, double quad_tol);

    /// E at each of js (need not be sorted).
    std::vector<double> evaluate(const GridRow& row, std::span<const int> js,
                                 double quad_tol) const;

    double max_over(const GridRow& row, std::span<const int> js, double quad_tol) const;

    /// Excursions seen so far (each clamped evaluation counts once).
    long long excursions() const { return excursions_; }

private:
    const CatalogEntry& entry_;
    const Grid& grid_;
    std::vector<double> f_cdf_;
    mutable long long excursions_ = 0;
};

}  // namespace pot1d
