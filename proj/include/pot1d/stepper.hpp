// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "pot1d/bounds.hpp"
#include "pot1d/densities.hpp"
#include "pot1d/grid.hpp"
#include "pot1d/monitor.hpp"

namespace pot1d {

/// Potential at time level n plus the bookkeeping the step-size rule needs.
struct SolverState {
    long long step_index = 0;
    double time = 0.0;
    GridRow row;
    double min_lap = 0.0;
    std::vector<double> dt_history;
};

struct StepConfig {
    /// Target value of r = dt / (dx^2 min(delta1/2, min lap)); in (0, 0.5].
    double r_safety = 0.5;
    double max_dt = 1e-2;
    long long max_steps = 10'000'000;
    /// Neumann data C and D; the derivative of the initial potential must
    /// match them at the ends.
    double c_bc = -1.0;
    double d_bc = 1.0;
    /// Optional final time. The last step is shortened to land on it.
    double t_end = std::numeric_limits<double>::infinity();
    /// Quadrature tolerance for the CDF mismatch checks.
    double quad_tol = kDefaultQuadTol;
};

/// StepConfig with C, D taken from the target interval.
StepConfig default_step_config(const CatalogEntry& entry);

/// Throws InvalidArgument unless 0 < r_safety <= 0.5, max_dt > 0, max_steps >= 0.
void check_step_config(const StepConfig& cfg);

/// Level-0 state: u0 sampled on the grid, ghosts set from (C, D).
SolverState initial_state(const CatalogEntry& entry, const Grid& grid, const StepConfig& cfg);

/// min over 0..J of the centered second difference.
double min_lap(const GridRow& row, const Grid& grid);

/// dt = min{r_safety dx^2 min(delta1/2, min lap), max_dt}.
/// Throws ConvexityLoss if state.min_lap <= 0 and DegenerateStep if the
/// result is below 1e-300.
double select_dt(const SolverState& state, const DerivativeBounds& db, const StepConfig& cfg,
                 double dx);

/// max|g'| dx min(delta1/2, min lap) / (2 min g) < 1, equivalent to s < r
/// for every dt.
bool s_condition_holds(const SolverState& state, const DerivativeBounds& db, double dx);

/// Explicit update engine for one (entry, grid) pair. Caches log f(x_j).
class Stepper {
public:
    Stepper(const CatalogEntry& entry, const Grid& grid, const StepConfig& cfg);

    /// next_j = cur_j + dt (log lap_j - log(f(x_j) / g(grad_j))) for j = 0..J,
    /// computed from `cur` only; ghosts of `next` are then reset. Returns the
    /// new min lap. Throws DomainError naming the offending node when lap <= 0
    /// or the gradient leaves [C, D].
    double advance(const GridRow& cur, double dt, GridRow& next) const;

    /// One full step: select_dt, advance, bookkeeping.
    SolverState step(const SolverState& state, const DerivativeBounds& db) const;

    const Grid& grid() const { return grid_; }

private:
    const CatalogEntry& entry_;
    const Grid& grid_;
    StepConfig cfg_;
    std::vector<double> log_f_;
    double range_slack_;
};

/// Convenience wrapper around Stepper::step.
SolverState step(const SolverState& state, const CatalogEntry& entry, const DerivativeBounds& db,
                 const StepConfig& cfg, const Grid& grid);

struct RunHooks {
    /// Called after every accepted step.
    std::function<void(const SolverState&)> on_step;
    /// Called at every probe check.
    std::function<void(const Checkpoint&)> on_checkpoint;
};

/// Time-marches until the stopping rule fires, max_steps is reached or
/// t_end is reached. Running out of steps is reported as non-converged.
std::pair<SolverState, ConvergenceReport> run(const CatalogEntry& entry,
                                              const DerivativeBounds& db, const StepConfig& cfg,
                                              const Grid& grid, const StoppingRule& stop,
                                              const RunHooks& hooks = {});

}  // namespace pot1d
