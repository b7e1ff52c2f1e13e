// SPDX-License-Identifier: MIT
#include "pot1d/stepper.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pot1d/error.hpp"

namespace pot1d {

StepConfig default_step_config(const CatalogEntry& entry) {
    StepConfig cfg;
    cfg.c_bc = entry.g.interval_lo;
    cfg.d_bc = entry.g.interval_hi;
    return cfg;
}

void check_step_config(const StepConfig& cfg) {
    if (!(cfg.r_safety > 0.0 && cfg.r_safety <= 0.5)) {
        throw InvalidArgument("r_safety must lie in (0, 0.5]");
    }
    if (!(cfg.max_dt > 0.0)) throw InvalidArgument("max_dt must be positive");
    if (cfg.max_steps < 0) throw InvalidArgument("max_steps must be nonnegative");
    if (!(cfg.quad_tol > 0.0)) throw InvalidArgument("quad_tol must be positive");
}

double min_lap(const GridRow& row, const Grid& grid) {
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= grid.j_count(); ++j) {
        m = std::min(m, (row[j + 1] + row[j - 1] - 2.0 * row[j]) * inv_dx2);
    }
    return m;
}

SolverState initial_state(const CatalogEntry& entry, const Grid& grid, const StepConfig& cfg) {
    SolverState s;
    s.row = sample_row(grid, entry.u0);
    apply_ghosts_inplace(s.row, grid, cfg.c_bc, cfg.d_bc);
    if (!s.row.all_finite()) throw DomainError("initial potential is not finite on the grid");
    s.min_lap = min_lap(s.row, grid);
    return s;
}

namespace {

double step_scale(const SolverState& state, const DerivativeBounds& db) {
    return std::min(0.5 * db.delta1, state.min_lap);
}

}  // namespace

double select_dt(const SolverState& state, const DerivativeBounds& db, const StepConfig& cfg,
                 double dx) {
    if (!(state.min_lap > 0.0)) {
        std::ostringstream msg;
        msg << "convexity lost at step " << state.step_index << ": min lap = " << state.min_lap;
        throw ConvexityLoss(msg.str(), -1);
    }
    const double dt = std::min(cfg.r_safety * dx * dx * step_scale(state, db), cfg.max_dt);
    if (!(dt >= 1e-300)) throw DegenerateStep("selected time step underflowed");
    return dt;
}

bool s_condition_holds(const SolverState& state, const DerivativeBounds& db, double dx) {
    return db.max_g_d1 * dx * step_scale(state, db) / (2.0 * db.min_g) < 1.0;
}

Stepper::Stepper(const CatalogEntry& entry, const Grid& grid, const StepConfig& cfg)
    : entry_(entry), grid_(grid), cfg_(cfg) {
    check_step_config(cfg);
    log_f_.resize(static_cast<std::size_t>(grid.j_count()) + 1);
    for (int j = 0; j <= grid.j_count(); ++j) {
        const double fx = entry.f.eval(grid.x(j));
        if (!(fx > 0.0)) {
            std::ostringstream msg;
            msg << "source density is not positive at node " << j;
            throw DomainError(msg.str());
        }
        log_f_[static_cast<std::size_t>(j)] = std::log(fx);
    }
    range_slack_ = 1e-9 * entry.g.length();
}

double Stepper::advance(const GridRow& cur, double dt, GridRow& next) const {
    const int jn = grid_.j_count();
    const double dx = grid_.dx();
    const double inv_dx2 = 1.0 / (dx * dx);
    const double inv_2dx = 1.0 / (2.0 * dx);
    const double c = entry_.g.interval_lo;
    const double d = entry_.g.interval_hi;

    if (next.j_count() != jn) next = GridRow(jn);
    const auto u = cur.raw();
    auto out = next.raw();

    // Slot k holds node k - 1.
    for (int j = 0; j <= jn; ++j) {
        const std::size_t k = static_cast<std::size_t>(j) + 1;
        const double lap = (u[k + 1] + u[k - 1] - 2.0 * u[k]) * inv_dx2;
        double grad = (u[k + 1] - u[k - 1]) * inv_2dx;
        if (!(lap > 0.0)) {
            std::ostringstream msg;
            msg << "nonpositive second difference " << lap << " at node " << j;
            throw ConvexityLoss(msg.str(), j);
        }
        if (grad < c || grad > d) {
            if (grad < c - range_slack_ || grad > d + range_slack_) {
                std::ostringstream msg;
                msg << "gradient " << grad << " at node " << j << " left the target interval";
                throw DomainError(msg.str());
            }
            grad = std::clamp(grad, c, d);
        }
        const double gy = entry_.g.eval(grad);
        if (!(gy > 0.0)) {
            std::ostringstream msg;
            msg << "target density is not positive at grad U = " << grad << " (node " << j << ")";
            throw DomainError(msg.str());
        }
        out[k] = u[k] + dt * (std::log(lap) - log_f_[k - 1] + std::log(gy));
    }
    apply_ghosts_inplace(next, grid_, cfg_.c_bc, cfg_.d_bc);
    if (!next.all_finite()) throw DomainError("non-finite value after update");
    return min_lap(next, grid_);
}

SolverState Stepper::step(const SolverState& state, const DerivativeBounds& db) const {
    double dt = select_dt(state, db, cfg_, grid_.dx());
    if (std::isfinite(cfg_.t_end)) dt = std::min(dt, cfg_.t_end - state.time);
    SolverState next;
    next.min_lap = advance(state.row, dt, next.row);
    next.step_index = state.step_index + 1;
    next.time = state.time + dt;
    next.dt_history = state.dt_history;
    next.dt_history.push_back(dt);
    return next;
}

SolverState step(const SolverState& state, const CatalogEntry& entry, const DerivativeBounds& db,
                 const StepConfig& cfg, const Grid& grid) {
    return Stepper(entry, grid, cfg).step(state, db);
}

namespace {

std::vector<int> all_nodes(int j_count) {
    std::vector<int> js(static_cast<std::size_t>(j_count) + 1);
    std::iota(js.begin(), js.end(), 0);
    return js;
}

}  // namespace

std::pair<SolverState, ConvergenceReport> run(const CatalogEntry& entry,
                                              const DerivativeBounds& db, const StepConfig& cfg,
                                              const Grid& grid, const StoppingRule& stop,
                                              const RunHooks& hooks) {
    if (!(stop.sigma > 0.0)) throw InvalidArgument("sigma must be positive");
    if (stop.check_cadence < 1) throw InvalidArgument("check cadence must be at least 1");
    const auto started = std::chrono::steady_clock::now();

    const Stepper stepper(entry, grid, cfg);
    const ErrorEvaluator evaluator(entry, grid, cfg.quad_tol);
    const int probe_count =
        stop.check_subset > 0 ? stop.check_subset : std::max(2, grid.j_count() / 16);
    const auto probes = probe_indices(grid.j_count(), probe_count);
    const auto every = all_nodes(grid.j_count());
    const double confirm_tol = cfg.quad_tol / 10.0;

    SolverState state = initial_state(entry, grid, cfg);
    ConvergenceReport report;
    report.sigma = stop.sigma;
    report.min_lap_seen = state.min_lap;
    report.heuristic_bounds = db.heuristic;
    for (const auto& [name, p] : db.provenance) report.bounds_provenance[name] = to_string(p);

    StepSums sums;
    double last_full = 0.0;
    bool have_full = false;
    double last_dt = 0.0;

    auto check = [&]() {
        Checkpoint cp{state.step_index, state.time, last_dt,
                      evaluator.max_over(state.row, probes, cfg.quad_tol), state.min_lap};
        report.checkpoints.push_back(cp);
        if (hooks.on_checkpoint) hooks.on_checkpoint(cp);
        if (cp.max_e > stop.sigma) return false;
        if (!stop.full_confirm) return true;
        last_full = evaluator.max_over(state.row, every, confirm_tol);
        have_full = true;
        return last_full <= stop.sigma;
    };

    GridRow scratch(grid.j_count());
    bool converged = check();
    while (!converged && state.step_index < cfg.max_steps && state.time < cfg.t_end) {
        if (!s_condition_holds(state, db, grid.dx())) report.s_condition_ok = false;
        double dt = select_dt(state, db, cfg, grid.dx());
        if (std::isfinite(cfg.t_end)) dt = std::min(dt, cfg.t_end - state.time);

        const double new_min = stepper.advance(state.row, dt, scratch);
        std::swap(state.row, scratch);
        state.min_lap = new_min;
        state.time += dt;
        ++state.step_index;
        state.dt_history.push_back(dt);
        sums.add(dt);
        last_dt = dt;
        report.min_lap_seen = std::min(report.min_lap_seen, new_min);
        if (hooks.on_step) hooks.on_step(state);

        const bool at_end = state.step_index >= cfg.max_steps || state.time >= cfg.t_end;
        if (state.step_index % stop.check_cadence == 0 || at_end) {
            have_full = false;
            converged = check();
        }
    }

    report.converged = converged;
    report.iterations = state.step_index;
    report.t_total = state.time;
    report.max_e_final =
        have_full ? last_full : evaluator.max_over(state.row, every, confirm_tol);
    report.map_error_bound = map_error_bound(stop.sigma, entry);
    report.apriori_interior = apriori_interior_bound(db, sums, grid.dx());
    report.apriori_interior_theorem_form = apriori_interior_bound_theorem_form(db, sums, grid.dx());
    report.apriori_boundary = apriori_boundary_bound(db, sums, grid.dx());
    report.range_excursions = evaluator.excursions();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return {std::move(state), std::move(report)};
}

}  // namespace pot1d
