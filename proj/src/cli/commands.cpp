// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pot1d/cli.hpp"
#include "pot1d/error.hpp"
#include "pot1d/oracle.hpp"
#include "pot1d/output.hpp"

namespace pot1d::cli {

namespace {

void require_valid(const DensitySpec& d, const char* which, double quad_tol) {
    const auto rep = validate(d, 100000, quad_tol);
    if (rep.passed()) return;
    std::ostringstream msg;
    msg << which << " density failed validation: min " << rep.min_val << ", mass " << rep.mass;
    throw DomainError(msg.str());
}

BoundsOptions bounds_options(const RunConfig& cfg) {
    BoundsOptions opts;
    opts.overrides = cfg.overrides;
    opts.fallback_gamma = cfg.fallback_gamma;
    return opts;
}

/// Grid for `entry`; computes bounds only when the size is automatic.
Grid grid_for(const RunConfig& cfg, const CatalogEntry& entry) {
    int j = cfg.j_count;
    if (j == 0) j = auto_grid_size(entry, compute_bounds(entry, bounds_options(cfg)));
    return Grid(entry.f.interval_lo, entry.f.interval_hi, j);
}

std::vector<double> oracle_on(const RunConfig& cfg, const CatalogEntry& entry, const Grid& grid) {
    const OptimalMap om{entry, cfg.inv_tol, cfg.quad_tol};
    const auto nodes = grid.nodes();
    return optimal_map_sweep(om, nodes.subspan(1, static_cast<std::size_t>(grid.j_count()) + 1));
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConvexityLoss& e) {
        err << "pot1d: convexity loss: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "pot1d: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace

SolveOutcome solve(const RunConfig& cfg) {
    check_config(cfg);
    CatalogEntry entry = resolve_entry(cfg);
    require_valid(entry.f, "source", cfg.quad_tol);
    require_valid(entry.g, "target", cfg.quad_tol);

    DerivativeBounds db = compute_bounds(entry, bounds_options(cfg));
    const bool auto_grid = cfg.j_count == 0;
    const int j = auto_grid ? auto_grid_size(entry, db) : cfg.j_count;
    Grid grid(entry.f.interval_lo, entry.f.interval_hi, j);

    StepConfig sc = default_step_config(entry);
    sc.r_safety = cfg.r_safety;
    sc.max_dt = cfg.max_dt;
    sc.max_steps = cfg.max_steps;
    sc.quad_tol = cfg.quad_tol;

    StoppingRule stop;
    stop.sigma = cfg.sigma;
    stop.check_subset = cfg.probe_count;
    stop.check_cadence = cfg.check_cadence;

    auto [state, report] = run(entry, db, sc, grid, stop);
    report.oracle_max_err = oracle_error(entry, state.row, grid,
                                         OptimalMap{entry, cfg.inv_tol, cfg.quad_tol});
    return SolveOutcome{std::move(entry), std::move(db),     std::move(grid),
                        auto_grid,        std::move(state),  std::move(report)};
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto o = solve(cfg);
        const auto dir = output_dir(cfg);
        write_atomic(dir / "report.json", report_json(o, cfg).dump(2) + "\n");
        write_atomic(dir / "solution.csv", solution_csv(o.grid, o.state.row));
        if (cfg.emit_timeseries) {
            write_atomic(dir / "timeseries.csv", timeseries_csv(o.report.checkpoints));
        }
        out << o.entry.id << ": " << (o.report.converged ? "converged" : "not converged")
            << " after " << o.report.iterations << " steps, t = " << o.report.t_total
            << ", max E = " << o.report.max_e_final
            << ", map error bound = " << o.report.map_error_bound << '\n';
        return o.report.converged ? 0 : 2;
    });
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_config(cfg);
        const CatalogEntry entry = resolve_entry(cfg);
        const Grid grid = grid_for(cfg, entry);
        const auto t = oracle_on(cfg, entry, grid);
        write_atomic(output_dir(cfg) / "oracle.csv", oracle_csv(grid, t));
        out << entry.id << ": oracle map on " << grid.j_count() + 1 << " nodes\n";
        return 0;
    });
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto o = solve(cfg);
        const auto t = oracle_on(cfg, o.entry, o.grid);
        std::vector<CompareRow> rows;
        double max_err = 0.0;
        for (int j = 0; j <= o.grid.j_count(); ++j) {
            const double grad = grad_centered(o.state.row, o.grid, j);
            const double tj = t[static_cast<std::size_t>(j)];
            const double abs_err = std::abs(grad - tj);
            max_err = std::max(max_err, abs_err);
            rows.push_back({j, o.grid.x(j), grad, lap_centered(o.state.row, o.grid, j), tj,
                            abs_err, error_function(o.entry, o.state.row, o.grid, j, cfg.quad_tol)});
        }
        const auto dir = output_dir(cfg);
        write_atomic(dir / "compare.csv", compare_csv(rows));
        write_atomic(dir / "report.json", report_json(o, cfg).dump(2) + "\n");
        const bool certified = o.report.converged && max_err <= o.report.map_error_bound;
        out << o.entry.id << ": max abs_err = " << format_real(max_err)
            << ", bound sigma/min g = " << format_real(o.report.map_error_bound) << " -> "
            << (certified ? "certified" : "NOT certified") << '\n';
        return certified ? 0 : 1;
    });
}

int cmd_catalog(bool json, std::ostream& out) {
    if (json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& id : catalog_ids()) {
            const auto e = catalog(id);
            auto density = [](const DensitySpec& d) {
                return nlohmann::json{{"lo", d.interval_lo},
                                      {"hi", d.interval_hi},
                                      {"breakpoints", d.breakpoints},
                                      {"description", d.description}};
            };
            arr.push_back({{"id", id}, {"f", density(e.f)}, {"g", density(e.g)}, {"notes", e.notes}});
        }
        out << arr.dump(2) << '\n';
        return 0;
    }
    for (const auto& id : catalog_ids()) {
        const auto e = catalog(id);
        out << id << "\n  f on [" << format_real(e.f.interval_lo) << ", "
            << format_real(e.f.interval_hi) << "]: " << e.f.description << "\n  g on ["
            << format_real(e.g.interval_lo) << ", " << format_real(e.g.interval_hi)
            << "]: " << e.g.description << '\n';
    }
    return 0;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"pot1d: 1-D optimal transport by parabolic flow"};
    app.require_subcommand(1);

    std::optional<std::string> example, config_file, out_dir;
    std::optional<double> sigma, r_safety, quad_tol, max_dt;
    std::optional<int> grid, cadence, probes;
    std::optional<long long> max_steps;
    bool timeseries = false;
    bool json = false;

    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--example", example, "catalog id");
        sub->add_option("--config", config_file, "config file")->check(CLI::ExistingFile);
        sub->add_option("--sigma", sigma, "tolerance on max E");
        sub->add_option("--grid", grid, "J (0 = automatic)");
        sub->add_option("--max-steps", max_steps, "step limit");
        sub->add_option("--r-safety", r_safety, "dt / (dx^2 min(delta1/2, min lap))");
        sub->add_option("--max-dt", max_dt, "largest time step");
        sub->add_option("--quad-tol", quad_tol, "quadrature tolerance");
        sub->add_option("--cadence", cadence, "steps between checks");
        sub->add_option("--probes", probes, "probe nodes per check (0 = J/16)");
        sub->add_option("--out", out_dir, "output directory (default $POT1D_OUT or .)");
        sub->add_flag("--timeseries", timeseries, "write timeseries.csv");
    };
    auto* solve_cmd = app.add_subcommand("solve", "run the solver and write report.json");
    auto* oracle_cmd = app.add_subcommand("oracle", "tabulate the exact map G^-1(F(x))");
    auto* compare_cmd = app.add_subcommand("compare", "solve and check against the exact map");
    auto* catalog_cmd = app.add_subcommand("catalog", "list built-in examples");
    for (auto* sub : {solve_cmd, oracle_cmd, compare_cmd}) add_run_options(sub);
    catalog_cmd->add_flag("--json", json, "print a JSON array");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "pot1d: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    if (catalog_cmd->parsed()) return cmd_catalog(json, out);

    RunConfig cfg;
    try {
        if (config_file) cfg = load_config(*config_file);
        if (example) {
            cfg.example_id = *example;
            cfg.custom_f.reset();
            cfg.custom_g.reset();
        }
        if (sigma) cfg.sigma = *sigma;
        if (grid) cfg.j_count = *grid;
        if (max_steps) cfg.max_steps = *max_steps;
        if (r_safety) cfg.r_safety = *r_safety;
        if (max_dt) cfg.max_dt = *max_dt;
        if (quad_tol) cfg.quad_tol = *quad_tol;
        if (cadence) cfg.check_cadence = *cadence;
        if (probes) cfg.probe_count = *probes;
        if (out_dir) cfg.output_dir = *out_dir;
        if (timeseries) cfg.emit_timeseries = true;
        check_config(cfg);
    } catch (const std::exception& e) {
        err << "pot1d: " << e.what() << '\n';
        return 1;
    }

    if (solve_cmd->parsed()) return cmd_solve(cfg, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, out, err);
    return cmd_compare(cfg, out, err);
}

}  // namespace pot1d::cli
