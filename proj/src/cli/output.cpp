// SPDX-License-Identifier: MIT
#include "pot1d/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pot1d/error.hpp"

namespace pot1d::cli {

namespace {

/// JSON has no infinity; non-finite values become null.
nlohmann::json real(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string header(std::string_view columns) {
    std::string s(kCsvSchemaLine);
    s += '\n';
    s += columns;
    s += '\n';
    return s;
}

}  // namespace

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string solution_csv(const Grid& grid, const GridRow& row) {
    std::string s = header(kSolutionHeader);
    for (int j = 0; j <= grid.j_count(); ++j) {
        s += std::to_string(j) + ',' + format_real(grid.x(j)) + ',' + format_real(row[j]) + ',' +
             format_real(grad_centered(row, grid, j)) + ',' +
             format_real(lap_centered(row, grid, j)) + '\n';
    }
    return s;
}

std::string timeseries_csv(std::span<const Checkpoint> checkpoints) {
    std::string s = header(kTimeseriesHeader);
    for (const auto& c : checkpoints) {
        s += std::to_string(c.step) + ',' + format_real(c.t) + ',' + format_real(c.dt) + ',' +
             format_real(c.max_e) + ',' + format_real(c.min_lap) + '\n';
    }
    return s;
}

std::string oracle_csv(const Grid& grid, std::span<const double> t) {
    std::string s = header(kOracleHeader);
    for (int j = 0; j <= grid.j_count(); ++j) {
        s += std::to_string(j) + ',' + format_real(grid.x(j)) + ',' +
             format_real(t[static_cast<std::size_t>(j)]) + '\n';
    }
    return s;
}

std::string compare_csv(std::span<const CompareRow> rows) {
    std::string s = header(kCompareHeader);
    for (const auto& r : rows) {
        s += std::to_string(r.j) + ',' + format_real(r.x) + ',' + format_real(r.grad) + ',' +
             format_real(r.lap) + ',' + format_real(r.t_oracle) + ',' + format_real(r.abs_err) +
             ',' + format_real(r.e) + '\n';
    }
    return s;
}

nlohmann::json bounds_json(const DerivativeBounds& db) {
    nlohmann::json prov = nlohmann::json::object();
    for (const auto& [name, p] : db.provenance) prov[name] = to_string(p);
    return {
        {"delta1", real(db.delta1)},
        {"delta2", real(db.delta2)},
        {"psi", real(db.psi)},
        {"gamma", real(db.gamma)},
        {"K", real(db.k_tt)},
        {"min_g", real(db.min_g)},
        {"max_g", real(db.max_g)},
        {"max_g_d1", real(db.max_g_d1)},
        {"max_vt0", real(db.max_vt0)},
        {"c1", real(db.c1)},
        {"c2", real(db.c2)},
        {"w_bound", real(db.w_bound)},
        {"zx_bound", real(db.zx_bound)},
        {"heuristic", db.heuristic},
        {"select_dx", real(select_dx(db))},
        {"provenance", prov},
    };
}

nlohmann::json report_json(const SolveOutcome& o, const RunConfig& cfg) {
    const auto& r = o.report;
    return {
        {"schema", "pot1d.report/1"},
        {"example", o.entry.id},
        {"grid",
         {{"A", o.grid.a()},
          {"B", o.grid.b()},
          {"C", o.entry.g.interval_lo},
          {"D", o.entry.g.interval_hi},
          {"J", o.grid.j_count()},
          {"dx", o.grid.dx()},
          {"auto", o.auto_grid}}},
        {"settings",
         {{"sigma", cfg.sigma},
          {"r_safety", cfg.r_safety},
          {"max_steps", cfg.max_steps},
          {"max_dt", cfg.max_dt},
          {"quad_tol", cfg.quad_tol},
          {"inv_tol", cfg.inv_tol},
          {"check_cadence", cfg.check_cadence},
          {"probe_count", cfg.probe_count},
          {"quadrature", "adaptive Simpson with Richardson correction, split at breakpoints"}}},
        {"bounds", bounds_json(o.db)},
        {"converged", r.converged},
        {"iterations", r.iterations},
        {"t_total", r.t_total},
        {"max_E_final", r.max_e_final},
        {"sigma", r.sigma},
        {"map_error_bound", real(r.map_error_bound)},
        {"oracle_max_err", r.oracle_max_err ? real(*r.oracle_max_err) : nlohmann::json(nullptr)},
        {"apriori_interior", real(r.apriori_interior)},
        {"apriori_interior_theorem_form", real(r.apriori_interior_theorem_form)},
        {"apriori_boundary", real(r.apriori_boundary)},
        {"apriori_note",
         "apriori_interior multiplies all three per-step terms by dt_i; "
         "apriori_interior_theorem_form keeps the max|g'|/min g term outside the dt_i factor"},
        {"wall_seconds", r.wall_seconds},
        {"min_lap_seen", real(r.min_lap_seen)},
        {"range_excursions", r.range_excursions},
        {"s_condition_ok", r.s_condition_ok},
        {"heuristic_bounds", r.heuristic_bounds},
        {"checkpoints", r.checkpoints.size()},
    };
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidArgument("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw InvalidArgument("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace pot1d::cli
