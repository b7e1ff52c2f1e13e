// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "pot1d/bounds.hpp"
#include "pot1d/densities.hpp"
#include "pot1d/grid.hpp"
#include "pot1d/monitor.hpp"
#include "pot1d/stepper.hpp"

namespace pot1d::cli {

/// Everything a single invocation needs. Defaults are the CLI defaults.
struct RunConfig {
    std::string example_id = "ex_simple";
    /// Custom densities replace the catalog entry when both are set.
    std::optional<DensitySpec> custom_f;
    std::optional<DensitySpec> custom_g;

    /// 0 selects J = ceil((B - A) / select_dx) clamped to [64, 16384].
    int j_count = 128;
    double sigma = 0.01;
    double r_safety = 0.5;
    long long max_steps = 10'000'000;
    double max_dt = 1e-2;
    double quad_tol = kDefaultQuadTol;
    double inv_tol = 1e-12;
    int check_cadence = 200;
    int probe_count = 0;
    BoundOverrides overrides;
    double fallback_gamma = 1.0;

    std::optional<std::filesystem::path> output_dir;
    bool emit_timeseries = false;
};

/// Throws InvalidArgument on out-of-range fields.
void check_config(const RunConfig& cfg);

/// Parses the sectioned key/value config format:
///
///   [problem]        example = "ex_simple"
///   [problem.f]      lo, hi, breakpoints = [..], c0 = [..], c1, c2, c3
///   [problem.g]      same keys as [problem.f]
///   [solver]         grid, sigma, r_safety, max_steps, max_dt, quad_tol,
///                    inv_tol, check_cadence, probe_count
///   [bounds]         K, gamma, psi, delta1, delta2, fallback_gamma
///   [output]         dir = "out", timeseries = true
///
/// Values are numbers, booleans, double-quoted strings or flat [a, b]
/// arrays; '#' starts a comment. Throws InvalidArgument with a line number.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// The catalog entry or the custom pair described by cfg.
CatalogEntry resolve_entry(const RunConfig& cfg);

/// J from select_dx, clamped to [64, 16384].
int auto_grid_size(const CatalogEntry& entry, const DerivativeBounds& db);

/// Output directory: explicit setting, then $POT1D_OUT, then ".".
std::filesystem::path output_dir(const RunConfig& cfg);

/// Everything produced by one solve.
struct SolveOutcome {
    CatalogEntry entry;
    DerivativeBounds db;
    Grid grid;
    bool auto_grid = false;
    SolverState state;
    ConvergenceReport report;
};

/// densities -> bounds -> stepper -> monitor. Throws on invalid input or
/// convexity loss.
SolveOutcome solve(const RunConfig& cfg);

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_catalog(bool json, std::ostream& out);

/// Entry point for the pot1d executable.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pot1d::cli
