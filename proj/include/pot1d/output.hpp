// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pot1d/cli.hpp"

namespace pot1d::cli {

/// First line of every CSV file; the column header follows on line two.
inline constexpr std::string_view kCsvSchemaLine = "# pot1d-csv 1";

inline constexpr std::string_view kSolutionHeader = "j,x,U,gradU,lapU";
inline constexpr std::string_view kTimeseriesHeader = "step,t,dt,maxE,minLap";
inline constexpr std::string_view kCompareHeader = "j,x,gradU,lapU,T_oracle,abs_err,E";
inline constexpr std::string_view kOracleHeader = "j,x,T";

/// %.17g
std::string format_real(double v);

std::string solution_csv(const Grid& grid, const GridRow& row);
std::string timeseries_csv(std::span<const Checkpoint> checkpoints);
std::string oracle_csv(const Grid& grid, std::span<const double> t);

struct CompareRow {
    int j;
    double x, grad, lap, t_oracle, abs_err, e;
};
std::string compare_csv(std::span<const CompareRow> rows);

nlohmann::json bounds_json(const DerivativeBounds& db);
nlohmann::json report_json(const SolveOutcome& outcome, const RunConfig& cfg);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace pot1d::cli
