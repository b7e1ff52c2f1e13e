// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pot1d/cli.hpp"
#include "pot1d/error.hpp"
#include "pot1d/output.hpp"

namespace pot1d::cli {
namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("pot1d_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "pot1d");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

/// Data rows of a pot1d CSV, skipping the schema and header lines.
std::vector<std::vector<double>> csv_rows(const std::string& text, std::string* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, kCsvSchemaLine);
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, ',')) row.push_back(std::stod(f));
        rows.push_back(row);
    }
    return rows;
}

TEST(Config, ParsesSolverAndOutputSections) {
    const auto cfg = parse_config(R"(
# comment
[problem]
example = "ex_near_zero"

[solver]
grid = 256
sigma = 1e-3      # trailing comment
r_safety = 0.25
check_cadence = 50

[bounds]
fallback_gamma = 2.5

[output]
dir = "somewhere"
timeseries = true
)");
    EXPECT_EQ(cfg.example_id, "ex_near_zero");
    EXPECT_EQ(cfg.j_count, 256);
    EXPECT_DOUBLE_EQ(cfg.sigma, 1e-3);
    EXPECT_DOUBLE_EQ(cfg.r_safety, 0.25);
    EXPECT_EQ(cfg.check_cadence, 50);
    EXPECT_DOUBLE_EQ(cfg.fallback_gamma, 2.5);
    ASSERT_TRUE(cfg.output_dir.has_value());
    EXPECT_EQ(*cfg.output_dir, fs::path("somewhere"));
    EXPECT_TRUE(cfg.emit_timeseries);
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("[solver]\nbogus = 1\n"), InvalidArgument);
    EXPECT_THROW(parse_config("[solver]\nsigma = \"x\"\n"), InvalidArgument);
    EXPECT_THROW(parse_config("[solver]\nsigma = 1\nsigma = 2\n"), InvalidArgument);
    EXPECT_THROW(parse_config("[nowhere]\nx = 1\n"), InvalidArgument);
    EXPECT_THROW(parse_config("sigma 1\n"), InvalidArgument);
    EXPECT_THROW(check_config(parse_config("[solver]\nsigma = -1\n")), InvalidArgument);
    EXPECT_THROW(check_config(parse_config("[solver]\nr_safety = 0.75\n")), InvalidArgument);
    EXPECT_THROW(check_config(parse_config("[solver]\ngrid = 2\n")), InvalidArgument);
    try {
        parse_config("[solver]\n\nbogus = 1\n");
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

const char* kCustomUniform = R"(
[problem.f]
lo = 0.0
hi = 1.0
c0 = [1.0]

[problem.g]
lo = -1.0
hi = 1.0
c0 = [0.5]
)";

TEST(Config, CustomDensityPair) {
    const auto cfg = parse_config(kCustomUniform);
    ASSERT_TRUE(cfg.custom_f && cfg.custom_g);
    const auto entry = resolve_entry(cfg);
    EXPECT_DOUBLE_EQ(entry.f.eval(0.3), 1.0);
    EXPECT_DOUBLE_EQ(entry.g.eval(-0.3), 0.5);
    EXPECT_THROW(check_config(parse_config("[problem.f]\nlo = 0.0\nhi = 1.0\nc0 = [1.0]\n")),
                 InvalidArgument);
}

TEST(Config, OutputDirFallsBackToEnvironment) {
    RunConfig cfg;
    ::setenv("POT1D_OUT", "/tmp/from_env", 1);
    EXPECT_EQ(output_dir(cfg), fs::path("/tmp/from_env"));
    cfg.output_dir = "explicit";
    EXPECT_EQ(output_dir(cfg), fs::path("explicit"));
    ::unsetenv("POT1D_OUT");
    cfg.output_dir.reset();
    EXPECT_EQ(output_dir(cfg), fs::path("."));
}

TEST(Cli, FlagsOverrideConfigFile) {
    const auto dir = fresh_dir("override");
    std::ofstream(dir / "run.toml") << "[problem]\nexample = \"ex_simple\"\n[solver]\nsigma = 1e-9\n"
                                       "max_steps = 5\n";
    // The file alone truncates; the flags relax sigma enough to converge.
    auto r = invoke({"solve", "--config", (dir / "run.toml").string(), "--out", dir.string(),
                     "--grid", "64"});
    EXPECT_EQ(r.code, 2) << r.err;
    r = invoke({"solve", "--config", (dir / "run.toml").string(), "--out", dir.string(), "--grid",
                "64", "--example", "uniform_uniform", "--sigma", "0.01"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, SolveExitCodes) {
    const auto dir = fresh_dir("exit");
    EXPECT_EQ(invoke({"solve", "--example", "uniform_uniform", "--sigma", "1e-6", "--out",
                      dir.string()})
                  .code,
              0);
    EXPECT_EQ(invoke({"solve", "--example", "ex_simple", "--max-steps", "5", "--sigma", "1e-9",
                      "--out", dir.string()})
                  .code,
              2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 1);
    EXPECT_EQ(invoke({"solve", "--example", "no_such_example", "--out", dir.string()}).code, 1);
    std::ofstream(dir / "bad.toml") << "[solver]\nsigma = \"oops\"\n";
    const auto bad = invoke({"solve", "--config", (dir / "bad.toml").string()});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
}

TEST(Cli, SolveWritesSchemaValidReport) {
    const auto dir = fresh_dir("report");
    const auto r = invoke({"solve", "--example", "ex_simple", "--grid", "64", "--out",
                           dir.string(), "--timeseries"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    EXPECT_EQ(report.at("schema"), "pot1d.report/1");
    EXPECT_EQ(report.at("example"), "ex_simple");
    for (const char* key :
         {"grid", "settings", "bounds", "converged", "iterations", "t_total", "max_E_final",
          "sigma", "map_error_bound", "oracle_max_err", "apriori_interior", "apriori_boundary",
          "wall_seconds", "min_lap_seen", "range_excursions", "s_condition_ok"}) {
        EXPECT_TRUE(report.contains(key)) << key;
    }
    EXPECT_EQ(report.at("grid").at("J"), 64);
    EXPECT_TRUE(report.at("converged").get<bool>());
    EXPECT_LE(report.at("max_E_final").get<double>(), 0.01);
    EXPECT_LE(report.at("oracle_max_err").get<double>(), report.at("map_error_bound").get<double>());
    EXPECT_TRUE(report.at("bounds").contains("provenance"));

    std::string header;
    const auto sol = csv_rows(slurp(dir / "solution.csv"), &header);
    EXPECT_EQ(header, kSolutionHeader);
    ASSERT_EQ(sol.size(), 65u);
    EXPECT_EQ(sol.front()[1], -1.0);
    EXPECT_EQ(sol.back()[1], 1.0);

    const auto ts = csv_rows(slurp(dir / "timeseries.csv"), &header);
    EXPECT_EQ(header, kTimeseriesHeader);
    EXPECT_FALSE(ts.empty());
}

TEST(Cli, OutputsAreByteIdenticalAcrossRuns) {
    const auto a = fresh_dir("det_a");
    const auto b = fresh_dir("det_b");
    for (const auto& dir : {a, b}) {
        ASSERT_EQ(invoke({"compare", "--example", "ex_near_zero", "--grid", "64", "--out",
                          dir.string(), "--timeseries"})
                      .code,
                  0);
    }
    EXPECT_EQ(slurp(a / "compare.csv"), slurp(b / "compare.csv"));
}

TEST(Cli, OracleUniformIsIdentity) {
    const auto dir = fresh_dir("oracle_uniform");
    ASSERT_EQ(invoke({"oracle", "--example", "uniform_uniform", "--grid", "32", "--out",
                      dir.string()})
                  .code,
              0);
    std::string header;
    const auto rows = csv_rows(slurp(dir / "oracle.csv"), &header);
    EXPECT_EQ(header, kOracleHeader);
    ASSERT_EQ(rows.size(), 33u);
    for (const auto& row : rows) EXPECT_NEAR(row[2], row[1], 1e-10);
}

TEST(Cli, OracleNearZeroMidpoint) {
    const auto dir = fresh_dir("oracle_near_zero");
    ASSERT_EQ(invoke({"oracle", "--example", "ex_near_zero", "--grid", "128", "--out",
                      dir.string()})
                  .code,
              0);
    const auto rows = csv_rows(slurp(dir / "oracle.csv"));
    ASSERT_EQ(rows.size(), 129u);
    EXPECT_EQ(rows[64][0], 64.0);
    EXPECT_EQ(rows[64][1], 0.0);
    EXPECT_NEAR(rows[64][2], -0.45, 1e-10);
}

TEST(Cli, CompareUniformIsExact) {
    const auto dir = fresh_dir("compare_uniform");
    const auto r = invoke({"compare", "--example", "uniform_uniform", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string header;
    const auto rows = csv_rows(slurp(dir / "compare.csv"), &header);
    EXPECT_EQ(header, kCompareHeader);
    for (const auto& row : rows) EXPECT_LE(row[5], 1e-10);
    EXPECT_NE(r.out.find("certified"), std::string::npos);
}

TEST(Cli, CompareColumnsMatchInProcessSolve) {
    const auto dir = fresh_dir("compare_columns");
    ASSERT_EQ(invoke({"compare", "--example", "ex_piecewise_mixed", "--grid", "64", "--out",
                      dir.string()})
                  .code,
              0);
    const auto rows = csv_rows(slurp(dir / "compare.csv"));

    RunConfig cfg;
    cfg.example_id = "ex_piecewise_mixed";
    cfg.j_count = 64;
    const auto o = solve(cfg);
    const OptimalMap om{o.entry};
    ASSERT_EQ(rows.size(), 65u);
    for (int j = 0; j <= 64; ++j) {
        const auto& row = rows[static_cast<std::size_t>(j)];
        EXPECT_EQ(row[2], grad_centered(o.state.row, o.grid, j));
        EXPECT_EQ(row[3], lap_centered(o.state.row, o.grid, j));
        EXPECT_NEAR(row[4], optimal_map(om, o.grid.x(j)), 1e-9);
        EXPECT_NEAR(row[5], std::abs(row[4] - row[2]), 1e-15);
        EXPECT_NEAR(row[6], error_function(o.entry, o.state.row, o.grid, j), 1e-12);
    }
}

TEST(Cli, CustomUniformPairConvergesImmediately) {
    const auto dir = fresh_dir("custom");
    std::ofstream(dir / "custom.toml") << kCustomUniform << "[solver]\ngrid = 64\n";
    const auto r = invoke({"solve", "--config", (dir / "custom.toml").string(), "--out",
                           dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    EXPECT_EQ(report.at("iterations"), 0);
}

TEST(Cli, CatalogListings) {
    const auto text = invoke({"catalog"});
    ASSERT_EQ(text.code, 0);
    for (const auto& id : catalog_ids()) EXPECT_NE(text.out.find(id), std::string::npos) << id;
    const auto json = invoke({"catalog", "--json"});
    ASSERT_EQ(json.code, 0);
    const auto arr = nlohmann::json::parse(json.out);
    ASSERT_TRUE(arr.is_array());
    EXPECT_EQ(arr.size(), 8u);
    EXPECT_EQ(arr.at(0).at("id"), catalog_ids().at(0));
}

TEST(Output, FormatRealRoundTrips) {
    for (double v : {0.1, -1.0 / 3.0, 1e-300, 12345.678901234567}) {
        EXPECT_EQ(std::stod(format_real(v)), v);
    }
}

}  // namespace
}  // namespace pot1d::cli
