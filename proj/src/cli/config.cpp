// SPDX-License-Identifier: MIT
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <variant>
#include <vector>

#include "pot1d/cli.hpp"
#include "pot1d/error.hpp"

namespace pot1d::cli {

namespace {

using Value = std::variant<double, bool, std::string, std::vector<double>>;

struct Entry {
    Value value;
    int line;
};

[[noreturn]] void fail(int line, const std::string& what) {
    std::ostringstream msg;
    msg << "config line " << line << ": " << what;
    throw InvalidArgument(msg.str());
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

/// Drops a trailing '#' comment that is not inside a quoted string.
std::string strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return std::string(s.substr(0, i));
    }
    return std::string(s);
}

double parse_number(const std::string& text, int line) {
    std::string cleaned;
    for (char ch : text) {
        if (ch != '_') cleaned += ch;
    }
    if (cleaned == "inf" || cleaned == "+inf") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(cleaned.c_str(), &end);
    if (cleaned.empty() || end != cleaned.c_str() + cleaned.size()) {
        fail(line, "cannot parse value '" + text + "'");
    }
    return v;
}

Value parse_value(const std::string& text, int line) {
    if (text.empty()) fail(line, "missing value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"') fail(line, "unterminated string");
        return text.substr(1, text.size() - 2);
    }
    if (text == "true") return true;
    if (text == "false") return false;
    if (text.front() == '[') {
        if (text.back() != ']') fail(line, "unterminated array");
        std::vector<double> out;
        std::stringstream items(text.substr(1, text.size() - 2));
        std::string item;
        while (std::getline(items, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            out.push_back(parse_number(item, line));
        }
        return out;
    }
    return parse_number(text, line);
}

using Table = std::map<std::string, Entry>;

Table parse_table(std::string_view text) {
    Table table;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) fail(line, "empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) fail(line, "empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (table.count(full)) fail(line, "duplicate key '" + full + "'");
        table[full] = Entry{parse_value(trim(s.substr(eq + 1)), line), line};
    }
    return table;
}

class Reader {
public:
    explicit Reader(Table t) : table_(std::move(t)) {}

    template <typename T>
    std::optional<T> take(const std::string& key) {
        const auto it = table_.find(key);
        if (it == table_.end()) return std::nullopt;
        const Entry e = it->second;
        table_.erase(it);
        if (const T* v = std::get_if<T>(&e.value)) return *v;
        fail(e.line, "wrong value type for '" + key + "'");
    }

    std::optional<long long> take_integer(const std::string& key) {
        const auto line = line_of(key);
        const auto v = take<double>(key);
        if (!v) return std::nullopt;
        if (*v != std::floor(*v) || std::abs(*v) > 9.0e15) {
            fail(line, "'" + key + "' must be an integer");
        }
        return static_cast<long long>(*v);
    }

    bool has_prefix(const std::string& prefix) const {
        const auto it = table_.lower_bound(prefix);
        return it != table_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
    }

    int line_of(const std::string& key) const {
        const auto it = table_.find(key);
        return it == table_.end() ? 0 : it->second.line;
    }

    /// Anything not consumed is an unknown key.
    void finish() const {
        if (!table_.empty()) {
            const auto& [key, e] = *table_.begin();
            fail(e.line, "unknown key '" + key + "'");
        }
    }

private:
    Table table_;
};

DensitySpec read_density(Reader& r, const std::string& sec) {
    const int line = r.line_of(sec + ".lo");
    const auto lo = r.take<double>(sec + ".lo");
    const auto hi = r.take<double>(sec + ".hi");
    if (!lo || !hi) fail(line, "[" + sec + "] needs lo and hi");
    auto bps = r.take<std::vector<double>>(sec + ".breakpoints").value_or(std::vector<double>{});
    std::array<std::vector<double>, 4> coeffs;
    for (int k = 0; k < 4; ++k) {
        coeffs[static_cast<std::size_t>(k)] =
            r.take<std::vector<double>>(sec + ".c" + std::to_string(k))
                .value_or(std::vector<double>{});
    }
    const std::size_t n = bps.size() + 1;
    std::vector<CubicCoeffs> pieces(n, CubicCoeffs{0.0, 0.0, 0.0, 0.0});
    for (std::size_t k = 0; k < 4; ++k) {
        if (coeffs[k].empty()) continue;
        if (coeffs[k].size() != n) {
            fail(line, "[" + sec + "] c" + std::to_string(k) + " needs one value per piece");
        }
        for (std::size_t p = 0; p < n; ++p) pieces[p][k] = coeffs[k][p];
    }
    return make_piecewise_cubic(*lo, *hi, std::move(bps), std::move(pieces));
}

}  // namespace

void check_config(const RunConfig& cfg) {
    if (!(cfg.sigma > 0.0)) throw InvalidArgument("sigma must be positive");
    if (cfg.j_count != 0 && cfg.j_count < 4) throw InvalidArgument("grid must be 0 or at least 4");
    if (!(cfg.r_safety > 0.0 && cfg.r_safety <= 0.5)) {
        throw InvalidArgument("r_safety must lie in (0, 0.5]");
    }
    if (cfg.max_steps < 0) throw InvalidArgument("max_steps must be nonnegative");
    if (!(cfg.max_dt > 0.0)) throw InvalidArgument("max_dt must be positive");
    if (!(cfg.quad_tol > 0.0)) throw InvalidArgument("quad_tol must be positive");
    if (!(cfg.inv_tol > 0.0)) throw InvalidArgument("inv_tol must be positive");
    if (cfg.check_cadence < 1) throw InvalidArgument("check_cadence must be at least 1");
    if (cfg.probe_count < 0) throw InvalidArgument("probe_count must be nonnegative");
    if (cfg.custom_f.has_value() != cfg.custom_g.has_value()) {
        throw InvalidArgument("custom densities need both [problem.f] and [problem.g]");
    }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
    Reader r(parse_table(text));
    RunConfig cfg = std::move(base);

    if (auto v = r.take<std::string>("problem.example")) cfg.example_id = *v;
    if (r.has_prefix("problem.f.")) cfg.custom_f = read_density(r, "problem.f");
    if (r.has_prefix("problem.g.")) cfg.custom_g = read_density(r, "problem.g");

    if (auto v = r.take_integer("solver.grid")) cfg.j_count = static_cast<int>(*v);
    if (auto v = r.take<double>("solver.sigma")) cfg.sigma = *v;
    if (auto v = r.take<double>("solver.r_safety")) cfg.r_safety = *v;
    if (auto v = r.take_integer("solver.max_steps")) cfg.max_steps = *v;
    if (auto v = r.take<double>("solver.max_dt")) cfg.max_dt = *v;
    if (auto v = r.take<double>("solver.quad_tol")) cfg.quad_tol = *v;
    if (auto v = r.take<double>("solver.inv_tol")) cfg.inv_tol = *v;
    if (auto v = r.take_integer("solver.check_cadence")) cfg.check_cadence = static_cast<int>(*v);
    if (auto v = r.take_integer("solver.probe_count")) cfg.probe_count = static_cast<int>(*v);

    if (auto v = r.take<double>("bounds.K")) cfg.overrides.k_tt = *v;
    if (auto v = r.take<double>("bounds.gamma")) cfg.overrides.gamma = *v;
    if (auto v = r.take<double>("bounds.psi")) cfg.overrides.psi = *v;
    if (auto v = r.take<double>("bounds.delta1")) cfg.overrides.delta1 = *v;
    if (auto v = r.take<double>("bounds.delta2")) cfg.overrides.delta2 = *v;
    if (auto v = r.take<double>("bounds.fallback_gamma")) cfg.fallback_gamma = *v;

    if (auto v = r.take<std::string>("output.dir")) cfg.output_dir = *v;
    if (auto v = r.take<bool>("output.timeseries")) cfg.emit_timeseries = *v;

    r.finish();
    check_config(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), std::move(base));
}

CatalogEntry resolve_entry(const RunConfig& cfg) {
    if (cfg.custom_f && cfg.custom_g) return make_custom_entry("custom", *cfg.custom_f, *cfg.custom_g);
    return catalog(cfg.example_id);
}

int auto_grid_size(const CatalogEntry& entry, const DerivativeBounds& db) {
    constexpr int kMin = 64;
    constexpr int kMax = 16384;
    const double h = select_dx(db);
    if (!std::isfinite(h)) return kMin;
    const double j = std::ceil(entry.f.length() / h);
    if (!(j < kMax)) return kMax;
    return std::max(kMin, static_cast<int>(j));
}

std::filesystem::path output_dir(const RunConfig& cfg) {
    if (cfg.output_dir) return *cfg.output_dir;
    if (const char* env = std::getenv("POT1D_OUT"); env != nullptr && *env != '\0') return env;
    return ".";
}

}  // namespace pot1d::cli
