// SPDX-License-Identifier: MIT
#include "pot1d/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pot1d/error.hpp"

namespace pot1d {

ErrorSample error_sample(const CatalogEntry& entry, const GridRow& row, const Grid& grid, int j,
                         double quad_tol) {
    const double s = grad_centered(row, grid, j);
    const double y = std::clamp(s, entry.g.interval_lo, entry.g.interval_hi);
    const double e = std::abs(cdf(entry.f, grid.x(j), quad_tol) - cdf(entry.g, y, quad_tol));
    return {e, std::abs(y - s) > 1e-12 * entry.g.length()};
}

double error_function(const CatalogEntry& entry, const GridRow& row, const Grid& grid, int j,
                      double quad_tol) {
    return error_sample(entry, row, grid, j, quad_tol).value;
}

double max_error(const CatalogEntry& entry, const GridRow& row, const Grid& grid,
                 std::span<const int> probe_js, double quad_tol) {
    double out = 0.0;
    for (int j : probe_js) out = std::max(out, error_function(entry, row, grid, j, quad_tol));
    return out;
}

double map_error_bound(double sigma, const CatalogEntry& entry) {
    return sigma / extrema(entry.g, 100000).min_val;
}

MonotonicityResult monotonicity_check(const GridRow& row, const Grid& grid) {
    MonotonicityResult r;
    double prev = grad_centered(row, grid, 0);
    for (int j = 1; j <= grid.j_count(); ++j) {
        const double cur = grad_centered(row, grid, j);
        if (cur - prev < -1e-12) {
            r.ok = false;
            r.first_violation = j;
            return r;
        }
        prev = cur;
    }
    return r;
}

double oracle_error(const CatalogEntry& /*entry*/, const GridRow& row, const Grid& grid,
                    const OptimalMap& oracle) {
    const auto nodes = grid.nodes().subspan(1, static_cast<std::size_t>(grid.j_count()) + 1);
    const auto t = optimal_map_sweep(oracle, nodes);
    double out = 0.0;
    for (int j = 0; j <= grid.j_count(); ++j) {
        out = std::max(out, std::abs(grad_centered(row, grid, j) - t[static_cast<std::size_t>(j)]));
    }
    return out;
}

std::vector<int> probe_indices(int j_count, int count) {
    count = std::clamp(count, 2, j_count + 1);
    std::vector<int> js;
    js.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const long long num = static_cast<long long>(k) * j_count;
        js.push_back(static_cast<int>((num + (count - 1) / 2) / (count - 1)));
    }
    js.front() = 0;
    js.back() = j_count;
    js.erase(std::unique(js.begin(), js.end()), js.end());
    return js;
}

ErrorEvaluator::ErrorEvaluator(const CatalogEntry& entry, const Grid& grid, double quad_tol)
    : entry_(entry), grid_(grid) {
    const auto& f = entry.f;
    f_cdf_.resize(static_cast<std::size_t>(grid.j_count()) + 1);
    double acc = 0.0;
    double x_prev = f.interval_lo;
    for (int j = 0; j <= grid.j_count(); ++j) {
        const double x = grid.x(j);
        if (f.has_analytic_cdf()) {
            f_cdf_[static_cast<std::size_t>(j)] = f.analytic_cdf(x);
            continue;
        }
        acc += integrate_density(f, x_prev, x, quad_tol * (x - x_prev) / f.length());
        f_cdf_[static_cast<std::size_t>(j)] = acc;
        x_prev = x;
    }
}

std::vector<double> ErrorEvaluator::evaluate(const GridRow& row, std::span<const int> js,
                                             double quad_tol) const {
    const auto& g = entry_.g;
    const std::size_t n = js.size();
    std::vector<double> ys(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = grad_centered(row, grid_, js[k]);
        ys[k] = std::clamp(s, g.interval_lo, g.interval_hi);
        if (std::abs(ys[k] - s) > 1e-12 * g.length()) ++excursions_;
    }

    std::vector<double> g_cdf(n);
    if (g.has_analytic_cdf()) {
        for (std::size_t k = 0; k < n; ++k) g_cdf[k] = g.analytic_cdf(ys[k]);
    } else {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&ys](std::size_t a, std::size_t b) { return ys[a] < ys[b]; });
        double acc = 0.0;
        double y_prev = g.interval_lo;
        for (std::size_t k : order) {
            acc += integrate_density(g, y_prev, ys[k], quad_tol * (ys[k] - y_prev) / g.length());
            g_cdf[k] = acc;
            y_prev = ys[k];
        }
    }

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = std::abs(f_cdf_[static_cast<std::size_t>(js[k])] - g_cdf[k]);
    }
    return out;
}

double ErrorEvaluator::max_over(const GridRow& row, std::span<const int> js,
                                double quad_tol) const {
    const auto e = evaluate(row, js, quad_tol);
    return e.empty() ? 0.0 : *std::max_element(e.begin(), e.end());
}

}  // namespace pot1d
