// SPDX-License-Identifier: MIT
#include "pot1d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pot1d {
namespace {

struct Panel {
    double a, fa, m, fm, b, fb, whole;
};

Panel make_panel(const std::function<double(double)>& f, double a, double fa, double b,
                 double fb) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    return {a, fa, m, fm, b, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
}

double recurse(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
               const SimpsonOptions& opts) {
    const Panel left = make_panel(f, p.a, p.fa, p.m, p.fm);
    const Panel right = make_panel(f, p.m, p.fm, p.b, p.fb);
    const double refined = left.whole + right.whole;
    const double delta = refined - p.whole;

    const bool narrow = (p.b - p.a) <= opts.max_panel;
    if (depth >= opts.max_depth || (narrow && std::abs(delta) <= 15.0 * tol)) {
        // Richardson correction.
        return refined + delta / 15.0;
    }
    return recurse(f, left, 0.5 * tol, depth + 1, opts) +
           recurse(f, right, 0.5 * tol, depth + 1, opts);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const SimpsonOptions& opts) {
    if (a == b) return 0.0;
    if (b < a) return -adaptive_simpson(f, b, a, opts);
    const Panel root = make_panel(f, a, f(a), b, f(b));
    return recurse(f, root, opts.abs_tol, 0, opts);
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const SimpsonOptions& opts) {
    if (a == b) return 0.0;
    if (b < a) return -integrate_piecewise(f, b, a, breakpoints, opts);

    std::vector<double> cuts{a};
    for (double bp : breakpoints) {
        if (bp > a && bp < b) cuts.push_back(bp);
    }
    cuts.push_back(b);

    if (cuts.size() == 2) return adaptive_simpson(f, a, b, opts);

    const double length = b - a;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        SimpsonOptions piece = opts;
        piece.abs_tol = opts.abs_tol * (cuts[i + 1] - cuts[i]) / length;
        // Densities are right-continuous, so the right end of a piece is
        // sampled from the left.
        const double right_end = cuts[i + 1];
        const double inside = std::nextafter(right_end, -INFINITY);
        auto one_sided = [&f, right_end, inside](double x) {
            return f(x >= right_end ? inside : x);
        };
        total += adaptive_simpson(one_sided, cuts[i], right_end, piece);
    }
    return total;
}

}  // namespace pot1d
