// SPDX-License-Identifier: MIT
#include "pot1d/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pot1d/error.hpp"

namespace pot1d {

Grid::Grid(double a, double b, int j_count) : a_(a), b_(b), j_count_(j_count) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidArgument("grid: need finite endpoints with b > a");
    }
    if (j_count < 4) throw InvalidArgument("grid: need at least 4 cells");
    dx_ = (b - a) / j_count;
    nodes_.resize(static_cast<std::size_t>(j_count) + 3);
    for (int j = -1; j <= j_count + 1; ++j) {
        nodes_[static_cast<std::size_t>(j + 1)] = a + j * dx_;
    }
    // a + J * ((b - a) / J) can miss b by an ulp.
    nodes_[static_cast<std::size_t>(j_count) + 1] = b;
}

double Grid::x(int j) const {
    if (j < -1 || j > j_count_ + 1) {
        std::ostringstream msg;
        msg << "grid node " << j << " outside -1.." << j_count_ + 1;
        throw IndexError(msg.str());
    }
    return nodes_[static_cast<std::size_t>(j + 1)];
}

Grid build_grid(double a, double b, int j_count) { return Grid(a, b, j_count); }

bool GridRow::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void check_stencil(const GridRow& row, const Grid& grid, int j) {
    if (row.j_count() != grid.j_count()) throw InvalidArgument("row and grid sizes differ");
    if (j < 0 || j > grid.j_count()) {
        std::ostringstream msg;
        msg << "stencil index " << j << " outside 0.." << grid.j_count();
        throw IndexError(msg.str());
    }
}

}  // namespace

double grad_centered(const GridRow& row, const Grid& grid, int j) {
    check_stencil(row, grid, j);
    return (row[j + 1] - row[j - 1]) / (2.0 * grid.dx());
}

double lap_centered(const GridRow& row, const Grid& grid, int j) {
    check_stencil(row, grid, j);
    return (row[j + 1] + row[j - 1] - 2.0 * row[j]) / (grid.dx() * grid.dx());
}

void apply_ghosts_inplace(GridRow& row, const Grid& grid, double c, double d) {
    const int jn = grid.j_count();
    row[-1] = row[1] - 2.0 * c * grid.dx();
    row[jn + 1] = row[jn - 1] + 2.0 * d * grid.dx();
}

GridRow apply_ghosts(GridRow row, const Grid& grid, double c, double d) {
    apply_ghosts_inplace(row, grid, c, d);
    return row;
}

}  // namespace pot1d
