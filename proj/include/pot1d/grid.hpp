// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <vector>

namespace pot1d {

/// Uniform grid on [a, b] with J cells and one ghost node on each side,
/// nodes x_j = a + j dx for j = -1..J+1.
class Grid {
public:
    /// Throws InvalidArgument if b <= a or j_count < 4.
    Grid(double a, double b, int j_count);

    double a() const { return a_; }
    double b() const { return b_; }
    int j_count() const { return j_count_; }
    double dx() const { return dx_; }

    /// Node coordinate for j in -1..J+1. x(0) == a and x(J) == b exactly.
    double x(int j) const;

    /// All J+3 node coordinates, ghosts included, in index order.
    std::span<const double> nodes() const { return nodes_; }

private:
    double a_;
    double b_;
    int j_count_;
    double dx_;
    std::vector<double> nodes_;
};

Grid build_grid(double a, double b, int j_count);

/// Potential values at one time level, ghosts included. Storage is
/// contiguous with index j stored at slot j + 1.
class GridRow {
public:
    GridRow() = default;
    explicit GridRow(int j_count) : values_(static_cast<std::size_t>(j_count) + 3, 0.0) {}

    int j_count() const { return static_cast<int>(values_.size()) - 3; }

    double& operator[](int j) { return values_[static_cast<std::size_t>(j + 1)]; }
    double operator[](int j) const { return values_[static_cast<std::size_t>(j + 1)]; }

    /// Raw storage, slot 0 is the left ghost.
    std::span<double> raw() { return values_; }
    std::span<const double> raw() const { return values_; }

    /// True if every entry (ghosts included) is finite.
    bool all_finite() const;

    friend bool operator==(const GridRow&, const GridRow&) = default;

private:
    std::vector<double> values_;
};

/// Samples fn at every node, ghosts included.
template <typename Fn>
GridRow sample_row(const Grid& grid, Fn&& fn) {
    GridRow row(grid.j_count());
    for (int j = -1; j <= grid.j_count() + 1; ++j) row[j] = fn(grid.x(j));
    return row;
}

/// (U_{j+1} - U_{j-1}) / (2 dx). Throws IndexError unless 0 <= j <= J.
double grad_centered(const GridRow& row, const Grid& grid, int j);

/// (U_{j+1} + U_{j-1} - 2 U_j) / dx^2. Throws IndexError unless 0 <= j <= J.
double lap_centered(const GridRow& row, const Grid& grid, int j);

/// Sets U_{-1} = U_1 - 2 c dx and U_{J+1} = U_{J-1} + 2 d dx so the centered
/// gradient equals c at j = 0 and d at j = J.
GridRow apply_ghosts(GridRow row, const Grid& grid, double c, double d);

/// In-place variant used by the stepper.
void apply_ghosts_inplace(GridRow& row, const Grid& grid, double c, double d);

}  // namespace pot1d
