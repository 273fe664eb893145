#pragma once

#include <functional>
#include <vector>

#include "gip/errors.hpp"

namespace gip {

/// Uniform partition 0 = t_0 < t_1 < ... < t_n = 1 of the unit interval.
class Grid {
  public:
    explicit Grid(int n_cells);

    int n_cells() const { return n_cells_; }
    double dx() const { return dx_; }
    double endpoint(int i) const { return static_cast<double>(i) * dx_; }
    double midpoint(int i) const { return (static_cast<double>(i) + 0.5) * dx_; }

    bool operator==(const Grid& other) const { return n_cells_ == other.n_cells_; }
    bool operator!=(const Grid& other) const { return !(*this == other); }

  private:
    int n_cells_;
    double dx_;
};

/// Step function on a Grid: one real value per cell, an element of the
/// discretized L2([0,1]).
class GridFunction {
  public:
    GridFunction(Grid grid, std::vector<double> values);

    static GridFunction zero(Grid grid);

    const Grid& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int cell) const { return values_[static_cast<size_t>(cell)]; }
    const std::vector<double>& values() const { return values_; }

  private:
    Grid grid_;
    std::vector<double> values_;
};

Grid make_uniform_grid(int n_cells);

/// Exact L2 projection of 1_{[0,t]}: each cell carries the fraction of the
/// cell covered by [0,t].
GridFunction indicator(const Grid& grid, double t);

/// sum_i f_i g_i dx. Throws GridMismatch if the grids differ.
double inner_product(const GridFunction& f, const GridFunction& g);

double norm_l2(const GridFunction& f);

/// Midpoint-rule embedding of a continuous function; projection error is
/// O(dx^2) for C^2 inputs.
GridFunction project_continuous(const std::function<double(double)>& fn, const Grid& grid);

}  // namespace gip
