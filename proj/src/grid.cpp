#include "gip/grid.hpp"

#include <algorithm>
#include <cmath>

namespace gip {

Grid::Grid(int n_cells) : n_cells_(n_cells), dx_(1.0 / static_cast<double>(n_cells)) {
    if (n_cells < 2) {
        throw std::invalid_argument("Grid: n_cells must be >= 2, got " + std::to_string(n_cells));
    }
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n_cells()) {
        throw std::invalid_argument("GridFunction: value count does not match grid");
    }
}

GridFunction GridFunction::zero(Grid grid) {
    return GridFunction(grid, std::vector<double>(static_cast<size_t>(grid.n_cells()), 0.0));
}

Grid make_uniform_grid(int n_cells) { return Grid(n_cells); }

GridFunction indicator(const Grid& grid, double t) {
    if (t < 0.0 || t > 1.0) {
        throw std::domain_error("indicator: t must lie in [0,1], got " + std::to_string(t));
    }
    std::vector<double> v(static_cast<size_t>(grid.n_cells()));
    for (int i = 0; i < grid.n_cells(); ++i) {
        const double covered = (t - grid.endpoint(i)) / grid.dx();
        v[static_cast<size_t>(i)] = std::clamp(covered, 0.0, 1.0);
    }
    return GridFunction(grid, std::move(v));
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    if (f.grid() != g.grid()) {
        throw GridMismatch("inner_product: grids differ");
    }
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * f.grid().dx();
}

double norm_l2(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

GridFunction project_continuous(const std::function<double(double)>& fn, const Grid& grid) {
    std::vector<double> v(static_cast<size_t>(grid.n_cells()));
    for (int i = 0; i < grid.n_cells(); ++i) v[static_cast<size_t>(i)] = fn(grid.midpoint(i));
    return GridFunction(grid, std::move(v));
}

}  // namespace gip
