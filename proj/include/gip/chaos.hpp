#pragma once

#include <map>
#include <vector>

#include "gip/grid.hpp"
#include "gip/heat_halfline.hpp"

namespace gip {

struct ChaosQuadrature {
    int time_cells = 24;   // midpoint cells on [0,1]
    int space_cells = 160; // trapezoid nodes on [0, l_trunc]
    double l_trunc = 8.0;
    int max_order = 3;
};

/// Order-n kernel of the hitting functional, stored on ordered tuples
/// r_1 <= ... <= r_n of time-cell midpoints (packed multiset layout).
/// Order 0 is the scalar u0(x, 0).
class ChaosKernel {
  public:
    ChaosKernel(int order, double x, int time_cells, std::vector<double> packed);
    static ChaosKernel scalar(double x, double value);

    int order() const { return order_; }
    double x() const { return x_; }
    int time_cells() const { return time_cells_; }
    double midpoint(int cell) const { return (cell + 0.5) / time_cells_; }
    double scalar_value() const { return packed_[0]; }
    const std::vector<double>& packed() const { return packed_; }

    /// Value at an ascending tuple of cell indices.
    double value_sorted(const std::vector<int>& idx) const;

    static size_t simplex_size(int time_cells, int order);
    static size_t pack_rank(const std::vector<int>& ascending_idx, int time_cells);

  private:
    int order_;
    double x_;
    int time_cells_;
    std::vector<double> packed_;
};

/// Symmetric Ito-Wiener kernel b(t_1..t_n) = K(sort(t))/n!; cube integrals of
/// b against h tensors reproduce simplex integrals of K.
class SymmetricChaosKernel {
  public:
    explicit SymmetricChaosKernel(ChaosKernel kernel);

    int order() const { return kernel_.order(); }
    int time_cells() const { return kernel_.time_cells(); }
    double x() const { return kernel_.x(); }
    double midpoint(int cell) const { return kernel_.midpoint(cell); }

    /// Value at any tuple of cell indices (order free).
    double value(std::vector<int> idx) const;

    const ChaosKernel& simplex_kernel() const { return kernel_; }

  private:
    ChaosKernel kernel_;
};

/// Iterated Duhamel quadrature for the order-n kernel: the chain
/// psi_n = d/dz u0, psi_k = d/dz integral G(r_k, r_{k+1}, ., z') psi_{k+1} dz'
/// paired with G(0, r_1, x, .). Gradients are central differences on the
/// space grid (one-sided at the ends); a zero time gap degenerates the
/// propagation to the plain gradient.
ChaosKernel duhamel_kernel(int order, double x, const ChaosQuadrature& quad);

SymmetricChaosKernel symmetrize(const ChaosKernel& kernel);

/// Coefficients a^n_{r_1..r_m} = <b_n, tensor of e_k with multiplicities r>,
/// keyed by the multiplicity vector (length m, entries summing to n). The
/// basis functions live on the kernel's time grid.
std::map<std::vector<int>, double> project_to_basis(const SymmetricChaosKernel& kernel,
                                                    const std::vector<GridFunction>& basis);

struct ChaosCoefficients {
    int m = 0;      // basis size
    int d = 1;      // process dimension; keys have m*d slots (coordinate-major)
    int n_max = 0;
    std::vector<std::map<std::vector<int>, double>> orders;  // index = order n

    /// sum over orders of (n!^2 / prod r!) coef^2, the projected part of the
    /// second moment.
    double second_moment() const;
};

struct FourierWienerReport {
    double epsilon = 0.0;
    std::vector<double> pairing;  // per order: simplex integral of K_n against h tensors
    std::vector<double> taylor;   // per order: ladder extraction from solve_drifted
    std::vector<double> abs_error;
    std::vector<double> rel_error;
};

/// Taylor-in-epsilon extraction of U^{eps h}(x, 0) from the PDE solver
/// against the Duhamel pairings, orders 0..max_order (<= 3).
FourierWienerReport fourier_wiener_check(double x, const GridFunction& h, int max_order,
                                         double epsilon, const ChaosQuadrature& quad,
                                         const SchemeParams& pde);

}  // namespace gip
