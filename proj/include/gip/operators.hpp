#pragma once

#include <Eigen/Dense>
#include <functional>
#include <variant>
#include <vector>

#include "gip/grid.hpp"

namespace gip {

struct IdentityOp {};

/// h |-> h + integral q(.,s) h(s) ds with a continuous kernel q.
struct IntegralKernel {
    std::function<double(double, double)> q;
};

struct RankOneTerm {
    double beta;
    GridFunction e;
};

/// sum_k beta_k e_k (x) e_k with {e_k} orthonormal.
struct FiniteRank {
    std::vector<RankOneTerm> terms;
};

/// I + sum_k c_k e_k (x) e_k; the form complement_from_R produces. Kept as a
/// separate variant so path sampling can exploit the structure.
struct IdentityPlusRank {
    std::vector<RankOneTerm> terms;  // beta field holds c_k here
};

struct DenseSpec {
    Eigen::MatrixXd coeffs;
};

using OperatorRep = std::variant<IdentityOp, IntegralKernel, FiniteRank, IdentityPlusRank, DenseSpec>;

/// n x n coefficient array in the orthonormal cell basis chi_i = dx^{-1/2} 1_{cell_i}.
/// Step-value vectors transform with the same array (the chi scaling is a
/// global scalar), so apply() acts on raw GridFunction values directly.
class DenseOperator {
  public:
    DenseOperator(Grid grid, Eigen::MatrixXd coeffs);

    const Grid& grid() const { return grid_; }
    const Eigen::MatrixXd& coeffs() const { return coeffs_; }

    GridFunction apply(const GridFunction& h) const;

  private:
    Grid grid_;
    Eigen::MatrixXd coeffs_;
};

DenseOperator to_dense(const OperatorRep& op, const Grid& grid);

DenseOperator adjoint(const DenseOperator& op);

DenseOperator compose(const DenseOperator& a, const DenseOperator& b);

/// Largest singular value.
double operator_norm(const DenseOperator& op);

/// Symmetric PSD square root of I - A*A. Eigenvalues in [-tol, 0) are
/// clamped to zero; anything below -tol means ||A|| > 1 and raises
/// NotAContraction.
DenseOperator defect_sqrt(const DenseOperator& a, double tol = 1e-10);

/// Validates |beta_k| < 1 and pairwise orthonormality of {e_k} (tolerance
/// 1e-8). Throws BetaOutOfRange / NonOrthonormalBasis / GridMismatch.
void validate_finite_rank(const FiniteRank& r, const Grid& grid);

/// The symmetric A = (I - R*R)^{1/2} = I + sum_k (sqrt(1-beta_k^2)-1) e_k (x) e_k
/// satisfying the energy identity ||Ah||^2 + ||Rh||^2 = ||h||^2.
DenseOperator complement_from_R(const FiniteRank& r, const Grid& grid);

/// Structured form of complement_from_R for samplers.
IdentityPlusRank complement_rep_from_R(const FiniteRank& r, const Grid& grid);

}  // namespace gip
