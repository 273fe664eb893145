#include "gip/operators.hpp"

#include <cmath>

#include "gip/errors.hpp"

namespace gip {

DenseOperator::DenseOperator(Grid grid, Eigen::MatrixXd coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != grid_.n_cells() || coeffs_.cols() != grid_.n_cells()) {
        throw GridMismatch("DenseOperator: coefficient array does not match grid");
    }
}

GridFunction DenseOperator::apply(const GridFunction& h) const {
    if (h.grid() != grid_) throw GridMismatch("DenseOperator::apply: grid mismatch");
    Eigen::Map<const Eigen::VectorXd> v(h.values().data(), h.size());
    Eigen::VectorXd out = coeffs_ * v;
    return GridFunction(grid_, std::vector<double>(out.data(), out.data() + out.size()));
}

namespace {

Eigen::VectorXd chi_coords(const GridFunction& f) {
    const double s = std::sqrt(f.grid().dx());
    Eigen::VectorXd v(f.size());
    for (int i = 0; i < f.size(); ++i) v(i) = f[i] * s;
    return v;
}

}  // namespace

void validate_finite_rank(const FiniteRank& r, const Grid& grid) {
    constexpr double kOrthoTol = 1e-8;
    for (const auto& term : r.terms) {
        if (term.e.grid() != grid) throw GridMismatch("finite rank: basis function on wrong grid");
        if (std::abs(term.beta) >= 1.0) {
            throw BetaOutOfRange("finite rank: |beta| must be < 1, got " +
                                 std::to_string(term.beta));
        }
    }
    for (size_t j = 0; j < r.terms.size(); ++j) {
        for (size_t k = j; k < r.terms.size(); ++k) {
            const double ip = inner_product(r.terms[j].e, r.terms[k].e);
            const double expected = (j == k) ? 1.0 : 0.0;
            if (std::abs(ip - expected) > kOrthoTol) {
                throw NonOrthonormalBasis("finite rank: <e_" + std::to_string(j) + ", e_" +
                                          std::to_string(k) + "> = " + std::to_string(ip));
            }
        }
    }
}

DenseOperator to_dense(const OperatorRep& op, const Grid& grid) {
    const int n = grid.n_cells();
    return std::visit(
        [&](const auto& rep) -> DenseOperator {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, IdentityOp>) {
                return DenseOperator(grid, Eigen::MatrixXd::Identity(n, n));
            } else if constexpr (std::is_same_v<T, IntegralKernel>) {
                Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        m(i, j) += grid.dx() * rep.q(grid.midpoint(i), grid.midpoint(j));
                return DenseOperator(grid, std::move(m));
            } else if constexpr (std::is_same_v<T, FiniteRank>) {
                validate_finite_rank(rep, grid);
                Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
                for (const auto& term : rep.terms) {
                    const Eigen::VectorXd u = chi_coords(term.e);
                    m += term.beta * u * u.transpose();
                }
                return DenseOperator(grid, std::move(m));
            } else if constexpr (std::is_same_v<T, IdentityPlusRank>) {
                Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
                for (const auto& term : rep.terms) {
                    if (term.e.grid() != grid)
                        throw GridMismatch("identity plus rank: basis function on wrong grid");
                    const Eigen::VectorXd u = chi_coords(term.e);
                    m += term.beta * u * u.transpose();
                }
                return DenseOperator(grid, std::move(m));
            } else {
                static_assert(std::is_same_v<T, DenseSpec>);
                return DenseOperator(grid, rep.coeffs);
            }
        },
        op);
}

DenseOperator adjoint(const DenseOperator& op) {
    return DenseOperator(op.grid(), op.coeffs().transpose());
}

DenseOperator compose(const DenseOperator& a, const DenseOperator& b) {
    if (a.grid() != b.grid()) throw GridMismatch("compose: grid mismatch");
    return DenseOperator(a.grid(), a.coeffs() * b.coeffs());
}

double operator_norm(const DenseOperator& op) {
    // largest singular value via the symmetric eigenproblem of A^T A
    const Eigen::MatrixXd gram = op.coeffs().transpose() * op.coeffs();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    return lmax > 0.0 ? std::sqrt(lmax) : 0.0;
}

DenseOperator defect_sqrt(const DenseOperator& a, double tol) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(a.coeffs().rows(), a.coeffs().cols()) -
                        a.coeffs().transpose() * a.coeffs();
    s = 0.5 * (s + s.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < -tol) {
        throw NotAContraction("defect_sqrt: min eigenvalue of I - A*A is " +
                              std::to_string(lmin) + " < -tol; ||A|| > 1");
    }
    Eigen::VectorXd d = es.eigenvalues();
    for (int i = 0; i < d.size(); ++i) d(i) = d(i) > 0.0 ? std::sqrt(d(i)) : 0.0;
    Eigen::MatrixXd q = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
    q = 0.5 * (q + q.transpose().eval());
    return DenseOperator(a.grid(), std::move(q));
}

IdentityPlusRank complement_rep_from_R(const FiniteRank& r, const Grid& grid) {
    validate_finite_rank(r, grid);
    IdentityPlusRank rep;
    rep.terms.reserve(r.terms.size());
    for (const auto& term : r.terms) {
        const double c = std::sqrt(1.0 - term.beta * term.beta) - 1.0;
        rep.terms.push_back({c, term.e});
    }
    return rep;
}

DenseOperator complement_from_R(const FiniteRank& r, const Grid& grid) {
    return to_dense(OperatorRep{complement_rep_from_R(r, grid)}, grid);
}

}  // namespace gip
