#pragma once

#include <cstdint>
#include <vector>

#include "gip/grid.hpp"
#include "gip/operators.hpp"

namespace gip {

/// eta(t) = integral_0^1 A(1_{[0,t]})(s) dw(s), acting componentwise in
/// dimension d. Keeps both the symbolic operator (samplers exploit the
/// structure) and its dense form.
class IntegratorModel {
  public:
    IntegratorModel(Grid grid, OperatorRep rep, int dimension = 1);

    const Grid& grid() const { return grid_; }
    const OperatorRep& rep() const { return rep_; }
    const DenseOperator& dense() const { return dense_; }
    int dimension() const { return dimension_; }

  private:
    Grid grid_;
    OperatorRep rep_;
    DenseOperator dense_;
    int dimension_;
};

/// Realized paths: values indexed by (path, endpoint 0..n_cells, coordinate).
struct PathEnsemble {
    Grid grid;
    int n_paths = 0;
    int dimension = 1;
    std::uint64_t seed = 0;
    std::vector<double> values;

    double at(int path, int endpoint, int coord = 0) const {
        const auto n = static_cast<size_t>(grid.n_cells() + 1);
        const auto d = static_cast<size_t>(dimension);
        return values[(static_cast<size_t>(path) * n + static_cast<size_t>(endpoint)) * d +
                      static_cast<size_t>(coord)];
    }
};

struct IntegratorConditionReport {
    double max_ratio = 0.0;
    double bound_constant = 0.0;  // ||A||^2
    bool within_bound = false;
};

struct DecompositionReport {
    double max_abs_deviation = 0.0;
};

/// <A 1_{[0,s]}, A 1_{[0,t]}> per coordinate.
double covariance(const IntegratorModel& model, double s, double t);

/// i.i.d. N(0, dx) cell increments pushed through A; path p draws from the
/// counter-based stream (seed, p), so the ensemble does not depend on how
/// paths are scheduled across threads.
PathEnsemble sample_paths(const IntegratorModel& model, int n_paths, std::uint64_t seed);

/// Exact quadratic-form check of the defining increment bound: for random
/// partitions and coefficients, E(sum a_k (eta(t_{k+1})-eta(t_k)))^2 equals
/// ||A u||^2 with u the step function sum a_k 1_{[t_k,t_{k+1})}; the ratio to
/// sum a_k^2 dt_k is capped by ||A||^2. The dt_k weights are unsquared: the
/// squared variant fails under refinement already for A = I.
IntegratorConditionReport check_integrator_condition(const IntegratorModel& model, int n_trials,
                                                     std::uint64_t seed);

/// Builds Q = defect_sqrt(A) and returns the worst grid-aligned deviation of
/// <A1_s,A1_t> + <Q1_s,Q1_t> from min(s,t); zero means eta + zeta is a Wiener
/// process on the grid.
DecompositionReport decomposition_check(const DenseOperator& a);

namespace serial_ref {

/// Plain-loop reference sampler: always goes through the dense operator, one
/// path at a time. Used by tests and the benchmark to validate the parallel
/// kernel.
PathEnsemble sample_paths(const IntegratorModel& model, int n_paths, std::uint64_t seed);

}  // namespace serial_ref

}  // namespace gip
