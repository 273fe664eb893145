#pragma once

#include <vector>

#include "gip/chaos.hpp"
#include "gip/hitting.hpp"

namespace gip {

/// Diagonal action of Gamma(R) in the eigenbasis of R: the coefficient at
/// multiplicity vector r picks up prod_k beta_k^{r_k} per coordinate; the
/// order-0 term is fixed.
ChaosCoefficients gamma_transform(const ChaosCoefficients& coeffs,
                                  const std::vector<double>& betas);

struct SeriesEvaluation {
    double value = 0.0;
    double tail_bound = 0.0;
    std::vector<double> order_contribution;  // per order 0..n_max
};

/// Hermite-at-zero evaluation of the Gamma(R)-transformed series:
///   sum_n sum_r (n!/prod r!) beta^r a_r prod H_{r}(0)
/// (odd multiplicities vanish). The tail over truncated orders is bounded by
/// the calibrated Hermite constant times the geometric beta mass, with the
/// functional's second moment bounded by one.
SeriesEvaluation evaluate_at_zero(const ChaosCoefficients& coeffs,
                                  const std::vector<double>& betas, int d);

/// E H_{2k}(c xi) = (-1)^k (2k-1)!! (1-c^2)^k, i.e. (c')^{2k} H_{2k}(0) with
/// c' = sqrt(1-c^2); carries the (-1)^k of H_{2k}(0).
double example1_expectation(double c, int k);

/// One-dimensional second quantization: sum_n c^n a_n H_n(xi).
double gamma_1d(double c, const std::vector<double>& coefficients, double xi);

struct RankSpec {
    std::vector<double> betas;
    std::vector<int> frequencies;  // see presets.hpp
};

struct SeriesParams {
    ChaosQuadrature quad;
    int d = 1;
    bool convergence_diagnostic = true;
};

struct SeriesReport {
    HitEstimate estimate;  // method "series"; stderr carries the tail bound
    SeriesEvaluation evaluation;
    ChaosCoefficients coefficients;
    double second_moment = 0.0;
    double quad_rel_change = 0.0;  // max coefficient change when the time grid doubles
};

/// Full pipeline for P{exists tau in [0,1]: x + eta(tau) hits the boundary}
/// of the integrator A = complement_from_R(R): Duhamel kernels ->
/// symmetrize -> project onto the eigenbasis of R -> Gamma(R) -> evaluation
/// at zero noise.
SeriesReport hitting_probability_series(double x, const RankSpec& rank, const SeriesParams& params);

}  // namespace gip
