#pragma once

#include <cstdint>
#include <string>

#include "gip/integrator.hpp"

namespace gip {

/// Half-line domain D = (b, inf) after picking the normal coordinate; for
/// d > 1 the boundary is the axis-aligned hyperplane {x_normal = b} and only
/// the normal coordinate decides the hit.
struct DomainSpec {
    double b = 0.0;
    int normal_coordinate = 0;
};

struct HitEstimate {
    double p_hat = 0.0;
    double stderr_ = 0.0;
    long long n_paths = 0;
    std::string method;  // mc_raw | mc_bridge | oracle | series
    int n_cells = 0;
    std::uint64_t seed = 0;
    double tail_bound = 0.0;       // series only
    bool biased_bridge = false;    // bridge correction forced on a non unit-diffusion operator
    int reduced_from_dimension = 1;
};

struct McOptions {
    bool bridge_correction = false;
    /// The interval crossing law exp(-2 d_i d_{i+1}/dx) is exact when A has a
    /// unit identity part (identity, identity-plus-rank, integral kernel):
    /// conditionally on the grid values the interior is a standard Brownian
    /// bridge plus a linear shift. Operators without that structure change
    /// the interior diffusion, so the correction is only allowed with this
    /// override and the estimate is reported as biased.
    bool allow_biased_bridge = false;
};

/// Fraction of paths whose grid minimum of x + eta(t) - b reaches zero,
/// optionally with the per-interval bridge crossing correction.
HitEstimate mc_hit_probability(const IntegratorModel& model, const DomainSpec& domain, double x,
                               long long n_paths, std::uint64_t seed, const McOptions& options);

/// Independent oracle for the integrator A = complement_from_R(beta 1 (x) 1):
/// conditionally on w(1) = g the path is a Brownian bridge from x to
/// x + sqrt(1-beta^2) g, so the hit probability is the Gaussian average of
/// the bridge crossing formula. The kinked average splits at the bridge
/// endpoint sign change into an exact Gaussian mass plus a smooth tilted
/// tail; the tail is evaluated by composite Gauss-Legendre panels and
/// cross-checked against its closed form, and the larger of the two
/// discrepancies (half-order difference, closed-form difference) is reported
/// as the error estimate.
HitEstimate partial_bridge_oracle(double x_minus_b, double beta, int quad_order);

namespace serial_ref {

/// Single-loop reference estimator over the dense operator route.
HitEstimate mc_hit_probability(const IntegratorModel& model, const DomainSpec& domain, double x,
                               long long n_paths, std::uint64_t seed, const McOptions& options);

}  // namespace serial_ref

}  // namespace gip
