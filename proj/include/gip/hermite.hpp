#pragma once

#include <vector>

namespace gip {

/// Probabilists' Hermite polynomial H_n(x) via the three-term recurrence
/// H_{n+1} = x H_n - n H_{n-1}, H_0 = 1, H_1 = x.
double hermite_eval(int n, double x);

/// H_n(0): zero for odd n, (-1)^{n/2} (n-1)!! for even n. Exact (it agrees
/// with hermite_eval(n, 0) bit for bit) for n <= 30.
double hermite_at_zero(int n);

/// n!! with the empty-product conventions (-1)!! = 0!! = 1. Computed in
/// 64-bit integers up to n = 33, in floating point beyond (relative error
/// below 1e-12 there from the final conversion).
double double_factorial(int n);

/// The sup-norm envelope n^{-1/4} sqrt(n!) for H_n on [-1,1], without the
/// multiplicative constant; pair it with calibrated_hermite_constant().
double hermite_sup_bound(int n);

/// Empirical constant c such that max_{[-1,1]} |H_n| <= c * hermite_sup_bound(n)
/// for every n <= 40, obtained by dense sampling. Cached after the first call.
double calibrated_hermite_constant();

struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // sums to 1; quadrature of E f(xi), xi ~ N(0,1)
};

/// Gauss-Hermite rule for the standard Gaussian weight (Golub-Welsch on the
/// probabilists' Jacobi matrix). sum_i w_i f(x_i) integrates polynomials of
/// degree 2*order-1 exactly against N(0,1).
GaussHermiteRule gauss_hermite(int order);

}  // namespace gip
