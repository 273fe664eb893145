#pragma once

#include <vector>

#include "gip/grid.hpp"

namespace gip {

/// Field U(x_i, t_j) on [0, L] x [0, 1]; U(x, t) is the probability that the
/// drifted Brownian motion started at x at time t touches 0 by time 1.
struct HeatField {
    std::vector<double> xs;
    std::vector<double> ts;
    std::vector<double> values;  // row-major over time: values[j * xs.size() + i]

    double at(int i, int j) const { return values[static_cast<size_t>(j) * xs.size() + static_cast<size_t>(i)]; }
    double& at(int i, int j) { return values[static_cast<size_t>(j) * xs.size() + static_cast<size_t>(i)]; }

    /// Bilinear interpolation inside the box.
    double interpolate(double x, double t) const;
};

struct SchemeParams {
    int nx = 400;
    int nt = 400;
    double l_trunc = 8.0;
    /// Width of the terminal window filled with the frozen-drift closed form;
    /// the march starts from that resolved profile. Non-positive selects
    /// max(16 dx^2, 2 dt).
    double terminal_window = 0.0;
};

/// Absorbing heat kernel on the half-line by the method of images, generator
/// (1/2) Laplacian: phi_{t-s}(y-x) - phi_{t-s}(y+x).
double green(double s, double t, double x, double y);

/// Interior normal derivative of the Green function at the boundary:
/// d/dy G(s,t,x,y)|_{y=0} = 2x/(t-s) phi_{t-s}(x).
double green_normal_derivative(double s, double t, double x);

/// Drift-free hitting probability 2(1 - Phi(x / sqrt(1-t))).
double u0(double x, double t);

/// d/dx u0 = -2 phi(x / sqrt(1-t)) / sqrt(1-t).
double u0_gradient(double x, double t);

/// Hitting probability of level 0 by time tau for Brownian motion from x > 0
/// with constant drift c (exact; used for the terminal window and far
/// boundary of the solver).
double const_drift_hit(double x, double c, double tau);

/// Backward Crank-Nicolson solve of
///   dU/dt = -(1/2) U_xx - h(t) U_x,  U(x,1) = 0,  U(0,t) = 1
/// on [0, L]. The drift enters at the time midpoint; the far boundary takes
/// the frozen-drift value; cell Peclet |h| dx must stay <= 1 or
/// SchemeUnstable is thrown.
HeatField solve_drifted(const GridFunction& h, const SchemeParams& params);

}  // namespace gip
