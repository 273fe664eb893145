#include "gip/heat_halfline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gip/errors.hpp"

namespace gip {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double norm_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double log_norm_cdf(double z) {
    if (z > -8.0) return std::log(norm_cdf(z));
    const double z2 = z * z;
    return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) +
           std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
}

double heat_kernel(double tau, double u) {
    return std::exp(-u * u / (2.0 * tau)) / std::sqrt(2.0 * std::numbers::pi * tau);
}

}  // namespace

double HeatField::interpolate(double x, double t) const {
    const double dx = xs[1] - xs[0];
    const double dt = ts[1] - ts[0];
    const int nx = static_cast<int>(xs.size()) - 1;
    const int nt = static_cast<int>(ts.size()) - 1;
    const double fi = std::clamp((x - xs[0]) / dx, 0.0, static_cast<double>(nx));
    const double fj = std::clamp((t - ts[0]) / dt, 0.0, static_cast<double>(nt));
    const int i = std::min(nx - 1, static_cast<int>(fi));
    const int j = std::min(nt - 1, static_cast<int>(fj));
    const double a = fi - i;
    const double b = fj - j;
    return (1.0 - a) * (1.0 - b) * at(i, j) + a * (1.0 - b) * at(i + 1, j) +
           (1.0 - a) * b * at(i, j + 1) + a * b * at(i + 1, j + 1);
}

double green(double s, double t, double x, double y) {
    if (s >= t) throw std::domain_error("green: requires s < t");
    const double tau = t - s;
    return heat_kernel(tau, y - x) - heat_kernel(tau, y + x);
}

double green_normal_derivative(double s, double t, double x) {
    if (s >= t) throw std::domain_error("green_normal_derivative: requires s < t");
    const double tau = t - s;
    return 2.0 * x / tau * heat_kernel(tau, x);
}

double u0(double x, double t) {
    if (t >= 1.0) return x > 0.0 ? 0.0 : 1.0;
    if (x <= 0.0) return 1.0;
    return std::erfc(x / (kSqrt2 * std::sqrt(1.0 - t)));
}

double u0_gradient(double x, double t) {
    const double s = std::sqrt(1.0 - t);
    return -2.0 * norm_pdf(x / s) / s;
}

double const_drift_hit(double x, double c, double tau) {
    if (x <= 0.0) return 1.0;
    if (tau <= 0.0) return 0.0;
    const double rt = std::sqrt(tau);
    const double term1 = norm_cdf((-x - c * tau) / rt);
    const double term2 = std::exp(-2.0 * c * x + log_norm_cdf((-x + c * tau) / rt));
    return std::min(1.0, term1 + term2);
}

HeatField solve_drifted(const GridFunction& h, const SchemeParams& params) {
    if (params.l_trunc < 6.0)
        throw std::invalid_argument("solve_drifted: l_trunc must be >= 6");
    if (params.nx < 8 || params.nt < 8)
        throw std::invalid_argument("solve_drifted: nx and nt must be >= 8");

    const int nx = params.nx;
    const int nt = params.nt;
    const double dx = params.l_trunc / nx;
    const double dt = 1.0 / nt;

    double h_max = 0.0;
    for (int i = 0; i < h.size(); ++i) h_max = std::max(h_max, std::abs(h[i]));
    const double peclet = h_max * dx;
    if (peclet > 1.0 + 1e-12) {
        throw SchemeUnstable("solve_drifted: cell Peclet |h| dx = " + std::to_string(peclet) +
                             " > 1; refine the space grid");
    }

    // step lookup plus drift averages over [t, 1] for the window and far field
    const int nh = h.size();
    const auto h_at = [&](double t) {
        const int cell = std::min(nh - 1, static_cast<int>(t * nh));
        return h[cell];
    };
    std::vector<double> h_suffix(static_cast<size_t>(nh) + 1, 0.0);  // integral over [t_k, 1]
    for (int k = nh - 1; k >= 0; --k)
        h_suffix[static_cast<size_t>(k)] = h_suffix[static_cast<size_t>(k) + 1] + h[k] / nh;
    const auto drift_avg_to_end = [&](double t) {
        if (t >= 1.0) return h_at(1.0 - 1e-12);
        const double cell_w = 1.0 / nh;
        const int cell = std::min(nh - 1, static_cast<int>(t * nh));
        const double inside = (static_cast<double>(cell + 1) * cell_w - t) * h[cell];
        return (inside + h_suffix[static_cast<size_t>(cell) + 1]) / (1.0 - t);
    };

    double window = params.terminal_window;
    if (window <= 0.0) window = std::max(16.0 * dx * dx, 2.0 * dt);
    if (window >= 0.5) throw std::invalid_argument("solve_drifted: terminal window too wide");

    HeatField field;
    field.xs.resize(static_cast<size_t>(nx) + 1);
    field.ts.resize(static_cast<size_t>(nt) + 1);
    for (int i = 0; i <= nx; ++i) field.xs[static_cast<size_t>(i)] = i * dx;
    for (int j = 0; j <= nt; ++j) field.ts[static_cast<size_t>(j)] = j * dt;
    field.values.assign(field.xs.size() * field.ts.size(), 0.0);

    const int js = std::min(nt - 1, static_cast<int>(std::floor((1.0 - window) / dt + 1e-12)));

    // terminal window: frozen-drift closed form (exact u0 when h = 0)
    for (int j = js; j <= nt; ++j) {
        const double t = field.ts[static_cast<size_t>(j)];
        const double c = drift_avg_to_end(t);
        field.at(0, j) = 1.0;
        for (int i = 1; i <= nx; ++i)
            field.at(i, j) = const_drift_hit(field.xs[static_cast<size_t>(i)], c, 1.0 - t);
    }

    // Crank-Nicolson march toward t = 0, drift at the time midpoint
    std::vector<double> lower(static_cast<size_t>(nx) - 1), diag(static_cast<size_t>(nx) - 1),
        upper(static_cast<size_t>(nx) - 1), rhs(static_cast<size_t>(nx) - 1),
        scratch(static_cast<size_t>(nx) - 1);
    for (int j = js - 1; j >= 0; --j) {
        const double t_new = field.ts[static_cast<size_t>(j)];
        const double c = h_at(t_new + 0.5 * dt);
        const double alpha = dt * 0.5 * 0.5 / (dx * dx);  // (dt/2) * nu / dx^2
        const double beta = dt * 0.5 * c / (2.0 * dx);    // (dt/2) * c / (2 dx)

        const double far_new = const_drift_hit(params.l_trunc, drift_avg_to_end(t_new), 1.0 - t_new);
        field.at(0, j) = 1.0;
        field.at(nx, j) = far_new;

        for (int i = 1; i < nx; ++i) {
            const size_t k = static_cast<size_t>(i) - 1;
            lower[k] = -(alpha - beta);
            diag[k] = 1.0 + 2.0 * alpha;
            upper[k] = -(alpha + beta);
            rhs[k] = (alpha - beta) * field.at(i - 1, j + 1) +
                     (1.0 - 2.0 * alpha) * field.at(i, j + 1) +
                     (alpha + beta) * field.at(i + 1, j + 1);
        }
        rhs[0] += (alpha - beta) * 1.0;  // U(0, t_new) = 1
        rhs[static_cast<size_t>(nx) - 2] += (alpha + beta) * far_new;

        // Thomas sweep
        scratch[0] = upper[0] / diag[0];
        rhs[0] /= diag[0];
        for (int i = 1; i < nx - 1; ++i) {
            const size_t k = static_cast<size_t>(i);
            const double m = diag[k] - lower[k] * scratch[k - 1];
            scratch[k] = upper[k] / m;
            rhs[k] = (rhs[k] - lower[k] * rhs[k - 1]) / m;
        }
        for (int i = nx - 3; i >= 0; --i)
            rhs[static_cast<size_t>(i)] -= scratch[static_cast<size_t>(i)] * rhs[static_cast<size_t>(i) + 1];
        for (int i = 1; i < nx; ++i) field.at(i, j) = rhs[static_cast<size_t>(i) - 1];
    }
    return field;
}

}  // namespace gip
