#include "gip/hermite.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>

namespace gip {

double hermite_eval(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_eval: order must be >= 0");
    if (n == 0) return 1.0;
    double hm = 1.0;  // H_{k-1}
    double h = x;     // H_k
    for (int k = 1; k < n; ++k) {
        const double hp = x * h - static_cast<double>(k) * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double double_factorial(int n) {
    if (n < -1) throw std::invalid_argument("double_factorial: n must be >= -1");
    if (n <= 0) return 1.0;  // (-1)!! = 0!! = 1
    if (n <= 33) {
        std::int64_t p = 1;
        for (int k = n; k > 0; k -= 2) p *= k;
        return static_cast<double>(p);
    }
    double p = 1.0;
    for (int k = n; k > 0; k -= 2) p *= static_cast<double>(k);
    return p;
}

double hermite_at_zero(int n) {
    if (n < 0) throw std::invalid_argument("hermite_at_zero: order must be >= 0");
    if (n % 2 == 1) return 0.0;
    const int k = n / 2;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * double_factorial(n - 1);
}

double hermite_sup_bound(int n) {
    if (n < 1) throw std::invalid_argument("hermite_sup_bound: order must be >= 1");
    // exp-log form keeps n! out of overflow territory
    const double log_bound = 0.5 * std::lgamma(static_cast<double>(n) + 1.0) -
                             0.25 * std::log(static_cast<double>(n));
    return std::exp(log_bound);
}

double calibrated_hermite_constant() {
    static double cached = 0.0;
    static std::once_flag once;
    std::call_once(once, [] {
        constexpr int kMaxOrder = 40;
        constexpr int kSamples = 4001;
        double c = 0.0;
        for (int n = 1; n <= kMaxOrder; ++n) {
            double m = 0.0;
            for (int i = 0; i < kSamples; ++i) {
                const double x = -1.0 + 2.0 * static_cast<double>(i) / (kSamples - 1);
                m = std::max(m, std::abs(hermite_eval(n, x)));
            }
            c = std::max(c, m / hermite_sup_bound(n));
        }
        cached = c;
    });
    return cached;
}

GaussHermiteRule gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
    // Jacobi matrix of the probabilists' recurrence: off-diagonal sqrt(k).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = std::sqrt(static_cast<double>(k));
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    GaussHermiteRule rule;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));
    for (int i = 0; i < order; ++i) {
        rule.nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[static_cast<size_t>(i)] = v0 * v0;
    }
    return rule;
}

}  // namespace gip
