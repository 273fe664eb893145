#include "gip/second_quantization.hpp"

#include <algorithm>
#include <cmath>

#include "gip/errors.hpp"
#include "gip/hermite.hpp"
#include "gip/presets.hpp"

namespace gip {

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= static_cast<double>(i);
    return r;
}

void check_betas(const std::vector<double>& betas) {
    for (double b : betas)
        if (std::abs(b) >= 1.0) throw BetaOutOfRange("second quantization: |beta| must be < 1");
}

// sum over multiplicity vectors of total order n on m*d slots of
// prod |beta_k|^{r_slot}; slot (i, k) carries beta_k.
double beta_mass_at_order(const std::vector<double>& betas, int d, int n) {
    const int m = static_cast<int>(betas.size());
    const int slots = m * d;
    if (slots == 0) return n == 0 ? 1.0 : 0.0;
    double total = 0.0;
    auto rec = [&](auto&& self, int slot, int remaining, double prod) -> void {
        const double b = std::abs(betas[static_cast<size_t>(slot % m)]);
        if (slot == slots - 1) {
            total += prod * std::pow(b, remaining);
            return;
        }
        double pw = 1.0;
        for (int v = 0; v <= remaining; ++v) {
            self(self, slot + 1, remaining - v, prod * pw);
            pw *= b;
        }
    };
    rec(rec, 0, n, 1.0);
    return total;
}

}  // namespace

ChaosCoefficients gamma_transform(const ChaosCoefficients& coeffs,
                                  const std::vector<double>& betas) {
    check_betas(betas);
    const size_t slots = betas.size() * static_cast<size_t>(coeffs.d);
    ChaosCoefficients out = coeffs;
    for (auto& order : out.orders) {
        for (auto& [r, a] : order) {
            if (r.size() != slots)
                throw std::invalid_argument("gamma_transform: beta count does not match the basis");
            double w = 1.0;
            for (size_t s = 0; s < r.size(); ++s) w *= std::pow(betas[s % betas.size()], r[s]);
            a *= w;
        }
    }
    return out;
}

SeriesEvaluation evaluate_at_zero(const ChaosCoefficients& coeffs,
                                  const std::vector<double>& betas, int d) {
    check_betas(betas);
    const ChaosCoefficients transformed = gamma_transform(coeffs, betas);

    SeriesEvaluation eval;
    eval.order_contribution.assign(transformed.orders.size(), 0.0);
    for (int n = 0; n < static_cast<int>(transformed.orders.size()); ++n) {
        double contribution = 0.0;
        for (const auto& [r, a] : transformed.orders[static_cast<size_t>(n)]) {
            bool odd_slot = false;
            double weight = factorial(n);
            double hermite = 1.0;
            for (int v : r) {
                if (v % 2 == 1) {
                    odd_slot = true;
                    break;
                }
                weight /= factorial(v);
                hermite *= hermite_at_zero(v);
            }
            if (odd_slot) continue;  // H_odd(0) = 0
            contribution += weight * a * hermite;
        }
        eval.order_contribution[static_cast<size_t>(n)] = contribution;
        eval.value += contribution;
    }

    // tail over truncated orders: c_cal^{m d} * sqrt(E alpha^2 <= 1) * geometric beta mass
    const int m = static_cast<int>(betas.size());
    const int n_max = coeffs.n_max;
    if (m > 0) {
        double geo = 1.0;
        for (double b : betas) geo *= std::pow(1.0 / (1.0 - std::abs(b)), d);
        double partial = 0.0;
        for (int n = 0; n <= n_max; ++n) partial += beta_mass_at_order(betas, d, n);
        const double mass = std::max(0.0, geo - partial);
        eval.tail_bound = std::pow(calibrated_hermite_constant(), m * d) * mass;
    }
    return eval;
}

double example1_expectation(double c, int k) {
    if (std::abs(c) > 1.0) throw BetaOutOfRange("example1_expectation: |c| must be <= 1");
    if (k < 0) throw std::invalid_argument("example1_expectation: k must be >= 0");
    return hermite_at_zero(2 * k) * std::pow((1.0 - c) * (1.0 + c), k);
}

double gamma_1d(double c, const std::vector<double>& coefficients, double xi) {
    if (std::abs(c) > 1.0) throw BetaOutOfRange("gamma_1d: |c| must be <= 1");
    double value = 0.0;
    double cn = 1.0;
    for (int n = 0; n < static_cast<int>(coefficients.size()); ++n) {
        value += cn * coefficients[static_cast<size_t>(n)] * hermite_eval(n, xi);
        cn *= c;
    }
    return value;
}

namespace {

// d=1 coefficients on the chaos grid, embedded into m*d slots at the normal
// coordinate (block 0); the hitting functional of an axis-aligned half-space
// depends on the normal coordinate alone, so every other block is zero.
ChaosCoefficients build_coefficients(double x, const RankSpec& rank, const ChaosQuadrature& quad,
                                     int d) {
    const int m = static_cast<int>(rank.betas.size());
    const Grid chaos_grid(quad.time_cells);
    std::vector<GridFunction> basis;
    FiniteRank validation;
    for (size_t k = 0; k < rank.frequencies.size(); ++k) {
        basis.push_back(materialize_basis(rank.frequencies[k], chaos_grid));
        validation.terms.push_back({rank.betas[k], basis.back()});
    }
    validate_finite_rank(validation, chaos_grid);

    ChaosCoefficients coeffs;
    coeffs.m = m;
    coeffs.d = d;
    coeffs.n_max = quad.max_order;
    coeffs.orders.resize(static_cast<size_t>(quad.max_order) + 1);
    for (int n = 0; n <= quad.max_order; ++n) {
        const auto slice = project_to_basis(symmetrize(duhamel_kernel(n, x, quad)), basis);
        for (const auto& [r, a] : slice) {
            std::vector<int> key(static_cast<size_t>(m) * static_cast<size_t>(d), 0);
            std::copy(r.begin(), r.end(), key.begin());
            coeffs.orders[static_cast<size_t>(n)][key] = a;
        }
    }
    return coeffs;
}

}  // namespace

SeriesReport hitting_probability_series(double x, const RankSpec& rank,
                                        const SeriesParams& params) {
    check_betas(rank.betas);
    if (rank.betas.size() != rank.frequencies.size())
        throw std::invalid_argument("hitting_probability_series: betas/frequencies size mismatch");
    if (x <= 0.0) throw StartOutsideDomain("hitting_probability_series: x must be > 0");

    SeriesReport report;
    const int m = static_cast<int>(rank.betas.size());
    const bool all_zero =
        std::all_of(rank.betas.begin(), rank.betas.end(), [](double b) { return b == 0.0; });

    if (all_zero || m == 0) {
        // Gamma(0) keeps only the expectation; higher kernels never contribute
        ChaosCoefficients coeffs;
        coeffs.m = m;
        coeffs.d = params.d;
        coeffs.n_max = params.quad.max_order;
        coeffs.orders.resize(static_cast<size_t>(params.quad.max_order) + 1);
        coeffs.orders[0][std::vector<int>(static_cast<size_t>(m) * static_cast<size_t>(params.d), 0)] =
            u0(x, 0.0);
        report.coefficients = coeffs;
        report.evaluation = evaluate_at_zero(coeffs, rank.betas, params.d);
        report.second_moment = coeffs.second_moment();
    } else {
        report.coefficients = build_coefficients(x, rank, params.quad, params.d);
        report.second_moment = report.coefficients.second_moment();
        if (report.second_moment > 1.0 + 1e-9) {
            throw SchemeUnstable(
                "hitting_probability_series: projected second moment " +
                std::to_string(report.second_moment) +
                " exceeds the indicator budget of 1 (quadrature blow-up)");
        }
        if (params.convergence_diagnostic) {
            ChaosQuadrature fine = params.quad;
            fine.time_cells *= 2;
            const ChaosCoefficients refined = build_coefficients(x, rank, fine, params.d);
            double worst = 0.0;
            for (size_t n = 0; n < report.coefficients.orders.size(); ++n) {
                for (const auto& [r, a] : report.coefficients.orders[n]) {
                    const double b = refined.orders[n].at(r);
                    const double scale = std::max({std::abs(a), std::abs(b), 1e-9});
                    worst = std::max(worst, std::abs(a - b) / scale);
                }
            }
            report.quad_rel_change = worst;
        }
        report.evaluation = evaluate_at_zero(report.coefficients, rank.betas, params.d);
    }

    report.estimate.p_hat = std::clamp(report.evaluation.value, 0.0, 1.0);
    report.estimate.stderr_ = report.evaluation.tail_bound;
    report.estimate.tail_bound = report.evaluation.tail_bound;
    report.estimate.method = "series";
    report.estimate.n_paths = 0;
    report.estimate.n_cells = params.quad.time_cells;
    report.estimate.reduced_from_dimension = params.d;
    return report;
}

}  // namespace gip
