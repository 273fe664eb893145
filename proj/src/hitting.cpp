#include "gip/hitting.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "gip/errors.hpp"
#include "gip/rng.hpp"

namespace gip {

namespace {

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

GaussLegendreRule gauss_legendre(int order) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = static_cast<double>(k) /
                         std::sqrt(4.0 * static_cast<double>(k) * static_cast<double>(k) - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));
    for (int i = 0; i < order; ++i) {
        rule.nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[static_cast<size_t>(i)] = 2.0 * v0 * v0;
    }
    return rule;
}

// Gaussian tail mass over [lo, lo + 13] by composite Gauss-Legendre with
// n_nodes total nodes (the rest of the tail is below 1e-37).
double gaussian_tail_quadrature(double lo, int n_nodes) {
    const int per_panel = 10;
    const int n_panels = std::max(2, n_nodes / per_panel);
    static const GaussLegendreRule rule = gauss_legendre(per_panel);
    const double span = 13.0;
    const double w = span / static_cast<double>(n_panels);
    double total = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double a = lo + w * static_cast<double>(p);
        double s = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * norm_pdf(a + 0.5 * w * (rule.nodes[i] + 1.0));
        total += 0.5 * w * s;
    }
    return total;
}

bool bridge_supported(const OperatorRep& rep) {
    return std::holds_alternative<IdentityOp>(rep) ||
           std::holds_alternative<IdentityPlusRank>(rep) ||
           std::holds_alternative<IntegralKernel>(rep);
}

// Grid hit plus optional per-interval crossing draw; dist holds the n+1
// distances to the boundary along one path.
bool path_hits(const std::vector<double>& dist, bool bridge, CounterRng& rng, double dx) {
    for (double d : dist)
        if (d <= 0.0) return true;
    if (!bridge) return false;
    for (size_t i = 0; i + 1 < dist.size(); ++i) {
        const double p_cross = std::exp(-2.0 * dist[i] * dist[i + 1] / dx);
        if (rng.next_uniform() <= p_cross) return true;
    }
    return false;
}

struct StructuredSampler {
    std::vector<double> coef;
    std::vector<std::vector<double>> e_values;
    std::vector<std::vector<double>> e_prefix;
    bool with_identity = true;

    StructuredSampler(const IntegratorModel& model) {
        const Grid& grid = model.grid();
        const std::vector<RankOneTerm>* terms = nullptr;
        if (const auto* ipr = std::get_if<IdentityPlusRank>(&model.rep())) {
            terms = &ipr->terms;
        } else if (const auto* fr = std::get_if<FiniteRank>(&model.rep())) {
            terms = &fr->terms;
            with_identity = false;
        }
        if (terms != nullptr) {
            for (const auto& term : *terms) {
                coef.push_back(term.beta);
                e_values.push_back(term.e.values());
                std::vector<double> prefix(static_cast<size_t>(grid.n_cells()) + 1, 0.0);
                for (int i = 0; i < grid.n_cells(); ++i)
                    prefix[static_cast<size_t>(i) + 1] =
                        prefix[static_cast<size_t>(i)] + term.e[i] * grid.dx();
                e_prefix.push_back(std::move(prefix));
            }
        }
    }

    // Fills dist[i] = x0 + eta(t_i) for one path (normal coordinate only).
    void distances(const Grid& grid, double x0, CounterRng& rng, std::vector<double>& dist) const {
        const int n = grid.n_cells();
        const double sd = std::sqrt(grid.dx());
        const size_t m = coef.size();
        thread_local std::vector<double> g;
        g.resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) g[static_cast<size_t>(j)] = sd * rng.next_normal();
        thread_local std::vector<double> xi;
        xi.assign(m, 0.0);
        for (size_t k = 0; k < m; ++k) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += e_values[k][static_cast<size_t>(j)] * g[static_cast<size_t>(j)];
            xi[k] = s;
        }
        double w = 0.0;
        dist[0] = x0;
        for (int i = 1; i <= n; ++i) {
            w += g[static_cast<size_t>(i) - 1];
            double v = with_identity ? w : 0.0;
            for (size_t k = 0; k < m; ++k) v += coef[k] * e_prefix[k][static_cast<size_t>(i)] * xi[k];
            dist[static_cast<size_t>(i)] = x0 + v;
        }
    }
};

}  // namespace

HitEstimate mc_hit_probability(const IntegratorModel& model, const DomainSpec& domain, double x,
                               long long n_paths, std::uint64_t seed, const McOptions& options) {
    if (x < domain.b) throw StartOutsideDomain("mc_hit_probability: x < b");
    if (n_paths < 100) throw std::invalid_argument("mc_hit_probability: n_paths must be >= 100");

    bool biased = false;
    if (options.bridge_correction && !bridge_supported(model.rep())) {
        if (!options.allow_biased_bridge) {
            throw std::invalid_argument(
                "mc_hit_probability: bridge correction on this operator needs "
                "allow_biased_bridge (interval crossing law is not the Brownian bridge's)");
        }
        biased = true;
    }

    const Grid& grid = model.grid();
    const int n = grid.n_cells();
    const double x0 = x - domain.b;
    const bool structured = !std::holds_alternative<DenseSpec>(model.rep());

    long long hits = 0;
    if (structured) {
        const StructuredSampler sampler(model);
#pragma omp parallel
        {
            std::vector<double> dist(static_cast<size_t>(n) + 1);
#pragma omp for schedule(static) reduction(+ : hits)
            for (long long p = 0; p < n_paths; ++p) {
                CounterRng rng(seed, static_cast<std::uint64_t>(p));
                sampler.distances(grid, x0, rng, dist);
                if (path_hits(dist, options.bridge_correction, rng, grid.dx())) ++hits;
            }
        }
    } else {
        Eigen::MatrixXd prefix = model.dense().coeffs();
        for (int i = 1; i < prefix.cols(); ++i) prefix.col(i) += prefix.col(i - 1);
        const Eigen::MatrixXd prefix_t = prefix.transpose();
        const double sd = std::sqrt(grid.dx());
#pragma omp parallel
        {
            std::vector<double> dist(static_cast<size_t>(n) + 1);
            Eigen::VectorXd g(n);
#pragma omp for schedule(static) reduction(+ : hits)
            for (long long p = 0; p < n_paths; ++p) {
                CounterRng rng(seed, static_cast<std::uint64_t>(p));
                for (int j = 0; j < n; ++j) g(j) = sd * rng.next_normal();
                Eigen::VectorXd eta = prefix_t * g;
                dist[0] = x0;
                for (int i = 1; i <= n; ++i) dist[static_cast<size_t>(i)] = x0 + eta(i - 1);
                if (path_hits(dist, options.bridge_correction, rng, grid.dx())) ++hits;
            }
        }
    }

    HitEstimate est;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(n_paths);
    est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_paths));
    est.n_paths = n_paths;
    est.method = options.bridge_correction ? "mc_bridge" : "mc_raw";
    est.n_cells = n;
    est.seed = seed;
    est.biased_bridge = biased;
    est.reduced_from_dimension = model.dimension();
    return est;
}

HitEstimate partial_bridge_oracle(double x_minus_b, double beta, int quad_order) {
    if (std::abs(beta) >= 1.0)
        throw BetaOutOfRange("partial_bridge_oracle: |beta| must be < 1");
    if (x_minus_b < 0.0) throw StartOutsideDomain("partial_bridge_oracle: x must be >= b");
    if (quad_order < 20)
        throw std::invalid_argument("partial_bridge_oracle: quad_order must be >= 20");

    const double x = x_minus_b;
    const double gamma = std::sqrt(1.0 - beta * beta);
    // head: P(x + gamma g <= 0); tail: E[exp(-2x(x+gamma g)); x + gamma g > 0],
    // which after completing the square is exp(-2 x^2 beta^2) * P(g > u0).
    const double a = -x / gamma;
    const double u0 = a + 2.0 * x * gamma;
    const double tilt = std::exp(-2.0 * x * x * beta * beta);

    const double head = norm_cdf(a);
    const double tail_full = gaussian_tail_quadrature(u0, quad_order);
    const double tail_half = gaussian_tail_quadrature(u0, quad_order / 2);
    const double tail_closed = 1.0 - norm_cdf(u0);

    HitEstimate est;
    est.p_hat = head + tilt * tail_full;
    est.stderr_ = std::max(tilt * std::abs(tail_full - tail_half),
                           tilt * std::abs(tail_full - tail_closed));
    est.n_paths = 0;
    est.method = "oracle";
    return est;
}

namespace serial_ref {

HitEstimate mc_hit_probability(const IntegratorModel& model, const DomainSpec& domain, double x,
                               long long n_paths, std::uint64_t seed, const McOptions& options) {
    if (x < domain.b) throw StartOutsideDomain("mc_hit_probability: x < b");
    if (n_paths < 100) throw std::invalid_argument("mc_hit_probability: n_paths must be >= 100");

    const Grid& grid = model.grid();
    const int n = grid.n_cells();
    const double x0 = x - domain.b;
    Eigen::MatrixXd prefix = model.dense().coeffs();
    for (int i = 1; i < prefix.cols(); ++i) prefix.col(i) += prefix.col(i - 1);
    const Eigen::MatrixXd prefix_t = prefix.transpose();
    const double sd = std::sqrt(grid.dx());

    long long hits = 0;
    std::vector<double> dist(static_cast<size_t>(n) + 1);
    Eigen::VectorXd g(n);
    for (long long p = 0; p < n_paths; ++p) {
        CounterRng rng(seed, static_cast<std::uint64_t>(p));
        for (int j = 0; j < n; ++j) g(j) = sd * rng.next_normal();
        Eigen::VectorXd eta = prefix_t * g;
        dist[0] = x0;
        for (int i = 1; i <= n; ++i) dist[static_cast<size_t>(i)] = x0 + eta(i - 1);
        if (path_hits(dist, options.bridge_correction, rng, grid.dx())) ++hits;
    }

    HitEstimate est;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(n_paths);
    est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_paths));
    est.n_paths = n_paths;
    est.method = options.bridge_correction ? "mc_bridge" : "mc_raw";
    est.n_cells = n;
    est.seed = seed;
    est.reduced_from_dimension = model.dimension();
    return est;
}

}  // namespace serial_ref

}  // namespace gip
