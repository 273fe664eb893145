#include "gip/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gip/errors.hpp"

namespace gip {

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= static_cast<double>(i);
    return r;
}

double heat_kernel(double tau, double u) {
    return std::exp(-u * u / (2.0 * tau)) / std::sqrt(2.0 * std::numbers::pi * tau);
}

// Space-grid workspace shared by the kernel chain.
struct SpaceGrid {
    std::vector<double> z;
    std::vector<double> w;  // trapezoid weights
    double dz = 0.0;

    explicit SpaceGrid(const ChaosQuadrature& q) {
        const int nz = q.space_cells;
        dz = q.l_trunc / nz;
        z.resize(static_cast<size_t>(nz) + 1);
        w.assign(static_cast<size_t>(nz) + 1, dz);
        for (int i = 0; i <= nz; ++i) z[static_cast<size_t>(i)] = i * dz;
        w.front() = 0.5 * dz;
        w.back() = 0.5 * dz;
    }

    size_t size() const { return z.size(); }
};

void central_gradient(const SpaceGrid& grid, const std::vector<double>& f,
                      std::vector<double>& out) {
    const size_t n = grid.size();
    out.resize(n);
    out[0] = (f[1] - f[0]) / grid.dz;
    for (size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * grid.dz);
    out[n - 1] = (f[n - 1] - f[n - 2]) / grid.dz;
}

// out = d/dz integral G(tau, z, z') f(z') dz' (absorbing kernel by images);
// tau == 0 degenerates to the plain gradient.
void propagate_gradient(const SpaceGrid& grid, double tau, const std::vector<double>& f,
                        std::vector<double>& scratch, std::vector<double>& out) {
    if (tau <= 0.0) {
        central_gradient(grid, f, out);
        return;
    }
    const size_t n = grid.size();
    scratch.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double s = 0.0;
        const double zi = grid.z[i];
        for (size_t j = 0; j < n; ++j) {
            const double g = heat_kernel(tau, grid.z[j] - zi) - heat_kernel(tau, grid.z[j] + zi);
            s += g * f[j] * grid.w[j];
        }
        scratch[i] = s;
    }
    central_gradient(grid, scratch, out);
}

double dot_weighted(const SpaceGrid& grid, const std::vector<double>& a,
                    const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) s += a[i] * b[i] * grid.w[i];
    return s;
}

}  // namespace

ChaosKernel::ChaosKernel(int order, double x, int time_cells, std::vector<double> packed)
    : order_(order), x_(x), time_cells_(time_cells), packed_(std::move(packed)) {
    if (order_ < 0) throw std::invalid_argument("ChaosKernel: order must be >= 0");
    const size_t expected = order_ == 0 ? 1 : simplex_size(time_cells_, order_);
    if (packed_.size() != expected)
        throw std::invalid_argument("ChaosKernel: packed size does not match order/grid");
}

ChaosKernel ChaosKernel::scalar(double x, double value) {
    return ChaosKernel(0, x, 1, std::vector<double>{value});
}

size_t ChaosKernel::simplex_size(int time_cells, int order) {
    return static_cast<size_t>(std::llround(binom(time_cells + order - 1, order)));
}

size_t ChaosKernel::pack_rank(const std::vector<int>& idx, int time_cells) {
    // lexicographic rank of the ascending multiset
    const int n = static_cast<int>(idx.size());
    size_t rank = 0;
    int prev = 0;
    for (int k = 0; k < n; ++k) {
        for (int v = prev; v < idx[static_cast<size_t>(k)]; ++v) {
            rank += static_cast<size_t>(
                std::llround(binom((time_cells - v) + (n - k - 1) - 1, n - k - 1)));
        }
        prev = idx[static_cast<size_t>(k)];
    }
    return rank;
}

double ChaosKernel::value_sorted(const std::vector<int>& idx) const {
    if (order_ == 0) return packed_[0];
    return packed_[pack_rank(idx, time_cells_)];
}

SymmetricChaosKernel::SymmetricChaosKernel(ChaosKernel kernel) : kernel_(std::move(kernel)) {}

double SymmetricChaosKernel::value(std::vector<int> idx) const {
    if (kernel_.order() == 0) return kernel_.scalar_value();
    std::sort(idx.begin(), idx.end());
    return kernel_.value_sorted(idx) / factorial(kernel_.order());
}

SymmetricChaosKernel symmetrize(const ChaosKernel& kernel) { return SymmetricChaosKernel(kernel); }

ChaosKernel duhamel_kernel(int order, double x, const ChaosQuadrature& quad) {
    if (order > quad.max_order)
        throw std::invalid_argument("duhamel_kernel: order exceeds the configured maximum");
    if (order < 0) throw std::invalid_argument("duhamel_kernel: order must be >= 0");
    if (x <= 0.0) throw StartOutsideDomain("duhamel_kernel: x must be > 0");

    if (order == 0) return ChaosKernel::scalar(x, u0(x, 0.0));

    const int m = quad.time_cells;
    const SpaceGrid grid(quad);
    const size_t nz = grid.size();

    // G(0, r_q, x, .) for the final pairing and d/dz u0(., r_q) chain seeds
    std::vector<std::vector<double>> start(static_cast<size_t>(m)), seed(static_cast<size_t>(m));
    for (int q = 0; q < m; ++q) {
        const double r = (q + 0.5) / m;
        start[static_cast<size_t>(q)].resize(nz);
        seed[static_cast<size_t>(q)].resize(nz);
        for (size_t i = 0; i < nz; ++i) {
            start[static_cast<size_t>(q)][i] = green(0.0, r, x, grid.z[i]);
            seed[static_cast<size_t>(q)][i] = u0_gradient(grid.z[i], r);
        }
    }

    std::vector<double> packed(ChaosKernel::simplex_size(m, order), 0.0);

    if (order == 1) {
        for (int q = 0; q < m; ++q)
            packed[static_cast<size_t>(q)] =
                dot_weighted(grid, start[static_cast<size_t>(q)], seed[static_cast<size_t>(q)]);
        return ChaosKernel(order, x, m, std::move(packed));
    }

    // depth-first over ordered tuples, rightmost time first; the field stack
    // carries psi^{(k)} for the fixed suffix
#pragma omp parallel
    {
        std::vector<std::vector<double>> field(static_cast<size_t>(order));
        std::vector<double> scratch;
        std::vector<int> tuple(static_cast<size_t>(order));

        // recursion over levels k = order-1 .. 1; level k chooses q_k <= q_{k+1}
        auto dfs = [&](auto&& self, int level, int q_above) -> void {
            for (int q = 0; q <= q_above; ++q) {
                tuple[static_cast<size_t>(level - 1)] = q;
                const double tau = (q_above - q) / static_cast<double>(m);
                const auto& upper = field[static_cast<size_t>(level)];
                auto& cur = field[static_cast<size_t>(level - 1)];
                propagate_gradient(grid, tau, upper, scratch, cur);
                if (level == 1) {
                    packed[ChaosKernel::pack_rank(tuple, m)] =
                        dot_weighted(grid, start[static_cast<size_t>(q)], cur);
                } else {
                    self(self, level - 1, q);
                }
            }
        };

#pragma omp for schedule(dynamic)
        for (int qn = 0; qn < m; ++qn) {
            tuple[static_cast<size_t>(order - 1)] = qn;
            field[static_cast<size_t>(order - 1)] = seed[static_cast<size_t>(qn)];
            dfs(dfs, order - 1, qn);
        }
    }

    return ChaosKernel(order, x, m, std::move(packed));
}

std::map<std::vector<int>, double> project_to_basis(const SymmetricChaosKernel& kernel,
                                                    const std::vector<GridFunction>& basis) {
    const int m = static_cast<int>(basis.size());
    const int n = kernel.order();
    const int cells = kernel.time_cells();
    for (const auto& e : basis) {
        if (e.grid().n_cells() != cells)
            throw GridMismatch("project_to_basis: basis functions must live on the kernel grid");
    }

    std::map<std::vector<int>, double> out;
    if (n == 0) {
        out[std::vector<int>(static_cast<size_t>(m), 0)] = kernel.simplex_kernel().scalar_value();
        return out;
    }

    const double dt = 1.0 / cells;
    // enumerate multiplicity vectors r with |r| = n
    std::vector<int> r(static_cast<size_t>(m), 0);
    auto enumerate = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == m - 1) {
            r[static_cast<size_t>(slot)] = remaining;
            // representative assignment: r_k copies of basis k
            std::vector<int> which(static_cast<size_t>(n));
            {
                int pos = 0;
                for (int k = 0; k < m; ++k)
                    for (int c = 0; c < r[static_cast<size_t>(k)]; ++c) which[static_cast<size_t>(pos++)] = k;
            }
            // cube quadrature of b_n times the product of basis values
            std::vector<int> idx(static_cast<size_t>(n), 0);
            double acc = 0.0;
            while (true) {
                double prod = kernel.value(idx);
                for (int i = 0; i < n; ++i)
                    prod *= basis[static_cast<size_t>(which[static_cast<size_t>(i)])][idx[static_cast<size_t>(i)]];
                acc += prod;
                int carry = n - 1;
                while (carry >= 0 && ++idx[static_cast<size_t>(carry)] == cells) {
                    idx[static_cast<size_t>(carry)] = 0;
                    --carry;
                }
                if (carry < 0) break;
            }
            out[r] = acc * std::pow(dt, n);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            r[static_cast<size_t>(slot)] = v;
            self(self, slot + 1, remaining - v);
        }
    };
    enumerate(enumerate, 0, n);
    return out;
}

double ChaosCoefficients::second_moment() const {
    double total = 0.0;
    for (int n = 0; n < static_cast<int>(orders.size()); ++n) {
        const double nfact = factorial(n);
        for (const auto& [r, a] : orders[static_cast<size_t>(n)]) {
            double rfact = 1.0;
            for (int v : r) rfact *= factorial(v);
            total += nfact * nfact / rfact * a * a;
        }
    }
    return total;
}

FourierWienerReport fourier_wiener_check(double x, const GridFunction& h, int max_order,
                                         double epsilon, const ChaosQuadrature& quad,
                                         const SchemeParams& pde) {
    if (max_order < 0 || max_order > 3)
        throw std::invalid_argument("fourier_wiener_check: ladder extraction supports orders 0..3");
    if (epsilon <= 0.0) throw std::invalid_argument("fourier_wiener_check: epsilon must be > 0");

    FourierWienerReport report;
    report.epsilon = epsilon;

    // pairings: cube sums of the symmetrized kernels against h tensors
    const int cells = quad.time_cells;
    const double dt = 1.0 / cells;
    const auto h_at = [&](double t) {
        const int cell = std::min(h.size() - 1, static_cast<int>(t * h.size()));
        return h[cell];
    };
    std::vector<double> h_mid(static_cast<size_t>(cells));
    for (int q = 0; q < cells; ++q) h_mid[static_cast<size_t>(q)] = h_at((q + 0.5) / cells);

    for (int n = 0; n <= max_order; ++n) {
        const SymmetricChaosKernel b = symmetrize(duhamel_kernel(n, x, quad));
        if (n == 0) {
            report.pairing.push_back(b.simplex_kernel().scalar_value());
            continue;
        }
        std::vector<int> idx(static_cast<size_t>(n), 0);
        double acc = 0.0;
        while (true) {
            double prod = b.value(idx);
            for (int i = 0; i < n; ++i) prod *= h_mid[static_cast<size_t>(idx[static_cast<size_t>(i)])];
            acc += prod;
            int carry = n - 1;
            while (carry >= 0 && ++idx[static_cast<size_t>(carry)] == cells) {
                idx[static_cast<size_t>(carry)] = 0;
                --carry;
            }
            if (carry < 0) break;
        }
        report.pairing.push_back(acc * std::pow(dt, n));
    }

    // PDE ladder: U^{eps h}(x, 0) at eps in {0, +-e, +-2e}
    const auto solve_at = [&](double eps) {
        std::vector<double> scaled(h.values());
        for (double& v : scaled) v *= eps;
        const HeatField field = solve_drifted(GridFunction(h.grid(), scaled), pde);
        return field.interpolate(x, 0.0);
    };
    const double f0 = solve_at(0.0);
    const double fp = solve_at(epsilon), fm = solve_at(-epsilon);
    const double fpp = solve_at(2.0 * epsilon), fmm = solve_at(-2.0 * epsilon);

    std::vector<double> taylor;
    taylor.push_back(f0);
    if (max_order >= 1)
        taylor.push_back((8.0 * (fp - fm) - (fpp - fmm)) / (12.0 * epsilon));
    if (max_order >= 2)
        taylor.push_back((16.0 * (fp + fm - 2.0 * f0) - (fpp + fmm - 2.0 * f0)) /
                         (24.0 * epsilon * epsilon));
    if (max_order >= 3)
        taylor.push_back(((fpp - fmm) - 2.0 * (fp - fm)) / (12.0 * epsilon * epsilon * epsilon));

    report.taylor = taylor;
    for (size_t n = 0; n < report.pairing.size(); ++n) {
        const double err = std::abs(report.pairing[n] - report.taylor[n]);
        report.abs_error.push_back(err);
        report.rel_error.push_back(err / std::max(std::abs(report.taylor[n]), 1e-300));
    }
    return report;
}

}  // namespace gip
