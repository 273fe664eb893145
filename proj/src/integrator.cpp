#include "gip/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gip/errors.hpp"
#include "gip/rng.hpp"

namespace gip {

namespace {

// Stream-id offset separating condition-check draws from path draws.
constexpr std::uint64_t kTrialStreamBase = 0x4000000000000000ULL;

// P(row, i) = sum_{j<=i} A(row, j): column prefix sums of the dense operator,
// so that eta(t_{i+1}) = sum_row P(row, i) g_row.
Eigen::MatrixXd indicator_image_prefix(const DenseOperator& op) {
    Eigen::MatrixXd p = op.coeffs();
    for (int i = 1; i < p.cols(); ++i) p.col(i) += p.col(i - 1);
    return p;
}

struct RankStructure {
    std::vector<double> coef;                   // c_k
    std::vector<std::vector<double>> e_values;  // step values of e_k
    std::vector<std::vector<double>> e_prefix;  // E_k(t_i) = <e_k, 1_{[0,t_i]}>, i = 0..n
    bool with_identity = false;
};

RankStructure rank_structure(const std::vector<RankOneTerm>& terms, const Grid& grid,
                             bool with_identity) {
    RankStructure st;
    st.with_identity = with_identity;
    for (const auto& term : terms) {
        st.coef.push_back(term.beta);
        st.e_values.push_back(term.e.values());
        std::vector<double> prefix(static_cast<size_t>(grid.n_cells()) + 1, 0.0);
        for (int i = 0; i < grid.n_cells(); ++i)
            prefix[static_cast<size_t>(i) + 1] = prefix[static_cast<size_t>(i)] + term.e[i] * grid.dx();
        st.e_prefix.push_back(std::move(prefix));
    }
    return st;
}

void fill_path_structured(const RankStructure& st, const Grid& grid, int dimension,
                          std::uint64_t seed, int path, double* out) {
    const int n = grid.n_cells();
    const double sd = std::sqrt(grid.dx());
    const size_t m = st.coef.size();
    CounterRng rng(seed, static_cast<std::uint64_t>(path));
    std::vector<double> g(static_cast<size_t>(n));
    for (int c = 0; c < dimension; ++c) {
        for (int j = 0; j < n; ++j) g[static_cast<size_t>(j)] = sd * rng.next_normal();
        std::vector<double> xi(m, 0.0);
        for (size_t k = 0; k < m; ++k) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += st.e_values[k][static_cast<size_t>(j)] * g[static_cast<size_t>(j)];
            xi[k] = s;
        }
        double w = 0.0;
        out[0 * dimension + c] = 0.0;
        for (int i = 1; i <= n; ++i) {
            w += g[static_cast<size_t>(i) - 1];
            double v = st.with_identity ? w : 0.0;
            for (size_t k = 0; k < m; ++k) v += st.coef[k] * st.e_prefix[k][static_cast<size_t>(i)] * xi[k];
            out[static_cast<size_t>(i) * static_cast<size_t>(dimension) + static_cast<size_t>(c)] = v;
        }
    }
}

void fill_path_dense(const Eigen::MatrixXd& prefix, const Grid& grid, int dimension,
                     std::uint64_t seed, int path, double* out) {
    const int n = grid.n_cells();
    const double sd = std::sqrt(grid.dx());
    CounterRng rng(seed, static_cast<std::uint64_t>(path));
    Eigen::VectorXd g(n);
    for (int c = 0; c < dimension; ++c) {
        for (int j = 0; j < n; ++j) g(j) = sd * rng.next_normal();
        Eigen::VectorXd eta = prefix.transpose() * g;
        out[0 * dimension + c] = 0.0;
        for (int i = 1; i <= n; ++i)
            out[static_cast<size_t>(i) * static_cast<size_t>(dimension) + static_cast<size_t>(c)] =
                eta(i - 1);
    }
}

}  // namespace

IntegratorModel::IntegratorModel(Grid grid, OperatorRep rep, int dimension)
    : grid_(grid), rep_(std::move(rep)), dense_(to_dense(rep_, grid)), dimension_(dimension) {
    if (dimension < 1) throw std::invalid_argument("IntegratorModel: dimension must be >= 1");
}

double covariance(const IntegratorModel& model, double s, double t) {
    const GridFunction as = model.dense().apply(indicator(model.grid(), s));
    const GridFunction at = model.dense().apply(indicator(model.grid(), t));
    return inner_product(as, at);
}

PathEnsemble sample_paths(const IntegratorModel& model, int n_paths, std::uint64_t seed) {
    if (n_paths < 1) throw std::invalid_argument("sample_paths: n_paths must be >= 1");
    const Grid& grid = model.grid();
    const int n = grid.n_cells();
    const int d = model.dimension();
    PathEnsemble ens;
    ens.grid = grid;
    ens.n_paths = n_paths;
    ens.dimension = d;
    ens.seed = seed;
    ens.values.assign(static_cast<size_t>(n_paths) * static_cast<size_t>(n + 1) *
                          static_cast<size_t>(d),
                      0.0);
    const size_t stride = static_cast<size_t>(n + 1) * static_cast<size_t>(d);

    if (std::holds_alternative<IdentityOp>(model.rep())) {
        RankStructure st;
        st.with_identity = true;
#pragma omp parallel for schedule(static)
        for (int p = 0; p < n_paths; ++p)
            fill_path_structured(st, grid, d, seed, p, ens.values.data() + stride * static_cast<size_t>(p));
    } else if (const auto* ipr = std::get_if<IdentityPlusRank>(&model.rep())) {
        const RankStructure st = rank_structure(ipr->terms, grid, true);
#pragma omp parallel for schedule(static)
        for (int p = 0; p < n_paths; ++p)
            fill_path_structured(st, grid, d, seed, p, ens.values.data() + stride * static_cast<size_t>(p));
    } else if (const auto* fr = std::get_if<FiniteRank>(&model.rep())) {
        const RankStructure st = rank_structure(fr->terms, grid, false);
#pragma omp parallel for schedule(static)
        for (int p = 0; p < n_paths; ++p)
            fill_path_structured(st, grid, d, seed, p, ens.values.data() + stride * static_cast<size_t>(p));
    } else {
        const Eigen::MatrixXd prefix = indicator_image_prefix(model.dense());
#pragma omp parallel for schedule(static)
        for (int p = 0; p < n_paths; ++p)
            fill_path_dense(prefix, grid, d, seed, p, ens.values.data() + stride * static_cast<size_t>(p));
    }
    return ens;
}

IntegratorConditionReport check_integrator_condition(const IntegratorModel& model, int n_trials,
                                                     std::uint64_t seed) {
    if (n_trials < 1) throw std::invalid_argument("check_integrator_condition: n_trials >= 1");
    const Grid& grid = model.grid();
    const int n = grid.n_cells();
    const double norm = operator_norm(model.dense());

    double max_ratio = 0.0;
#pragma omp parallel for schedule(static) reduction(max : max_ratio)
    for (int trial = 0; trial < n_trials; ++trial) {
        CounterRng rng(seed, kTrialStreamBase + static_cast<std::uint64_t>(trial));
        const int n_intervals = 1 + static_cast<int>(rng.next_u64() % 8);
        std::set<int> cuts;
        while (static_cast<int>(cuts.size()) < n_intervals - 1)
            cuts.insert(1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - 1)));
        std::vector<int> bounds;
        bounds.push_back(0);
        bounds.insert(bounds.end(), cuts.begin(), cuts.end());
        bounds.push_back(n);

        std::vector<double> u(static_cast<size_t>(n), 0.0);
        double denom = 0.0;
        for (size_t k = 0; k + 1 < bounds.size(); ++k) {
            const double a = 2.0 * rng.next_uniform() - 1.0;
            for (int i = bounds[k]; i < bounds[k + 1]; ++i) u[static_cast<size_t>(i)] = a;
            denom += a * a * grid.dx() * static_cast<double>(bounds[k + 1] - bounds[k]);
        }
        if (denom == 0.0) continue;
        const GridFunction uf(grid, u);
        const GridFunction au = model.dense().apply(uf);
        const double ratio = inner_product(au, au) / denom;
        max_ratio = std::max(max_ratio, ratio);
    }

    IntegratorConditionReport report;
    report.max_ratio = max_ratio;
    report.bound_constant = norm * norm;
    report.within_bound = max_ratio <= norm * norm + 1e-8;
    return report;
}

DecompositionReport decomposition_check(const DenseOperator& a) {
    const DenseOperator q = defect_sqrt(a);
    const Eigen::MatrixXd combined =
        a.coeffs().transpose() * a.coeffs() + q.coeffs().transpose() * q.coeffs();
    const int n = a.grid().n_cells();
    const double dx = a.grid().dx();

    // <A1_s, A1_t> + <Q1_s, Q1_t> = dx * (2-D prefix sum of combined) for
    // grid-aligned s = t_i, t = t_j.
    Eigen::MatrixXd prefix = combined;
    for (int r = 0; r < n; ++r)
        for (int c = 1; c < n; ++c) prefix(r, c) += prefix(r, c - 1);
    for (int c = 0; c < n; ++c)
        for (int r = 1; r < n; ++r) prefix(r, c) += prefix(r - 1, c);

    double dev = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const double cov = dx * prefix(i - 1, j - 1);
            const double expected = std::min(a.grid().endpoint(i), a.grid().endpoint(j));
            dev = std::max(dev, std::abs(cov - expected));
        }
    }
    return DecompositionReport{dev};
}

namespace serial_ref {

PathEnsemble sample_paths(const IntegratorModel& model, int n_paths, std::uint64_t seed) {
    if (n_paths < 1) throw std::invalid_argument("sample_paths: n_paths must be >= 1");
    const Grid& grid = model.grid();
    const int n = grid.n_cells();
    const int d = model.dimension();
    PathEnsemble ens;
    ens.grid = grid;
    ens.n_paths = n_paths;
    ens.dimension = d;
    ens.seed = seed;
    ens.values.assign(static_cast<size_t>(n_paths) * static_cast<size_t>(n + 1) *
                          static_cast<size_t>(d),
                      0.0);
    const size_t stride = static_cast<size_t>(n + 1) * static_cast<size_t>(d);
    const Eigen::MatrixXd prefix = indicator_image_prefix(model.dense());
    for (int p = 0; p < n_paths; ++p)
        fill_path_dense(prefix, grid, d, seed, p, ens.values.data() + stride * static_cast<size_t>(p));
    return ens;
}

}  // namespace serial_ref

}  // namespace gip
