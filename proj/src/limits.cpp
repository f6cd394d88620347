#include "swdist/limits.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "swdist/error.hpp"
#include "swdist/ot1d.hpp"
#include "swdist/rng.hpp"

namespace swdist {

namespace {

std::vector<double> pooled_projections(const EmpiricalMeasure& ref,
                                       const DirectionSet& dirs) {
    const std::size_t n = ref.size();
    const std::size_t k = dirs.count();
    std::vector<double> pooled(n * k);
    for (std::size_t i = 0; i < k; ++i)
        project_values(ref, dirs.dir_span(i), {pooled.data() + i * n, n});
    std::sort(pooled.begin(), pooled.end());
    return pooled;
}

}  // namespace

CylinderGrid make_cylinder_grid(const EmpiricalMeasure& ref, const DirectionSet& dirs,
                                std::size_t t_count, double pad_fraction) {
    if (dirs.dim != ref.dim()) throw invalid_parameter("direction dimension mismatch");
    if (t_count < 4) throw invalid_parameter("need at least 4 t-nodes");

    const std::vector<double> pooled = pooled_projections(ref, dirs);
    const double lo = pooled.front();
    const double hi = pooled.back();

    // Interior nodes at quantile levels k/(m+1); tail nodes out to the pooled
    // range so low-variance tail cells are still integrated.
    const std::size_t n_tail = std::max<std::size_t>(2, t_count / 6);
    const std::size_t m = (t_count > 2 * n_tail) ? t_count - 2 * n_tail : 2;
    std::vector<double> nodes;
    nodes.reserve(t_count + 2 * n_tail);
    auto quantile = [&](double level) {
        const double pos = level * static_cast<double>(pooled.size() - 1);
        const std::size_t j = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(j);
        return (j + 1 < pooled.size()) ? pooled[j] * (1.0 - frac) + pooled[j + 1] * frac
                                       : pooled[j];
    };
    const double q_lo = quantile(1.0 / static_cast<double>(m + 1));
    const double q_hi = quantile(static_cast<double>(m) / static_cast<double>(m + 1));
    double t_min = lo, t_max = hi;
    if (pad_fraction > 0.0) {
        const double pad = pad_fraction * (hi - lo) / 2.0;
        t_min -= pad;
        t_max += pad;
    }
    for (std::size_t j = 0; j < n_tail; ++j)
        nodes.push_back(t_min + (q_lo - t_min) * static_cast<double>(j) /
                                    static_cast<double>(n_tail));
    for (std::size_t j = 1; j <= m; ++j)
        nodes.push_back(quantile(static_cast<double>(j) / static_cast<double>(m + 1)));
    for (std::size_t j = 1; j <= n_tail; ++j)
        nodes.push_back(q_hi + (t_max - q_hi) * static_cast<double>(j) /
                                   static_cast<double>(n_tail));
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (nodes.size() < 2) throw numerical_degeneracy("degenerate t-node set");

    CylinderGrid grid;
    grid.dirs = dirs;
    grid.t_nodes = std::move(nodes);
    const std::size_t nt = grid.t_nodes.size();
    const std::size_t k = dirs.count();
    std::vector<double> cell(nt);
    cell[0] = (grid.t_nodes[1] - grid.t_nodes[0]) / 2.0;
    cell[nt - 1] = (grid.t_nodes[nt - 1] - grid.t_nodes[nt - 2]) / 2.0;
    for (std::size_t j = 1; j + 1 < nt; ++j)
        cell[j] = (grid.t_nodes[j + 1] - grid.t_nodes[j - 1]) / 2.0;
    grid.quad_weights.resize(k * nt);
    const double sw = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < nt; ++j)
            grid.quad_weights[grid.node_index(i, j)] = sw * cell[j];
    return grid;
}

namespace {

// F(theta_i, t_j) over all grid nodes of one measure.
std::vector<double> grid_cdf(const EmpiricalMeasure& m, const CylinderGrid& grid) {
    const std::size_t k = grid.dirs.count();
    const std::size_t nt = grid.t_nodes.size();
    std::vector<double> cdf(k * nt, 0.0);
    std::vector<std::pair<double, double>> pw(m.size());
    std::vector<double> proj(m.size());
    for (std::size_t i = 0; i < k; ++i) {
        project_values(m, grid.dirs.dir_span(i), proj);
        for (std::size_t a = 0; a < m.size(); ++a) pw[a] = {proj[a], m.weight(a)};
        std::sort(pw.begin(), pw.end());
        std::size_t a = 0;
        double acc = 0.0;
        for (std::size_t j = 0; j < nt; ++j) {
            while (a < pw.size() && pw[a].first <= grid.t_nodes[j]) acc += pw[a++].second;
            cdf[grid.node_index(i, j)] = acc;
        }
    }
    return cdf;
}

}  // namespace

Eigen::MatrixXd covariance_kernel(const EmpiricalMeasure& ref, const CylinderGrid& grid) {
    const std::size_t nodes = grid.node_count();
    const std::size_t n = ref.size();
    const std::size_t k = grid.dirs.count();
    const std::size_t nt = grid.t_nodes.size();
    if (nodes == 0) throw invalid_parameter("empty grid");

    // B[a, i] = sqrt(w_i) * 1{theta_a^T x_i <= t_a}; K = B B^T - F F^T.
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nodes, n);
    std::vector<double> proj(n);
    std::vector<double> sqw(n);
    for (std::size_t i = 0; i < n; ++i) sqw[i] = std::sqrt(ref.weight(i));
    for (std::size_t di = 0; di < k; ++di) {
        project_values(ref, grid.dirs.dir_span(di), proj);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = proj[i];
            // first t-node with t >= v
            const auto it = std::lower_bound(grid.t_nodes.begin(), grid.t_nodes.end(), v);
            for (std::size_t j = static_cast<std::size_t>(it - grid.t_nodes.begin());
                 j < nt; ++j)
                B(grid.node_index(di, j), i) = sqw[i];
        }
    }
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nodes, nodes);
    K.selfadjointView<Eigen::Lower>().rankUpdate(B);
    K = K.selfadjointView<Eigen::Lower>();
    Eigen::VectorXd F(nodes);
    const std::vector<double> cdf = grid_cdf(ref, grid);
    for (std::size_t a = 0; a < nodes; ++a) F(static_cast<Eigen::Index>(a)) = cdf[a];
    K.noalias() -= F * F.transpose();
    return K;
}

namespace {

// Lower Cholesky factor with escalating diagonal jitter (1e-10 to 1e-6).
Eigen::MatrixXd factor_with_jitter(const Eigen::MatrixXd& K) {
    for (double jitter = 1e-10; jitter <= 1e-6 * 1.0001; jitter *= 10.0) {
        Eigen::MatrixXd J = K;
        J.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(J);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    throw numerical_degeneracy("covariance factorization failed at max jitter");
}

template <typename Functional>
LimitSample simulate(const Eigen::MatrixXd& K, std::size_t reps,
                     std::uint64_t seed, LimitKind kind, Functional&& functional) {
    if (reps < 1) throw invalid_parameter("reps must be >= 1");
    LimitSample out;
    out.kind = kind;
    out.draws.resize(reps);
    if (K.isZero(0.0)) {
        // deterministic reference: the limit process is identically zero
        std::fill(out.draws.begin(), out.draws.end(), 0.0);
        return out;
    }
    const Eigen::MatrixXd L = factor_with_jitter(K);
    const Eigen::Index nodes = K.rows();
    Eigen::VectorXd z(nodes), x(nodes);
    for (std::size_t r = 0; r < reps; ++r) {
        auto eng = make_engine(derive_seed(seed, r));
        std::normal_distribution<double> normal(0.0, 1.0);
        for (Eigen::Index a = 0; a < nodes; ++a) z(a) = normal(eng);
        x.noalias() = L * z;
        out.draws[r] = functional(x);
    }
    return out;
}

}  // namespace

LimitSample simulate_limit_one_sample(const EmpiricalMeasure& ref,
                                      const CylinderGrid& grid, std::size_t reps,
                                      std::uint64_t seed) {
    const Eigen::MatrixXd K = covariance_kernel(ref, grid);
    const auto& qw = grid.quad_weights;
    return simulate(K, reps, seed, LimitKind::one_sample_L1,
                    [&qw](const Eigen::VectorXd& x) {
                        double acc = 0.0;
                        for (Eigen::Index a = 0; a < x.size(); ++a)
                            acc += qw[static_cast<std::size_t>(a)] * std::abs(x(a));
                        return acc;
                    });
}

LimitSample simulate_limit_vs_nu(const EmpiricalMeasure& ref_mu,
                                 const EmpiricalMeasure& ref_nu,
                                 const CylinderGrid& grid, std::size_t reps,
                                 std::uint64_t seed) {
    const Eigen::MatrixXd K = covariance_kernel(ref_mu, grid);
    const std::vector<double> F = grid_cdf(ref_mu, grid);
    const std::vector<double> G = grid_cdf(ref_nu, grid);
    // +1 where F > G, -1 where F < G, 0 for the tie band (|.| contribution)
    std::vector<int> sign(F.size());
    for (std::size_t a = 0; a < F.size(); ++a) {
        const double diff = F[a] - G[a];
        sign[a] = (diff > 1e-9) ? 1 : (diff < -1e-9 ? -1 : 0);
    }
    const auto& qw = grid.quad_weights;
    return simulate(K, reps, seed, LimitKind::one_sample_vs_nu,
                    [&qw, &sign](const Eigen::VectorXd& x) {
                        double acc = 0.0;
                        for (Eigen::Index a = 0; a < x.size(); ++a) {
                            const std::size_t s = static_cast<std::size_t>(a);
                            acc += qw[s] * (sign[s] == 0 ? std::abs(x(a))
                                                         : sign[s] * x(a));
                        }
                        return acc;
                    });
}

LimitSample empirical_rootn_distribution(const DistributionSpec& mu,
                                         const std::optional<DistributionSpec>& nu,
                                         RootnStatistic statistic,
                                         const DirectionSet& dirs,
                                         const RootnConfig& cfg) {
    if (cfg.reps < 1) throw invalid_parameter("reps must be >= 1");
    const EmpiricalMeasure ref_mu =
        generate(mu, cfg.ref_size, derive_seed(cfg.seed, 0x52454631ULL));
    const std::size_t k = dirs.count();
    const double root_n = std::sqrt(static_cast<double>(cfg.n));

    // Presorted reference pushforwards (the reference is frozen across reps).
    std::vector<Sorted1D> ref_proj;
    std::vector<Sorted1D> nu_proj;
    ref_proj.reserve(k);
    for (std::size_t i = 0; i < k; ++i) ref_proj.push_back(project(ref_mu, dirs.dir_span(i)));

    double baseline = 0.0;  // SW1(ref_mu, ref_nu) for the vs-nu statistic
    std::optional<EmpiricalMeasure> ref_nu;
    if (statistic == RootnStatistic::sw1_vs_nu) {
        if (!nu) throw invalid_parameter("sw1_vs_nu needs a second distribution spec");
        ref_nu = generate(*nu, cfg.ref_size, derive_seed(cfg.seed, 0x52454632ULL));
        nu_proj.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
            nu_proj.push_back(project(*ref_nu, dirs.dir_span(i)));
        for (std::size_t i = 0; i < k; ++i) baseline += w1_1d(ref_proj[i], nu_proj[i]);
        baseline /= static_cast<double>(k);
    }

    LimitSample out;
    out.kind = (statistic == RootnStatistic::sw1_vs_nu) ? LimitKind::one_sample_vs_nu
                                                        : LimitKind::one_sample_L1;
    out.draws.resize(cfg.reps);
    std::vector<double> proj;
    for (std::size_t r = 0; r < cfg.reps; ++r) {
        const EmpiricalMeasure sample = generate(mu, cfg.n, derive_seed(cfg.seed, r));
        if (statistic == RootnStatistic::msw1_one_sample) {
            out.draws[r] =
                root_n * msw1(sample, ref_mu, cfg.msw, derive_seed(cfg.seed, r)).value;
            continue;
        }
        proj.resize(sample.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            project_values(sample, dirs.dir_span(i), proj);
            std::sort(proj.begin(), proj.end());
            const Sorted1D s = Sorted1D::from_sorted_equal_weights(proj);
            acc += w1_1d(s, statistic == RootnStatistic::sw1_vs_nu ? nu_proj[i]
                                                                   : ref_proj[i]);
        }
        acc /= static_cast<double>(k);
        out.draws[r] = (statistic == RootnStatistic::sw1_vs_nu)
                           ? root_n * (acc - baseline)
                           : root_n * acc;
    }
    return out;
}

double ks_distance(const LimitSample& a, const LimitSample& b) {
    if (a.draws.empty() || b.draws.empty())
        throw invalid_parameter("empty draw vector");
    std::vector<double> va = a.draws, vb = b.draws;
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    const double na = static_cast<double>(va.size());
    const double nb = static_cast<double>(vb.size());
    std::size_t i = 0, j = 0;
    double sup = 0.0;
    while (i < va.size() && j < vb.size()) {
        const double x = std::min(va[i], vb[j]);
        while (i < va.size() && va[i] <= x) ++i;
        while (j < vb.size() && vb[j] <= x) ++j;
        sup = std::max(sup, std::abs(static_cast<double>(i) / na -
                                     static_cast<double>(j) / nb));
    }
    return sup;
}

}  // namespace swdist
