#include "swdist/maxsliced.hpp"

#include <algorithm>
#include <cmath>

#include "swdist/error.hpp"
#include "swdist/ot1d.hpp"
#include "swdist/projections.hpp"
#include "swdist/rng.hpp"

namespace swdist {

namespace {

double eval_objective(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                      std::span<const double> theta) {
    return w1_1d(project(mu, theta), project(nu, theta));
}

void normalize(std::vector<double>& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0.0)
        for (double& x : v) x /= norm;
}

// Orthonormal basis of the tangent space at unit theta (Gram-Schmidt on the
// coordinate axes).
std::vector<std::vector<double>> tangent_basis(const std::vector<double>& theta) {
    const std::size_t d = theta.size();
    std::vector<std::vector<double>> basis;
    basis.reserve(d - 1);
    for (std::size_t j = 0; j < d && basis.size() < d - 1; ++j) {
        std::vector<double> v(d, 0.0);
        v[j] = 1.0;
        double dot = theta[j];
        for (std::size_t i = 0; i < d; ++i) v[i] -= dot * theta[i];
        for (const auto& b : basis) {
            double bd = 0.0;
            for (std::size_t i = 0; i < d; ++i) bd += b[i] * v[i];
            for (std::size_t i = 0; i < d; ++i) v[i] -= bd * b[i];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (double& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    return basis;
}

struct AscentResult {
    double value;
    std::vector<double> theta;
};

AscentResult ascend(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                    std::vector<double> theta, const MswOptions& opts) {
    normalize(theta);
    const std::size_t d = theta.size();
    double value = eval_objective(mu, nu, theta);
    double eta = 0.25;
    const double h = opts.fd_step;
    std::vector<double> cand(d);
    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        const auto basis = tangent_basis(theta);
        std::vector<double> grad(d, 0.0);
        for (const auto& t : basis) {
            for (std::size_t i = 0; i < d; ++i) cand[i] = theta[i] + h * t[i];
            normalize(cand);
            const double jp = eval_objective(mu, nu, cand);
            for (std::size_t i = 0; i < d; ++i) cand[i] = theta[i] - h * t[i];
            normalize(cand);
            const double jm = eval_objective(mu, nu, cand);
            const double g = (jp - jm) / (2.0 * h);
            for (std::size_t i = 0; i < d; ++i) grad[i] += g * t[i];
        }
        double gnorm = 0.0;
        for (double x : grad) gnorm += x * x;
        gnorm = std::sqrt(gnorm);
        if (gnorm < 1e-12) break;
        bool improved = false;
        double gain = 0.0;
        while (eta >= 1e-7) {
            for (std::size_t i = 0; i < d; ++i) cand[i] = theta[i] + eta * grad[i];
            normalize(cand);
            const double jc = eval_objective(mu, nu, cand);
            if (jc > value + 1e-15) {
                gain = jc - value;
                theta = cand;
                value = jc;
                improved = true;
                eta = std::min(eta * 1.5, 4.0);
                break;
            }
            eta /= 2.0;
        }
        if (!improved || gain < opts.tol) break;
    }
    return {value, std::move(theta)};
}

}  // namespace

MaxSlicedResult msw1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                     const MswOptions& opts, std::uint64_t seed) {
    if (mu.dim() != nu.dim()) throw invalid_parameter("ambient dimension mismatch");
    if (opts.restarts < 1) throw invalid_parameter("restarts must be >= 1");
    const std::size_t d = mu.dim();

    MaxSlicedResult out;
    if (d == 1) {
        out.argmax = {1.0};
        out.value = eval_objective(mu, nu, out.argmax);
        out.restarts_used = 1;
        out.trace = {out.value};
        return out;
    }

    // Restart 0: mean-gap direction when nonzero.
    std::vector<std::vector<double>> starts;
    {
        // means accumulated separately so that swapping (mu, nu) negates the
        // gap bitwise; with the canonical sign below msw1 is exactly symmetric
        std::vector<double> mean_mu(d, 0.0), mean_nu(d, 0.0), gap(d);
        for (std::size_t i = 0; i < mu.size(); ++i)
            for (std::size_t j = 0; j < d; ++j)
                mean_mu[j] += mu.weight(i) * mu.point(i)[j];
        for (std::size_t i = 0; i < nu.size(); ++i)
            for (std::size_t j = 0; j < d; ++j)
                mean_nu[j] += nu.weight(i) * nu.point(i)[j];
        for (std::size_t j = 0; j < d; ++j) gap[j] = mean_mu[j] - mean_nu[j];
        double norm = 0.0;
        for (double x : gap) norm += x * x;
        if (std::sqrt(norm) > 1e-12) {
            normalize(gap);
            // canonical sign so msw1(mu, nu) == msw1(nu, mu) bitwise
            for (double x : gap) {
                if (x == 0.0) continue;
                if (x < 0.0)
                    for (double& y : gap) y = -y;
                break;
            }
            starts.push_back(std::move(gap));
        }
    }
    const DirectionSet rand_starts =
        sample_sphere(d, opts.restarts, derive_seed(seed, 0));
    for (std::size_t i = 0; starts.size() < opts.restarts; ++i) {
        const double* row = rand_starts.dir(i);
        starts.emplace_back(row, row + d);
    }

    out.value = -1.0;
    for (std::size_t r = 0; r < starts.size(); ++r) {
        AscentResult res = ascend(mu, nu, starts[r], opts);
        out.trace.push_back(res.value);
        if (res.value > out.value) {
            out.value = res.value;
            out.argmax = std::move(res.theta);
        }
    }
    out.restarts_used = starts.size();
    // Exact re-evaluation at the reported direction.
    out.value = eval_objective(mu, nu, out.argmax);
    return out;
}

MaxSlicedResult msw1_grid(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                          std::size_t resolution) {
    if (mu.dim() != nu.dim()) throw invalid_parameter("ambient dimension mismatch");
    const DirectionSet grid = grid_sphere(mu.dim(), resolution);
    MaxSlicedResult out;
    out.value = -1.0;
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double v = eval_objective(mu, nu, grid.dir_span(i));
        if (v > out.value) {
            out.value = v;
            const double* row = grid.dir(i);
            out.argmax.assign(row, row + grid.dim);
        }
    }
    out.restarts_used = grid.count();
    out.trace = {out.value};
    return out;
}

double PiecewiseLinear::operator()(double x) const {
    const std::size_t n = xs.size();
    if (n == 1) return ys[0];
    if (x <= xs.front()) {
        const double s = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        return ys[0] + s * (x - xs[0]);
    }
    if (x >= xs.back()) {
        const double s = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
        return ys[n - 1] + s * (x - xs[n - 1]);
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

double dual_witness_check(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                          std::span<const double> theta, const PiecewiseLinear& g) {
    if (theta.size() != mu.dim() || mu.dim() != nu.dim())
        throw invalid_parameter("dimension mismatch");
    if (g.xs.empty() || g.xs.size() != g.ys.size())
        throw invalid_witness("witness needs matching breakpoint arrays");
    for (std::size_t i = 1; i < g.xs.size(); ++i) {
        if (!(g.xs[i] > g.xs[i - 1]))
            throw invalid_witness("breakpoints must be strictly increasing");
        const double slope = (g.ys[i] - g.ys[i - 1]) / (g.xs[i] - g.xs[i - 1]);
        if (std::abs(slope) > 1.0 + 1e-9)
            throw invalid_witness("witness is not 1-Lipschitz");
    }
    if (std::abs(g(0.0)) > 1e-9) throw invalid_witness("witness must vanish at 0");
    double total = 0.0;
    std::vector<double> proj(std::max(mu.size(), nu.size()));
    project_values(mu, theta, {proj.data(), mu.size()});
    for (std::size_t i = 0; i < mu.size(); ++i) total += mu.weight(i) * g(proj[i]);
    project_values(nu, theta, {proj.data(), nu.size()});
    for (std::size_t i = 0; i < nu.size(); ++i) total -= nu.weight(i) * g(proj[i]);
    return total;
}

}  // namespace swdist
