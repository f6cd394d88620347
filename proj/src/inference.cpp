#include "swdist/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "swdist/error.hpp"
#include "swdist/ot1d.hpp"
#include "swdist/projections.hpp"
#include "swdist/rng.hpp"
#include "swdist/sliced.hpp"

namespace swdist {

namespace {

double statistic_value(const EmpiricalMeasure& A, const EmpiricalMeasure& B,
                       StatKind kind, const EstimatorConfig& cfg,
                       const DirectionSet& dirs) {
    if (kind == StatKind::sw1) return sw_p(A, B, 1.0, dirs).value;
    return msw1(A, B, cfg.msw, cfg.dir_seed).value;
}

EmpiricalMeasure from_indices(const std::vector<double>& pooled, std::size_t d,
                              const std::vector<std::size_t>& idx,
                              std::size_t begin, std::size_t end) {
    std::vector<double> pts((end - begin) * d);
    for (std::size_t i = begin; i < end; ++i)
        std::copy_n(pooled.data() + idx[i] * d, d, pts.data() + (i - begin) * d);
    return EmpiricalMeasure::uniform(std::move(pts), d);
}

}  // namespace

double empirical_quantile(std::vector<double> draws, double level) {
    if (draws.empty()) throw invalid_parameter("empty draws");
    std::sort(draws.begin(), draws.end());
    const double B = static_cast<double>(draws.size());
    double pos = level * B - 0.5;
    if (pos <= 0.0) return draws.front();
    if (pos >= B - 1.0) return draws.back();
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return draws[i] * (1.0 - frac) + draws[i + 1] * frac;
}

TestReport two_sample_test(const EmpiricalMeasure& X, const EmpiricalMeasure& Y,
                           StatKind statistic_kind, double alpha,
                           std::size_t boot_reps, const EstimatorConfig& config,
                           std::uint64_t seed) {
    if (X.dim() != Y.dim()) throw invalid_parameter("ambient dimension mismatch");
    if (X.size() < 2 || Y.size() < 2) throw invalid_parameter("need m, n >= 2");
    if (boot_reps < 100) throw invalid_parameter("boot_reps must be >= 100");
    if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_parameter("alpha must be in (0,1)");
    if (!X.has_uniform_weights() || !Y.has_uniform_weights())
        throw invalid_parameter("bootstrap test requires equal-weight samples");

    const std::size_t m = X.size();
    const std::size_t n = Y.size();
    const std::size_t N = m + n;
    const std::size_t d = X.dim();
    const double scale = std::sqrt(static_cast<double>(m) * static_cast<double>(n) /
                                   static_cast<double>(N));

    // Shared estimator randomness across the statistic and all replicates.
    const DirectionSet dirs = (statistic_kind == StatKind::sw1)
                                  ? sample_sphere(d, config.sw_dirs, config.dir_seed)
                                  : DirectionSet{};

    TestReport rep;
    rep.statistic_kind = statistic_kind;
    rep.m = m;
    rep.n = n;
    rep.alpha = alpha;
    rep.seed = seed;
    rep.statistic_value = scale * statistic_value(X, Y, statistic_kind, config, dirs);

    // Pooled multiset of all N points.
    std::vector<double> pooled(N * d);
    std::copy(X.points().begin(), X.points().end(), pooled.begin());
    std::copy(Y.points().begin(), Y.points().end(), pooled.begin() + m * d);

    rep.bootstrap_draws.resize(boot_reps);
    std::vector<std::size_t> idx(N);
    for (std::size_t b = 0; b < boot_reps; ++b) {
        auto eng = make_engine(derive_seed(seed, b));
        std::uniform_int_distribution<std::size_t> pick(0, N - 1);
        for (std::size_t i = 0; i < N; ++i) idx[i] = pick(eng);
        const EmpiricalMeasure Xb = from_indices(pooled, d, idx, 0, m);
        const EmpiricalMeasure Yb = from_indices(pooled, d, idx, m, N);
        rep.bootstrap_draws[b] = scale * statistic_value(Xb, Yb, statistic_kind, config, dirs);
    }
    rep.critical_value = empirical_quantile(rep.bootstrap_draws, 1.0 - alpha);
    rep.reject = rep.statistic_value > rep.critical_value;
    return rep;
}

double concentration_bound(ConcentrationKind kind, std::size_t n, double t,
                           double sigma2, std::size_t d) {
    if (n < 1 || d < 1) throw invalid_parameter("need n >= 1 and d >= 1");
    if (!(t >= 0.0)) throw invalid_parameter("t must be >= 0");
    if (!(sigma2 > 0.0)) throw invalid_parameter("sigma2 must be > 0");
    const double nn = static_cast<double>(n);
    if (kind == ConcentrationKind::msw1_subgaussian)
        return 2.0 * std::exp(-nn * t * t / (32.0 * static_cast<double>(d) * sigma2));
    return 2.0 * std::exp(-nn * t * t / (4.0 * sigma2));
}

RateTable rate_experiment(const DistributionSpec& spec, StatKind distance,
                          const std::vector<std::size_t>& n_grid, std::size_t reps,
                          const RateConfig& config, std::uint64_t seed) {
    if (n_grid.empty() || !std::is_sorted(n_grid.begin(), n_grid.end()))
        throw invalid_parameter("n_grid must be ascending and nonempty");
    if (reps < 10) throw invalid_parameter("reps must be >= 10");

    const EmpiricalMeasure ref =
        generate(spec, config.ref_size, derive_seed(seed, 0x52454600ULL));
    const std::size_t d = ref.dim();

    // sw1: frozen directions, presorted reference pushforwards.
    DirectionSet dirs;
    std::vector<Sorted1D> ref_proj;
    if (distance == StatKind::sw1) {
        dirs = sample_sphere(d, config.est.sw_dirs, config.est.dir_seed);
        ref_proj.reserve(dirs.count());
        for (std::size_t i = 0; i < dirs.count(); ++i)
            ref_proj.push_back(project(ref, dirs.dir_span(i)));
    }

    RateTable table;
    table.n_grid = n_grid;
    table.reps = reps;
    table.mean_distance.resize(n_grid.size(), 0.0);
    std::vector<double> proj;
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
        double acc = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            const std::uint64_t rep_seed = derive_seed(seed, ni * reps + r + 1);
            const EmpiricalMeasure sample = generate(spec, n_grid[ni], rep_seed);
            if (distance == StatKind::sw1) {
                proj.resize(sample.size());
                double mean = 0.0;
                for (std::size_t i = 0; i < dirs.count(); ++i) {
                    project_values(sample, dirs.dir_span(i), proj);
                    std::sort(proj.begin(), proj.end());
                    mean += w1_1d(Sorted1D::from_sorted_equal_weights(proj), ref_proj[i]);
                }
                acc += mean / static_cast<double>(dirs.count());
            } else {
                acc += msw1(sample, ref, config.est.msw, rep_seed).value;
            }
        }
        table.mean_distance[ni] = acc / static_cast<double>(reps);
    }

    // log-log least squares
    const std::size_t k = n_grid.size();
    bool ok = k >= 2;
    for (double v : table.mean_distance)
        if (!(v > 0.0)) ok = false;
    if (!ok) {
        table.degenerate = true;
        table.fitted_slope = std::numeric_limits<double>::quiet_NaN();
        table.slope_stderr = std::numeric_limits<double>::quiet_NaN();
        return table;
    }
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sx += std::log(static_cast<double>(n_grid[i]));
        sy += std::log(table.mean_distance[i]);
    }
    const double mx = sx / static_cast<double>(k);
    const double my = sy / static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double dx = std::log(static_cast<double>(n_grid[i])) - mx;
        const double dy = std::log(table.mean_distance[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    table.fitted_slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double dx = std::log(static_cast<double>(n_grid[i])) - mx;
        const double dy = std::log(table.mean_distance[i]) - my;
        const double resid = dy - table.fitted_slope * dx;
        rss += resid * resid;
    }
    table.slope_stderr =
        (k > 2) ? std::sqrt(rss / (static_cast<double>(k - 2) * sxx)) : 0.0;
    return table;
}

std::string test_report_json(const TestReport& r) {
    nlohmann::ordered_json j;
    j["statistic_kind"] = (r.statistic_kind == StatKind::sw1) ? "sw1" : "msw1";
    j["m"] = r.m;
    j["n"] = r.n;
    j["statistic_value"] = r.statistic_value;
    j["bootstrap_draws"] = r.bootstrap_draws;
    j["critical_value"] = r.critical_value;
    j["alpha"] = r.alpha;
    j["decision"] = r.reject ? "reject" : "retain";
    j["seed"] = r.seed;
    return j.dump(2);
}

std::string test_report_csv(const TestReport& r) {
    char buf[32];
    std::string out = "field,value\n";
    out += std::string("statistic_kind,") +
           ((r.statistic_kind == StatKind::sw1) ? "sw1" : "msw1") + '\n';
    out += "m," + std::to_string(r.m) + '\n';
    out += "n," + std::to_string(r.n) + '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", r.statistic_value);
    out += std::string("statistic_value,") + buf + '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", r.critical_value);
    out += std::string("critical_value,") + buf + '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", r.alpha);
    out += std::string("alpha,") + buf + '\n';
    out += std::string("decision,") + (r.reject ? "reject" : "retain") + '\n';
    out += "seed," + std::to_string(r.seed) + '\n';
    for (double d : r.bootstrap_draws) {
        std::snprintf(buf, sizeof(buf), "%.17g", d);
        out += std::string("bootstrap_draw,") + buf + '\n';
    }
    return out;
}

std::string rate_table_json(const RateTable& t) {
    nlohmann::ordered_json j;
    j["n_grid"] = t.n_grid;
    j["mean_distance"] = t.mean_distance;
    j["reps"] = t.reps;
    if (std::isnan(t.fitted_slope)) {
        j["fitted_slope"] = nullptr;
        j["slope_stderr"] = nullptr;
    } else {
        j["fitted_slope"] = t.fitted_slope;
        j["slope_stderr"] = t.slope_stderr;
    }
    j["degenerate"] = t.degenerate;
    return j.dump(2);
}

std::string rate_table_csv(const RateTable& t) {
    std::string out = "n,mean_distance\n";
    for (std::size_t i = 0; i < t.n_grid.size(); ++i) {
        out += std::to_string(t.n_grid[i]);
        out += ',';
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", t.mean_distance[i]);
        out += buf;
        out += '\n';
    }
    return out;
}

}  // namespace swdist
