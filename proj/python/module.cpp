// Python bindings for the main operations: sliced / max-sliced distances,
// exact 1D transport, projection planning, the bootstrap test, and the
// concentration / bracketing calculators.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "swdist/brackets.hpp"
#include "swdist/error.hpp"
#include "swdist/inference.hpp"
#include "swdist/maxsliced.hpp"
#include "swdist/measures.hpp"
#include "swdist/ot1d.hpp"
#include "swdist/projections.hpp"
#include "swdist/sliced.hpp"

namespace py = pybind11;
using namespace swdist;

namespace {

EmpiricalMeasure to_measure(const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
                            const std::optional<std::vector<double>>& weights) {
    if (points.ndim() != 2) throw invalid_parameter("points must be a 2-d array");
    const std::size_t n = static_cast<std::size_t>(points.shape(0));
    const std::size_t d = static_cast<std::size_t>(points.shape(1));
    std::vector<double> data(points.data(), points.data() + n * d);
    if (!weights) return EmpiricalMeasure::uniform(std::move(data), d);
    return EmpiricalMeasure(std::move(data), d, *weights);
}

Sorted1D to_sorted(const std::vector<double>& values,
                   const std::optional<std::vector<double>>& weights) {
    if (weights) return Sorted1D::from_samples(values, *weights);
    const std::vector<double> w(values.size(), 1.0 / double(values.size()));
    return Sorted1D::from_samples(values, w);
}

py::dict estimate_dict(const SlicedEstimate& est) {
    py::dict d;
    d["value"] = est.value;
    d["std_error"] = est.std_error;
    d["n_projections"] = est.per_projection.size();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sliced and max-sliced 1-Wasserstein distances";

    py::register_exception<invalid_parameter>(m, "InvalidParameter",
                                              PyExc_ValueError);
    py::register_exception<invalid_measure>(m, "InvalidMeasure", PyExc_ValueError);
    py::register_exception<budget_exceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    m.def(
        "w1_1d",
        [](const std::vector<double>& x, const std::vector<double>& y,
           const std::optional<std::vector<double>>& wx,
           const std::optional<std::vector<double>>& wy) {
            return w1_1d(to_sorted(x, wx), to_sorted(y, wy));
        },
        py::arg("x"), py::arg("y"), py::arg("x_weights") = py::none(),
        py::arg("y_weights") = py::none(),
        "Exact 1D W1 between weighted samples.");

    m.def(
        "wp_1d",
        [](const std::vector<double>& x, const std::vector<double>& y, double p,
           const std::optional<std::vector<double>>& wx,
           const std::optional<std::vector<double>>& wy) {
            return wp_1d(to_sorted(x, wx), to_sorted(y, wy), p);
        },
        py::arg("x"), py::arg("y"), py::arg("p") = 1.0,
        py::arg("x_weights") = py::none(), py::arg("y_weights") = py::none(),
        "Exact 1D W_p between weighted samples.");

    m.def(
        "sliced_w",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
           double p, std::size_t n_projections, std::uint64_t seed,
           const std::string& kind,
           const std::optional<std::vector<double>>& wx,
           const std::optional<std::vector<double>>& wy) {
            const auto mu = to_measure(x, wx);
            const auto nu = to_measure(y, wy);
            SlicedEstimate est;
            if (kind == "sw") {
                est = sw_p(mu, nu, p, sample_sphere(mu.dim(), n_projections, seed));
            } else if (kind == "sw_pow") {
                est = sw_p_pow(mu, nu, p, sample_sphere(mu.dim(), n_projections, seed));
            } else if (kind == "sw_hat") {
                est = sw_hat(mu, nu, p, sample_sphere(mu.dim(), n_projections, seed));
            } else if (kind == "sw_tilde_pow") {
                est = sw_tilde_p_pow(
                    mu, nu, p, sample_gaussian_dirs(mu.dim(), n_projections, 1.0, seed));
            } else {
                throw invalid_parameter("kind must be sw | sw_pow | sw_hat | sw_tilde_pow");
            }
            return estimate_dict(est);
        },
        py::arg("x"), py::arg("y"), py::arg("p") = 1.0,
        py::arg("n_projections") = 128, py::arg("seed") = 0,
        py::arg("kind") = "sw", py::arg("x_weights") = py::none(),
        py::arg("y_weights") = py::none(),
        "Monte Carlo sliced Wasserstein estimate; returns value/std_error.");

    m.def(
        "msw1",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
           std::uint64_t seed, std::size_t restarts, std::size_t max_iters,
           double tol, const std::optional<std::vector<double>>& wx,
           const std::optional<std::vector<double>>& wy) {
            MswOptions opts;
            opts.restarts = restarts;
            opts.max_iters = max_iters;
            opts.tol = tol;
            const auto res = msw1(to_measure(x, wx), to_measure(y, wy), opts, seed);
            py::dict d;
            d["value"] = res.value;
            d["argmax"] = res.argmax;
            d["restarts_used"] = res.restarts_used;
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("seed") = 0, py::arg("restarts") = 8,
        py::arg("max_iters") = 100, py::arg("tol") = 1e-7,
        py::arg("x_weights") = py::none(), py::arg("y_weights") = py::none(),
        "Max-sliced W1 by multi-start sphere ascent (certified lower bound).");

    m.def(
        "c_pd", [](double p, std::size_t d) { return c_pd(p, d); }, py::arg("p"),
        py::arg("d"), "Gaussian-direction rescaling constant (equals 1 at p=2).");

    m.def(
        "plan_projections",
        [](const std::string& variant, double epsilon, double delta,
           std::optional<double> L, std::optional<double> L_tilde,
           std::optional<double> delta_mu, std::optional<double> delta_nu,
           std::optional<double> p, std::optional<double> d) {
            const auto v = plan_variant_from_name(variant);
            if (!v) throw invalid_parameter("unknown plan variant: " + variant);
            PlanParams params;
            params.L = L;
            params.L_tilde = L_tilde;
            params.delta_mu = delta_mu;
            params.delta_nu = delta_nu;
            params.p = p;
            params.d = d;
            return plan_projections(*v, epsilon, delta, params).n_required;
        },
        py::arg("variant"), py::arg("epsilon"), py::arg("delta"),
        py::arg("L") = py::none(), py::arg("L_tilde") = py::none(),
        py::arg("delta_mu") = py::none(), py::arg("delta_nu") = py::none(),
        py::arg("p") = py::none(), py::arg("d") = py::none(),
        "High-probability projection budget for a planner variant.");

    m.def(
        "two_sample_test",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
           const std::string& statistic, double alpha, std::size_t boot_reps,
           std::uint64_t seed, std::size_t sw_dirs) {
            EstimatorConfig cfg;
            cfg.sw_dirs = sw_dirs;
            cfg.dir_seed = seed + 1;
            const StatKind kind =
                (statistic == "sw1") ? StatKind::sw1 : StatKind::msw1;
            const auto rep = two_sample_test(to_measure(x, std::nullopt),
                                             to_measure(y, std::nullopt), kind,
                                             alpha, boot_reps, cfg, seed);
            py::dict d;
            d["statistic"] = rep.statistic_value;
            d["critical_value"] = rep.critical_value;
            d["reject"] = rep.reject;
            d["alpha"] = rep.alpha;
            d["bootstrap_draws"] = rep.bootstrap_draws;
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("statistic") = "msw1",
        py::arg("alpha") = 0.05, py::arg("boot_reps") = 200, py::arg("seed") = 0,
        py::arg("sw_dirs") = 64,
        "Pooled-bootstrap two-sample test; rejects for large statistics.");

    m.def(
        "concentration_bound",
        [](const std::string& kind, std::size_t n, double t, double sigma2,
           std::size_t d) {
            const auto k = (kind == "msw1") ? ConcentrationKind::msw1_subgaussian
                                            : ConcentrationKind::sw1_subgaussian;
            return concentration_bound(k, n, t, sigma2, d);
        },
        py::arg("kind"), py::arg("n"), py::arg("t"), py::arg("sigma2"),
        py::arg("d") = 1, "Sub-Gaussian deviation bound (kind: msw1 | sw1).");

    m.def(
        "bracket_count",
        [](double M, double epsilon) { return build_brackets(M, epsilon).count(); },
        py::arg("M"), py::arg("epsilon"),
        "Number of constructed eps-brackets: 2^(ceil(2M/eps)-1).");

    m.def("sphere_covering_bound", &sphere_covering_bound, py::arg("d"),
          py::arg("epsilon"), "ceil((1+4/eps)^d).");

    m.def(
        "moment_p",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           double p, const std::optional<std::vector<double>>& w) {
            return moment_p(to_measure(x, w), p);
        },
        py::arg("x"), py::arg("p"), py::arg("weights") = py::none());

    m.def(
        "lambda_21",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const std::optional<std::vector<double>>& w) {
            return lambda_21(to_measure(x, w));
        },
        py::arg("x"), py::arg("weights") = py::none(),
        "Integral of the square-rooted empirical survival function of ||X||.");
}
