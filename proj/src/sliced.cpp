#include "swdist/sliced.hpp"

#include <algorithm>
#include <cmath>

#include "swdist/error.hpp"
#include "swdist/ot1d.hpp"

namespace swdist {

namespace {

void check_pair(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                const DirectionSet& dirs) {
    if (mu.dim() != nu.dim() || mu.dim() != dirs.dim)
        throw invalid_parameter("ambient dimension mismatch");
    if (dirs.count() == 0) throw invalid_parameter("empty direction set");
}

// Per-direction W_p values (not powered).
std::vector<double> per_direction_wp(const EmpiricalMeasure& mu,
                                     const EmpiricalMeasure& nu, double p,
                                     const DirectionSet& dirs) {
    const std::size_t k = dirs.count();
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Sorted1D a = project(mu, dirs.dir_span(i));
        const Sorted1D b = project(nu, dirs.dir_span(i));
        out[i] = (p == 1.0) ? w1_1d(a, b) : wp_1d(a, b, p);
    }
    return out;
}

SlicedEstimate aggregate_mean(std::vector<double> per_proj, SlicedKind kind) {
    SlicedEstimate est;
    est.estimand = kind;
    est.per_projection = std::move(per_proj);
    const std::size_t k = est.per_projection.size();
    double mean = 0.0;
    for (double v : est.per_projection) mean += v;
    mean /= static_cast<double>(k);
    double var = 0.0;
    for (double v : est.per_projection) var += (v - mean) * (v - mean);
    var = (k > 1) ? var / static_cast<double>(k - 1) : 0.0;
    est.value = mean;
    est.std_error = std::sqrt(var / static_cast<double>(k));
    return est;
}

}  // namespace

SlicedEstimate sw_p_pow(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                        double p, const DirectionSet& dirs) {
    check_pair(mu, nu, dirs);
    if (p < 1.0) throw invalid_parameter("order p must be >= 1");
    if (dirs.kind == DirectionKind::gaussian)
        throw invalid_parameter("sw_p_pow needs uniform-sphere or grid directions");
    std::vector<double> vals = per_direction_wp(mu, nu, p, dirs);
    for (double& v : vals) v = std::pow(v, p);
    return aggregate_mean(std::move(vals), SlicedKind::swp_pow);
}

SlicedEstimate sw_p(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                    double p, const DirectionSet& dirs) {
    SlicedEstimate est = sw_p_pow(mu, nu, p, dirs);
    est.estimand = SlicedKind::swp;
    est.value = std::pow(est.value, 1.0 / p);
    return est;
}

SlicedEstimate sw_hat(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                      double p, const DirectionSet& dirs) {
    check_pair(mu, nu, dirs);
    if (p < 1.0) throw invalid_parameter("order p must be >= 1");
    if (dirs.kind == DirectionKind::gaussian)
        throw invalid_parameter("sw_hat needs uniform-sphere or grid directions");
    return aggregate_mean(per_direction_wp(mu, nu, p, dirs), SlicedKind::sw_hat);
}

SlicedEstimate sw_tilde_p_pow(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                              double p, const DirectionSet& dirs) {
    check_pair(mu, nu, dirs);
    if (p < 1.0) throw invalid_parameter("order p must be >= 1");
    if (dirs.kind != DirectionKind::gaussian || dirs.variance != 1.0)
        throw invalid_parameter("sw_tilde_p_pow needs gaussian(variance=1) directions");
    std::vector<double> vals = per_direction_wp(mu, nu, p, dirs);
    const double scale = std::pow(static_cast<double>(dirs.dim), -p / 2.0);
    for (double& v : vals) v = scale * std::pow(v, p);
    return aggregate_mean(std::move(vals), SlicedKind::sw_tilde_pow);
}

double c_pd(double p, std::size_t d) {
    if (p < 1.0 || d < 1) throw invalid_parameter("need p >= 1 and d >= 1");
    const double dd = static_cast<double>(d);
    const double log_ratio = std::lgamma((dd + p) / 2.0) - std::lgamma(dd / 2.0);
    return std::exp(0.5 * p * std::log(2.0 / dd) + log_ratio);
}

namespace {

double require(const std::optional<double>& v, const char* name) {
    if (!v) throw invalid_parameter(std::string("missing planner parameter: ") + name);
    return *v;
}

}  // namespace

ProjectionPlan plan_projections(PlanVariant variant, double epsilon, double delta,
                                const PlanParams& params) {
    if (!(epsilon > 0.0)) throw invalid_parameter("epsilon must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw invalid_parameter("delta must be in (0,1)");
    const double log_term = std::log(2.0 / delta);
    double bound = 0.0;
    switch (variant) {
        case PlanVariant::prop4: {
            const double L = require(params.L, "L");
            const double d = require(params.d, "d");
            if (d < 2.0) throw invalid_parameter("variant requires d >= 2");
            bound = 2.0 * L * L / ((d - 1.0) * epsilon * epsilon) * log_term;
            break;
        }
        case PlanVariant::cor3: {
            const double L = require(params.L, "L");
            const double d = require(params.d, "d");
            const double p = require(params.p, "p");
            if (d < 2.0) throw invalid_parameter("variant requires d >= 2");
            bound = 2.0 * L * L / ((d - 1.0) * std::pow(epsilon, 2.0 * p)) * log_term;
            break;
        }
        case PlanVariant::cor4: {
            const double dm = require(params.delta_mu, "delta_mu");
            const double dn = require(params.delta_nu, "delta_nu");
            bound = 4.0 * (dm + dn) * (dm + dn) / (epsilon * epsilon) * log_term;
            break;
        }
        case PlanVariant::cor5: {
            const double Lt = require(params.L_tilde, "L_tilde");
            const double d = require(params.d, "d");
            if (d < 2.0) throw invalid_parameter("variant requires d >= 2");
            bound = 2.0 * Lt * Lt / ((d - 1.0) * epsilon * epsilon) * log_term;
            break;
        }
        case PlanVariant::cor6: {
            const double L = require(params.L, "L");
            const double d = require(params.d, "d");
            const double p = require(params.p, "p");
            bound = 2.0 * L * L / (std::pow(d, p) * epsilon * epsilon) * log_term;
            break;
        }
        case PlanVariant::cor7: {
            const double L = require(params.L, "L");
            const double d = require(params.d, "d");
            const double p = require(params.p, "p");
            const double c = c_pd(p, static_cast<std::size_t>(d));
            bound = 2.0 * L * L / (std::pow(d, p) * c * c * epsilon * epsilon) * log_term;
            break;
        }
    }
    ProjectionPlan plan{variant, epsilon, delta, params, 1};
    plan.n_required = (bound <= 1.0)
                          ? 1
                          : static_cast<std::uint64_t>(std::ceil(bound));
    return plan;
}

PlanInputs estimate_plan_inputs(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                                double p, const DirectionSet& pilot_dirs) {
    if (pilot_dirs.count() == 0) throw invalid_parameter("pilot directions empty");
    PlanInputs in;
    in.m_p_mu = moment_p(mu, p);
    in.m_p_nu = moment_p(nu, p);
    auto marginal_m2 = [](const EmpiricalMeasure& m) {
        double best = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < m.size(); ++i) {
                const double x = m.point(i)[j];
                acc += m.weight(i) * x * x;
            }
            best = std::max(best, std::sqrt(acc));
        }
        return best;
    };
    in.delta_mu = marginal_m2(mu);
    in.delta_nu = marginal_m2(nu);
    // W_p(mu, nu) <= M_p(mu) + M_p(nu) by coupling through the point mass at 0.
    in.wp_upper = in.m_p_mu + in.m_p_nu;
    in.wp_pilot = sw_p(mu, nu, p, pilot_dirs).value;
    return in;
}

const char* plan_variant_name(PlanVariant v) {
    switch (v) {
        case PlanVariant::prop4: return "prop4";
        case PlanVariant::cor3: return "cor3";
        case PlanVariant::cor4: return "cor4";
        case PlanVariant::cor5: return "cor5";
        case PlanVariant::cor6: return "cor6";
        case PlanVariant::cor7: return "cor7";
    }
    return "?";
}

std::optional<PlanVariant> plan_variant_from_name(const std::string& name) {
    if (name == "prop4") return PlanVariant::prop4;
    if (name == "cor3") return PlanVariant::cor3;
    if (name == "cor4") return PlanVariant::cor4;
    if (name == "cor5") return PlanVariant::cor5;
    if (name == "cor6") return PlanVariant::cor6;
    if (name == "cor7") return PlanVariant::cor7;
    return std::nullopt;
}

}  // namespace swdist
