#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swdist/measures.hpp"
#include "swdist/projections.hpp"

namespace swdist {

enum class SlicedKind { swp_pow, swp, sw_hat, sw_tilde_pow };

// Monte Carlo estimate over a direction batch. `per_projection` holds the
// per-direction contribution on the aggregation scale (so that value is the
// plain mean, or mean^{1/p} for swp) and std_error = sd(per_projection)/sqrt(k).
struct SlicedEstimate {
    double value = 0.0;
    std::vector<double> per_projection;
    double std_error = 0.0;
    SlicedKind estimand = SlicedKind::swp_pow;
};

// mean of W_p^p over the directions (uniform-sphere or grid).
SlicedEstimate sw_p_pow(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                        double p, const DirectionSet& dirs);

// p-th root of sw_p_pow.
SlicedEstimate sw_p(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                    double p, const DirectionSet& dirs);

// mean of W_p (not powered) over the directions.
SlicedEstimate sw_hat(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                      double p, const DirectionSet& dirs);

// (1/d^{p/2}) * mean of W_p^p over unnormalized N(0, I_d) directions.
SlicedEstimate sw_tilde_p_pow(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                              double p, const DirectionSet& dirs);

// Ratio between the Gaussian-direction and uniform-sphere sliced distances:
// E||theta||^p for theta ~ N(0, (1/d) I_d), i.e.
// (2/d)^{p/2} Gamma((d+p)/2) / Gamma(d/2). Equals 1 at p = 2.
double c_pd(double p, std::size_t d);

enum class PlanVariant { prop4, cor3, cor4, cor5, cor6, cor7 };

struct PlanParams {
    std::optional<double> L;         // p W_p^{p-1} (M_p(mu)+M_p(nu))
    std::optional<double> L_tilde;   // M_p(mu)+M_p(nu)
    std::optional<double> delta_mu;  // max_i M_2 of coordinate marginal
    std::optional<double> delta_nu;
    std::optional<double> p;
    std::optional<double> d;
};

struct ProjectionPlan {
    PlanVariant variant;
    double epsilon;
    double delta;
    PlanParams params;
    std::uint64_t n_required;
};

// High-probability projection budgets. Natural log; bounds below 1 clamp to 1.
ProjectionPlan plan_projections(PlanVariant variant, double epsilon, double delta,
                                const PlanParams& params);

struct PlanInputs {
    double m_p_mu = 0.0;
    double m_p_nu = 0.0;
    double delta_mu = 0.0;   // max_i M_2((pi_i)# mu)
    double delta_nu = 0.0;
    double wp_upper = 0.0;   // conservative W_p <= M_p(mu)+M_p(nu)
    double wp_pilot = 0.0;   // pilot MC estimate of W_p via sw_p on pilot dirs
};

// Moments exactly, plus a conservative W_p upper bound and a pilot estimate.
// The caller chooses which W_p proxy feeds L.
PlanInputs estimate_plan_inputs(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                                double p, const DirectionSet& pilot_dirs);

const char* plan_variant_name(PlanVariant v);
std::optional<PlanVariant> plan_variant_from_name(const std::string& name);

}  // namespace swdist
