// swdist: sliced / max-sliced 1-Wasserstein distances, projection planners,
// limit-law simulation, bootstrap two-sample tests, rate experiments, and
// bracket constructions.
//
// Exit codes: 0 success/retain, 2 usage error, 3 test rejected, 4 runtime or
// numerical error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "swdist/brackets.hpp"
#include "swdist/error.hpp"
#include "swdist/inference.hpp"
#include "swdist/io.hpp"
#include "swdist/limits.hpp"
#include "swdist/maxsliced.hpp"
#include "swdist/measures.hpp"
#include "swdist/ot1d.hpp"
#include "swdist/projections.hpp"
#include "swdist/rng.hpp"
#include "swdist/sliced.hpp"

namespace {

using nlohmann::ordered_json;
using namespace swdist;

void emit(const ordered_json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

// Spec strings: "gaussian:dim=2,var=1[,mean=0.5;0]", "cube:dim=2,side=1",
// "points:FILE.csv".
DistributionSpec parse_spec(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw invalid_parameter("bad spec: " + s);
    const std::string kind = s.substr(0, colon);
    const std::string rest = s.substr(colon + 1);
    if (kind == "points") {
        const EmpiricalMeasure m = read_csv_measure(rest);
        return PointListSpec{m.points(), m.dim()};
    }
    std::map<std::string, std::string> kv;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw invalid_parameter("bad spec field: " + item);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    if (kind == "gaussian") {
        const std::size_t dim = kv.count("dim") ? std::stoul(kv["dim"]) : 1;
        GaussianSpec g;
        g.variance = kv.count("var") ? std::stod(kv["var"]) : 1.0;
        g.mean.assign(dim, 0.0);
        if (kv.count("mean")) {
            std::stringstream ms(kv["mean"]);
            std::string tok;
            std::size_t i = 0;
            while (std::getline(ms, tok, ';') && i < dim) g.mean[i++] = std::stod(tok);
        }
        return g;
    }
    if (kind == "cube") {
        UniformCubeSpec u;
        u.dim = kv.count("dim") ? std::stoul(kv["dim"]) : 1;
        u.side = kv.count("side") ? std::stod(kv["side"]) : 1.0;
        return u;
    }
    throw invalid_parameter("unknown spec kind: " + kind);
}

ordered_json sliced_report(const SlicedEstimate& est, const std::string& kind,
                           double p, std::uint64_t seed) {
    ordered_json j;
    j["kind"] = kind;
    j["p"] = p;
    j["value"] = est.value;
    j["std_error"] = est.std_error;
    j["n_projections"] = est.per_projection.size();
    double lo = est.per_projection.front(), hi = lo, mean = 0.0;
    for (double v : est.per_projection) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v;
    }
    mean /= static_cast<double>(est.per_projection.size());
    j["per_projection"] = {{"min", lo}, {"mean", mean}, {"max", hi}};
    j["seed"] = seed;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"Sliced and max-sliced 1-Wasserstein distances and statistics"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker cap (results are thread-count independent)");

    // ---- distance ----
    auto* cmd_distance = app.add_subcommand("distance", "distance between two CSV point clouds");
    std::string dx, dy, dkind = "sw", dout;
    double dp = 1.0;
    std::size_t ddirs = 128;
    std::uint64_t dseed = 0;
    bool dseed_set = false;
    double plan_eps = 0.0, plan_delta = 0.0;
    std::string plan_variant = "prop4";
    MswOptions dmsw;
    cmd_distance->add_option("--x", dx, "first measure CSV")->required();
    cmd_distance->add_option("--y", dy, "second measure CSV")->required();
    cmd_distance->add_option("--kind", dkind, "sw | sw-hat | sw-tilde | msw1 | w1d")
        ->check(CLI::IsMember({"sw", "sw-hat", "sw-tilde", "msw1", "w1d"}));
    cmd_distance->add_option("--p", dp, "order p >= 1");
    cmd_distance->add_option("--dirs", ddirs, "number of projections");
    cmd_distance->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { dseed = v; dseed_set = true; }, "RNG seed");
    cmd_distance->add_option("--plan-epsilon", plan_eps, "planner accuracy");
    cmd_distance->add_option("--plan-delta", plan_delta, "planner failure probability");
    cmd_distance->add_option("--plan-variant", plan_variant,
                             "prop4 | cor3 | cor4 | cor5 | cor6 | cor7");
    cmd_distance->add_option("--restarts", dmsw.restarts, "msw1 restarts");
    cmd_distance->add_option("--max-iters", dmsw.max_iters, "msw1 iterations");
    cmd_distance->add_option("--tol", dmsw.tol, "msw1 tolerance");
    cmd_distance->add_option("--out", dout, "output JSON path (default stdout)");

    // ---- test ----
    auto* cmd_test = app.add_subcommand("test", "bootstrap two-sample test");
    std::string tx, ty, tstat = "msw1", tout;
    double talpha = 0.05;
    std::size_t tboot = 200, tdirs = 64;
    std::uint64_t tseed = 0;
    MswOptions tmsw;
    cmd_test->add_option("--x", tx)->required();
    cmd_test->add_option("--y", ty)->required();
    cmd_test->add_option("--statistic", tstat)->check(CLI::IsMember({"sw1", "msw1"}));
    cmd_test->add_option("--alpha", talpha);
    cmd_test->add_option("--boot-reps", tboot);
    cmd_test->add_option("--dirs", tdirs, "sw1 projection count");
    cmd_test->add_option("--seed", tseed)->required();
    cmd_test->add_option("--restarts", tmsw.restarts);
    cmd_test->add_option("--max-iters", tmsw.max_iters);
    cmd_test->add_option("--out", tout);

    // ---- plan ----
    auto* cmd_plan = app.add_subcommand("plan", "projection-budget planner");
    std::string pvariant = "prop4", pout;
    double peps = 0.0, pdelta = 0.0;
    PlanParams pparams;
    double pL, pLt, pdm, pdn, pp, pd;
    cmd_plan->add_option("--variant", pvariant)
        ->check(CLI::IsMember({"prop4", "cor3", "cor4", "cor5", "cor6", "cor7"}));
    cmd_plan->add_option("--epsilon", peps)->required();
    cmd_plan->add_option("--delta", pdelta)->required();
    auto* oL = cmd_plan->add_option("--L", pL);
    auto* oLt = cmd_plan->add_option("--L-tilde", pLt);
    auto* odm = cmd_plan->add_option("--delta-mu", pdm);
    auto* odn = cmd_plan->add_option("--delta-nu", pdn);
    auto* op = cmd_plan->add_option("--p", pp);
    auto* od = cmd_plan->add_option("--d", pd);
    cmd_plan->add_option("--out", pout);

    // ---- rates ----
    auto* cmd_rates = app.add_subcommand("rates", "convergence-rate experiment");
    std::string rspec, rdist = "sw1", rout, rcsv;
    std::string rngrid = "250,500,1000,2000,4000";
    std::size_t rreps = 30, rref = 30000, rdirs = 64;
    std::uint64_t rseed = 0;
    MswOptions rmsw{4, 40, 1e-5, 1e-4};
    cmd_rates->add_option("--spec", rspec, "gaussian:dim=..,var=.. | cube:.. | points:FILE")
        ->required();
    cmd_rates->add_option("--distance", rdist)->check(CLI::IsMember({"sw1", "msw1"}));
    cmd_rates->add_option("--n-grid", rngrid, "comma-separated sample sizes");
    cmd_rates->add_option("--reps", rreps);
    cmd_rates->add_option("--ref-size", rref);
    cmd_rates->add_option("--dirs", rdirs);
    cmd_rates->add_option("--seed", rseed)->required();
    cmd_rates->add_option("--restarts", rmsw.restarts);
    cmd_rates->add_option("--max-iters", rmsw.max_iters);
    cmd_rates->add_option("--out", rout, "RateTable JSON path");
    cmd_rates->add_option("--csv", rcsv, "RateTable CSV path");

    // ---- limits ----
    auto* cmd_limits = app.add_subcommand("limits", "limit-law / root-n draw vectors");
    std::string lspec, lspec2, lmode = "limit", lout;
    std::size_t lreps = 2000, ln = 10000, lsphere = 48, ltnodes = 48, lref = 20000;
    std::uint64_t lseed = 0;
    cmd_limits->add_option("--spec", lspec)->required();
    cmd_limits->add_option("--spec2", lspec2, "second measure (vs-nu modes)");
    cmd_limits->add_option("--mode", lmode,
                           "limit | limit-vs-nu | empirical-sw1 | empirical-sw1-vs-nu | empirical-msw1")
        ->check(CLI::IsMember({"limit", "limit-vs-nu", "empirical-sw1",
                               "empirical-sw1-vs-nu", "empirical-msw1"}));
    cmd_limits->add_option("--reps", lreps);
    cmd_limits->add_option("--n", ln, "sample size per empirical replicate");
    cmd_limits->add_option("--sphere-dirs", lsphere, "sphere grid resolution");
    cmd_limits->add_option("--t-nodes", ltnodes);
    cmd_limits->add_option("--ref-size", lref);
    cmd_limits->add_option("--seed", lseed)->required();
    cmd_limits->add_option("--out", lout, "draw vector CSV path");

    // ---- brackets ----
    auto* cmd_brackets = app.add_subcommand("brackets", "epsilon-bracket construction");
    double bM = 1.0, beps = 0.5;
    std::size_t baudit = 0;
    std::uint64_t bseed = 0;
    std::string bout;
    cmd_brackets->add_option("--M", bM)->required();
    cmd_brackets->add_option("--eps", beps)->required();
    cmd_brackets->add_option("--audit", baudit, "random Lipschitz membership audits");
    cmd_brackets->add_option("--seed", bseed, "audit seed");
    cmd_brackets->add_option("--out", bout);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (threads < 1) threads = 1;

    if (*cmd_distance) {
        const EmpiricalMeasure mu = read_csv_measure(dx);
        const EmpiricalMeasure nu = read_csv_measure(dy);
        if (mu.dim() != nu.dim()) throw invalid_parameter("dimension mismatch between inputs");
        ordered_json j;
        if (dkind == "w1d") {
            if (mu.dim() != 1) throw invalid_parameter("w1d needs 1-d inputs");
            const double v = w1_1d(Sorted1D::from_samples(mu.points(), mu.weights()),
                                   Sorted1D::from_samples(nu.points(), nu.weights()));
            j["kind"] = "w1d";
            j["value"] = v;
        } else if (dkind == "msw1") {
            if (!dseed_set) throw invalid_parameter("--seed is required for msw1");
            const MaxSlicedResult res = msw1(mu, nu, dmsw, dseed);
            j["kind"] = "msw1";
            j["value"] = res.value;
            j["argmax"] = res.argmax;
            j["restarts_used"] = res.restarts_used;
            j["seed"] = dseed;
        } else {
            if (!dseed_set) throw invalid_parameter("--seed is required for sliced kinds");
            std::size_t k = ddirs;
            std::optional<ProjectionPlan> plan;
            if (plan_eps > 0.0) {
                if (!(plan_delta > 0.0)) throw invalid_parameter("--plan-delta required");
                const DirectionSet pilot = sample_sphere(mu.dim(), 64, derive_seed(dseed, 0xB0));
                const PlanInputs in = estimate_plan_inputs(mu, nu, dp, pilot);
                PlanParams params;
                params.L = dp * std::pow(in.wp_upper, dp - 1.0) * (in.m_p_mu + in.m_p_nu);
                params.L_tilde = in.m_p_mu + in.m_p_nu;
                params.delta_mu = in.delta_mu;
                params.delta_nu = in.delta_nu;
                params.p = dp;
                params.d = static_cast<double>(mu.dim());
                const auto variant = plan_variant_from_name(plan_variant);
                if (!variant) throw invalid_parameter("unknown plan variant");
                plan = plan_projections(*variant, plan_eps, plan_delta, params);
                k = plan->n_required;
            }
            SlicedEstimate est;
            if (dkind == "sw-tilde") {
                const DirectionSet dirs = sample_gaussian_dirs(mu.dim(), k, 1.0, dseed);
                est = sw_tilde_p_pow(mu, nu, dp, dirs);
            } else {
                const DirectionSet dirs = sample_sphere(mu.dim(), k, dseed);
                est = (dkind == "sw") ? sw_p(mu, nu, dp, dirs) : sw_hat(mu, nu, dp, dirs);
            }
            j = sliced_report(est, dkind, dp, dseed);
            if (plan) {
                ordered_json pj;
                pj["variant"] = plan_variant_name(plan->variant);
                pj["epsilon"] = plan->epsilon;
                pj["delta"] = plan->delta;
                if (plan->params.L) pj["L"] = *plan->params.L;
                if (plan->params.L_tilde) pj["L_tilde"] = *plan->params.L_tilde;
                if (plan->params.delta_mu) pj["delta_mu"] = *plan->params.delta_mu;
                if (plan->params.delta_nu) pj["delta_nu"] = *plan->params.delta_nu;
                pj["n_required"] = plan->n_required;
                j["plan"] = pj;
            }
        }
        emit(j, dout);
        return 0;
    }

    if (*cmd_test) {
        const EmpiricalMeasure X = read_csv_measure(tx);
        const EmpiricalMeasure Y = read_csv_measure(ty);
        EstimatorConfig cfg;
        cfg.sw_dirs = tdirs;
        cfg.dir_seed = derive_seed(tseed, 0xD1);
        cfg.msw = tmsw;
        const StatKind kind = (tstat == "sw1") ? StatKind::sw1 : StatKind::msw1;
        const TestReport rep = two_sample_test(X, Y, kind, talpha, tboot, cfg, tseed);
        emit_text(test_report_json(rep) + "\n", tout);
        return rep.reject ? 3 : 0;
    }

    if (*cmd_plan) {
        if (*oL) pparams.L = pL;
        if (*oLt) pparams.L_tilde = pLt;
        if (*odm) pparams.delta_mu = pdm;
        if (*odn) pparams.delta_nu = pdn;
        if (*op) pparams.p = pp;
        if (*od) pparams.d = pd;
        const auto variant = plan_variant_from_name(pvariant);
        if (!variant) throw invalid_parameter("unknown plan variant");
        const ProjectionPlan plan = plan_projections(*variant, peps, pdelta, pparams);
        std::cout << plan.n_required << "\n";
        if (!pout.empty()) {
            ordered_json j;
            j["variant"] = pvariant;
            j["epsilon"] = peps;
            j["delta"] = pdelta;
            j["n_required"] = plan.n_required;
            emit(j, pout);
        }
        return 0;
    }

    if (*cmd_rates) {
        std::vector<std::size_t> grid;
        std::stringstream ss(rngrid);
        std::string tok;
        while (std::getline(ss, tok, ',')) grid.push_back(std::stoul(tok));
        RateConfig cfg;
        cfg.ref_size = rref;
        cfg.est.sw_dirs = rdirs;
        cfg.est.dir_seed = derive_seed(rseed, 0xD1);
        cfg.est.msw = rmsw;
        const StatKind kind = (rdist == "sw1") ? StatKind::sw1 : StatKind::msw1;
        const RateTable table =
            rate_experiment(parse_spec(rspec), kind, grid, rreps, cfg, rseed);
        emit_text(rate_table_json(table) + "\n", rout);
        if (!rcsv.empty()) write_text_file(rcsv, rate_table_csv(table));
        return 0;
    }

    if (*cmd_limits) {
        const DistributionSpec spec = parse_spec(lspec);
        LimitSample sample;
        if (lmode == "limit" || lmode == "limit-vs-nu") {
            const EmpiricalMeasure ref =
                generate(spec, lref, derive_seed(lseed, 0x52454631ULL));
            const std::size_t d = ref.dim();
            const DirectionSet dirs =
                (d == 1) ? grid_sphere(1, 2) : grid_sphere(d, lsphere);
            const CylinderGrid grid = make_cylinder_grid(ref, dirs, ltnodes);
            if (lmode == "limit") {
                sample = simulate_limit_one_sample(ref, grid, lreps, lseed);
            } else {
                if (lspec2.empty()) throw invalid_parameter("--spec2 required for vs-nu");
                const EmpiricalMeasure ref2 =
                    generate(parse_spec(lspec2), lref, derive_seed(lseed, 0x52454632ULL));
                sample = simulate_limit_vs_nu(ref, ref2, grid, lreps, lseed);
            }
        } else {
            RootnConfig cfg;
            cfg.n = ln;
            cfg.reps = lreps;
            cfg.ref_size = std::max(lref, std::size_t{100000});
            cfg.seed = lseed;
            const std::size_t d = spec_dim(spec);
            const DirectionSet dirs = (d == 1) ? grid_sphere(1, 2)
                                   : (d <= 3) ? grid_sphere(d, lsphere)
                                              : sample_sphere(d, lsphere, derive_seed(lseed, 0xD2));
            std::optional<DistributionSpec> spec2;
            if (!lspec2.empty()) spec2 = parse_spec(lspec2);
            const RootnStatistic stat = (lmode == "empirical-sw1") ? RootnStatistic::sw1_one_sample
                                      : (lmode == "empirical-sw1-vs-nu")
                                          ? RootnStatistic::sw1_vs_nu
                                          : RootnStatistic::msw1_one_sample;
            sample = empirical_rootn_distribution(spec, spec2, stat, dirs, cfg);
        }
        std::string csv = "draw\n";
        char buf[32];
        for (double v : sample.draws) {
            std::snprintf(buf, sizeof(buf), "%.17g\n", v);
            csv += buf;
        }
        emit_text(csv, lout);
        return 0;
    }

    if (*cmd_brackets) {
        const BracketSet set = build_brackets(bM, beps);
        double max_gap = 0.0;
        for (std::size_t k = 0; k < set.node_count(); ++k)
            max_gap = std::max(max_gap, set.brackets.front().upper_at(k) -
                                            set.brackets.front().lower_at(k));
        std::size_t audited = 0;
        if (baudit > 0) {
            auto eng = make_engine(bseed);
            std::uniform_int_distribution<int> coin(0, 1);
            for (std::size_t a = 0; a < baudit; ++a) {
                std::vector<double> f(set.node_count(), 0.0);
                for (std::size_t k = 1; k < f.size(); ++k) {
                    const double dx = set.node_x(k) - set.node_x(k - 1);
                    f[k] = f[k - 1] + (coin(eng) ? dx : -dx);
                }
                bracket_membership(f, set);
                ++audited;
            }
        }
        std::cout << set.count() << "\n";
        if (!bout.empty()) {
            ordered_json j;
            j["M"] = bM;
            j["epsilon"] = beps;
            j["count"] = set.count();
            j["cells"] = set.cells;
            j["max_gap"] = max_gap;
            j["audited"] = audited;
            emit(j, bout);
        }
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const invalid_parameter& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_measure& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_dimension& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const budget_exceeded& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
