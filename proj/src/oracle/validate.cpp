#include "kernels.hpp"

#include <tepred/planner.hpp>
#include <tepred/shift.hpp>
#include <tepred/weights.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace tep::oracle {

namespace {

ModelComparison compare(std::string label, const MspeEstimate& est, double closed) {
    ModelComparison c;
    c.label = std::move(label);
    c.empirical = est.mspe;
    c.closed_form = closed;
    c.mc_se = est.mc_se;
    c.relative_error = std::abs(est.mspe - closed) / closed;
    c.z_score = est.mc_se > 0.0 ? (est.mspe - closed) / est.mc_se : 0.0;
    return c;
}

std::vector<ModelChoice> default_models(const DesignSpec& design) {
    std::vector<ModelChoice> models{ModelChoice::Moderator};
    if (design.is_balanced()) {
        models.push_back(ModelChoice::Ancova);
        if (design.p == 0) {
            models.push_back(ModelChoice::RawMeans);
        }
    }
    return models;
}

std::string describe_world(const WorldSpec& w) {
    std::ostringstream os;
    os.precision(6);
    os << "world: sigma0|x=" << w.sigma0 << " sigma1|x=" << w.sigma1 << " rho01=" << w.rho01;
    if (w.p > 0) {
        os << " beta0[0]=" << w.beta0(0) << " beta1[0]=" << w.beta1(0);
    }
    return os.str();
}

void run_within_or_shifted(SimulationReport& report, const WorldSpec& world, Scenario scenario, int reps,
                           const ValidateOptions& opt) {
    const DesignSpec& design = report.design;
    const int p = design.p;
    std::vector<ModelChoice> models = scenario == Scenario::Shifted ? std::vector<ModelChoice>{ModelChoice::Moderator}
                                                                    : opt.models;
    if (models.empty()) {
        models = default_models(design);
    }

    Vector target_mean = Vector::Zero(p);
    Matrix target_cov = Matrix::Identity(p, p);
    if (scenario == Scenario::Shifted) {
        target_mean = opt.shift_mean.size() == p ? opt.shift_mean : Vector::Constant(p, 0.5);
        target_cov = opt.shift_cov.rows() == p ? opt.shift_cov : Matrix(1.5 * Matrix::Identity(p, p));
    }

    std::vector<std::vector<double>> values(models.size(), std::vector<double>(static_cast<std::size_t>(reps)));
    parallel_for(reps, opt.threads, [&](int r) {
        Rng rng(stream_seed(report.seed, static_cast<std::uint64_t>(r)));
        const core::TrialData trial = detail::simulate_trial(world, design.n0, design.n1, opt.trial_design, rng);
        const Population target =
            detail::simulate_target(world, opt.target_units, target_mean, target_cov, opt.trial_design, rng);
        for (std::size_t m = 0; m < models.size(); ++m) {
            const PredictionModel fit = core::fit_prediction_model(trial, models[m]);
            values[m][static_cast<std::size_t>(r)] = squared_error(fit, target);
        }
    });

    for (std::size_t m = 0; m < models.size(); ++m) {
        double closed = 0.0;
        if (scenario == Scenario::Shifted) {
            shift::ShiftSpec spec;
            spec.pop_a = core::unit_summary(p);
            spec.pop_b = core::PopulationSummary{target_mean, target_cov, 0};
            closed = shift::mspe_shifted(design, report.variance, spec).mspe;
        } else {
            closed = planner::mspe(models[m], design, report.variance);
        }
        report.models.push_back(compare(std::string(core::to_string(models[m])), summarize_replications(values[m]),
                                         closed));
    }
}

void run_weighted(SimulationReport& report, const WorldSpec& world, int reps, const ValidateOptions& opt) {
    const DesignSpec& design = report.design;
    const double a = opt.stratum_share_a;
    const double b = opt.stratum_share_b;
    require(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0, ErrorKind::Domain, "stratum shares must lie in (0,1)");

    // One binary stratum covariate; inverse-odds weights are known exactly.
    const double w_hi = b / a;
    const double w_lo = (1.0 - b) / (1.0 - a);
    struct Arm {
        Matrix x;
        Vector w;
    };
    auto make_arm = [&](int n) {
        const int upper = static_cast<int>(std::lround(n * a));
        require(upper >= 1 && upper < n, ErrorKind::Infeasible,
                "arm of " + std::to_string(n) + " units cannot hold both strata at share " + std::to_string(a));
        Arm arm{Matrix::Zero(n, 1), Vector::Constant(n, w_lo)};
        arm.x.topRows(upper).setOnes();
        arm.w.head(upper).setConstant(w_hi);
        return arm;
    };
    const Arm arm0 = make_arm(design.n0);
    const Arm arm1 = make_arm(design.n1);

    std::vector<double> plain(static_cast<std::size_t>(reps));
    std::vector<double> weighted(static_cast<std::size_t>(reps));
    parallel_for(reps, opt.threads, [&](int r) {
        Rng rng(stream_seed(report.seed, static_cast<std::uint64_t>(r)));
        const Population u0 = detail::outcomes_for(world, arm0.x, rng);
        const Population u1 = detail::outcomes_for(world, arm1.x, rng);
        plain[static_cast<std::size_t>(r)] = u1.y1.mean() - u0.y0.mean();
        weighted[static_cast<std::size_t>(r)] =
            u1.y1.dot(arm1.w) / arm1.w.sum() - u0.y0.dot(arm0.w) / arm0.w.sum();
    });

    auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s / static_cast<double>(v.size());
    };
    const double mp = mean_of(plain);
    const double mw = mean_of(weighted);
    std::vector<double> sq_plain(plain.size());
    std::vector<double> sq_weighted(plain.size());
    for (std::size_t r = 0; r < plain.size(); ++r) {
        sq_plain[r] = (plain[r] - mp) * (plain[r] - mp);
        sq_weighted[r] = (weighted[r] - mw) * (weighted[r] - mw);
    }
    const double vp = mean_of(sq_plain);
    const double ratio = mean_of(sq_weighted) / vp;
    // Delta-method standard error of a ratio of means.
    std::vector<double> lin(plain.size());
    for (std::size_t r = 0; r < plain.size(); ++r) {
        lin[r] = (sq_weighted[r] - ratio * sq_plain[r]) / vp;
    }
    const MspeEstimate lin_est = summarize_replications(lin);

    const double s0 = world.sigma0 * world.sigma0;
    const double s1 = world.sigma1 * world.sigma1;
    const double vif0 = weights::kish_vif(arm0.w);
    const double vif1 = weights::kish_vif(arm1.w);
    const double closed = (s1 * vif1 / design.n1 + s0 * vif0 / design.n0) / (s1 / design.n1 + s0 / design.n0);
    report.models.push_back(compare("weighted_penalty", {ratio, lin_est.mc_se, reps}, closed));

    const double target_ate = world.mu1 - world.mu0 + b * (world.beta1(0) - world.beta0(0));
    std::ostringstream os;
    os.precision(6);
    os << "weighted difference in means averaged " << mw << " against target effect " << target_ate
       << "; unweighted averaged " << mp;
    report.notes.push_back(os.str());
}

} // namespace

std::string_view to_string(Scenario s) noexcept {
    switch (s) {
    case Scenario::Within: return "within";
    case Scenario::Shifted: return "shifted";
    case Scenario::Weighted: return "weighted";
    }
    return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) noexcept {
    if (name == "within") {
        return Scenario::Within;
    }
    if (name == "shifted") {
        return Scenario::Shifted;
    }
    if (name == "weighted") {
        return Scenario::Weighted;
    }
    return std::nullopt;
}

WorldSpec invert_variance_spec(const VarianceSpec& var, int p, double ate) {
    var.validate();
    require(p >= 0, ErrorKind::Domain, "covariate count must be nonnegative");
    require(p > 0 || var.r0p_sq == 0.0, ErrorKind::Infeasible,
            "R^2_0 = " + std::to_string(var.r0p_sq) + " needs at least one covariate");
    require(p > 0 || var.rtaup_sq == 0.0, ErrorKind::Infeasible,
            "R^2_tau = " + std::to_string(var.rtaup_sq) + " needs at least one covariate");
    require(std::abs(var.rho0eta) <= 1.0, ErrorKind::Infeasible,
            "rho0eta = " + std::to_string(var.rho0eta) + " violates |rho0eta| <= 1");

    const core::ConditionalVariances cv = var.conditional();
    WorldSpec w;
    w.p = p;
    w.mu0 = 0.0;
    w.mu1 = ate;
    w.sigma0 = std::sqrt(cv.sigma0_sq);
    w.sigma1 = std::sqrt(cv.sigma1_sq);
    const double tau_x = std::sqrt(cv.tau_sq);
    if (w.sigma1 > 0.0) {
        w.rho01 = (w.sigma0 + var.rho0eta * tau_x) / w.sigma1;
    } else {
        w.rho01 = 1.0;
    }
    require(std::abs(w.rho01) <= 1.0 + 1e-12, ErrorKind::Infeasible,
            "implied rho01 = " + std::to_string(w.rho01) + " violates |rho01| <= 1");
    w.rho01 = std::clamp(w.rho01, -1.0, 1.0);

    w.beta0 = Vector::Constant(p, p > 0 ? std::sqrt(var.r0p_sq * var.sigma0_sq / p) : 0.0);
    w.beta1 = w.beta0;
    if (p > 0) {
        w.beta1(0) += std::sqrt(var.rtaup_sq * var.tau_sq());
    }
    return w;
}

SimulationReport validate(const DesignSpec& design, const VarianceSpec& var, Scenario scenario, int reps,
                          std::uint64_t seed, const ValidateOptions& options) {
    design.validate();
    require(reps >= 100, ErrorKind::Domain, "validation needs at least 100 replications, got " + std::to_string(reps));
    require(options.target_units > design.p + 1, ErrorKind::Domain, "target must hold more than p + 1 units");

    SimulationReport report;
    report.scenario = scenario;
    report.design = design;
    report.variance = var;
    report.replications = reps;
    report.seed = seed;
    report.trial_design = options.trial_design;
    report.target_units = options.target_units;

    const int world_p = scenario == Scenario::Weighted ? 1 : design.p;
    const WorldSpec world = invert_variance_spec(var, world_p);
    report.notes.push_back(describe_world(world));

    if (scenario == Scenario::Weighted) {
        run_weighted(report, world, reps, options);
    } else {
        run_within_or_shifted(report, world, scenario, reps, options);
    }
    return report;
}

CoverageResult interval_coverage(const DesignSpec& design, const VarianceSpec& var, double alpha, int reps,
                                 int units_per_rep, std::uint64_t seed) {
    design.validate();
    require(reps > 0 && units_per_rep > 0, ErrorKind::Domain, "coverage needs positive replication and unit counts");
    const WorldSpec world = invert_variance_spec(var, design.p);
    const core::PopulationSummary pop = core::unit_summary(design.p);
    const Vector zero = Vector::Zero(design.p);
    const Matrix eye = Matrix::Identity(design.p, design.p);

    std::vector<int> covered(static_cast<std::size_t>(reps), 0);
    parallel_for(reps, 0, [&](int r) {
        Rng rng(stream_seed(seed, static_cast<std::uint64_t>(r)));
        const core::TrialData trial =
            detail::simulate_trial(world, design.n0, design.n1, TrialDesign::MomentMatched, rng);
        const PredictionModel fit = core::fit_prediction_model(trial, ModelChoice::Moderator);
        const Population target = detail::simulate_target(world, units_per_rep, zero, eye, TrialDesign::Random, rng);
        int hits = 0;
        for (Eigen::Index j = 0; j < target.size(); ++j) {
            const Vector x = target.x.row(j).transpose();
            const double spe = planner::spe_unit(x, design, var, pop);
            const planner::PredictionInterval pi = planner::prediction_interval(fit.predict(x), spe, alpha);
            hits += (target.delta(j) >= pi.lower && target.delta(j) <= pi.upper) ? 1 : 0;
        }
        covered[static_cast<std::size_t>(r)] = hits;
    });

    long total = 0;
    for (int h : covered) {
        total += h;
    }
    CoverageResult out;
    out.predictions = static_cast<long>(reps) * units_per_rep;
    out.coverage = static_cast<double>(total) / static_cast<double>(out.predictions);
    return out;
}

} // namespace tep::oracle
