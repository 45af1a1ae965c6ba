#include <tepred/planner.hpp>
#include <tepred/weights.hpp>

#include <cmath>
#include <string>

namespace tep::weights {

namespace {

void check_weights(const Vector& w) {
    require(w.size() > 0, ErrorKind::InsufficientData, "weight vector is empty");
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (!std::isfinite(w(i)) || w(i) < 0.0) {
            fail(ErrorKind::InvalidWeight, "weight at unit " + std::to_string(i) + " is negative or not finite");
        }
    }
    require(w.sum() > 0.0, ErrorKind::DegenerateWeights, "all weights are zero");
}

void check_vif(double vif) {
    require(std::isfinite(vif) && vif >= 1.0, ErrorKind::Domain, "VIF must be at least 1, got " + std::to_string(vif));
}

} // namespace

WeightSet WeightSet::from_weights(Vector w) {
    check_weights(w);
    WeightSet ws;
    ws.vif = kish_vif(w);
    ws.n_effective = effective_n(static_cast<double>(w.size()), ws.vif);
    ws.support_lo = w.minCoeff();
    ws.support_hi = w.maxCoeff();
    ws.normalized = std::abs(w.sum() - 1.0) <= 1e-10;
    ws.w = std::move(w);
    return ws;
}

Vector inverse_odds(const Vector& prob_in_a) {
    Vector w(prob_in_a.size());
    for (Eigen::Index i = 0; i < prob_in_a.size(); ++i) {
        const double pi = prob_in_a(i);
        require(std::isfinite(pi) && pi >= 0.0 && pi <= 1.0, ErrorKind::Domain,
                "probability at unit " + std::to_string(i) + " is outside [0,1]");
        if (pi == 0.0 || pi == 1.0) {
            fail(ErrorKind::DegeneratePropensity,
                 "membership probability is exactly " + std::to_string(static_cast<int>(pi)) + " at unit " +
                     std::to_string(i));
        }
        w(i) = (1.0 - pi) / pi;
    }
    return w;
}

WeightSet normalize(const WeightSet& ws) {
    check_weights(ws.w);
    WeightSet out = ws;
    const double total = ws.w.sum();
    out.w = ws.w / total;
    out.support_lo = ws.support_lo / total;
    out.support_hi = ws.support_hi / total;
    out.normalized = true;
    return out;
}

double kish_vif(const Vector& w) {
    check_weights(w);
    const double mean = w.mean();
    const double var = (w.array() - mean).square().mean();
    return 1.0 + var / (mean * mean);
}

double effective_n(double n, double vif) {
    require(n >= 1.0, ErrorKind::Domain, "sample size must be at least 1");
    check_vif(vif);
    return n / vif;
}

long required_n(long n_target, double vif) {
    require(n_target >= 1, ErrorKind::Domain, "sample size must be at least 1");
    check_vif(vif);
    const double raw = static_cast<double>(n_target) * vif;
    const double nearest = std::round(raw);
    if (std::abs(raw - nearest) <= 1e-9 * std::max(1.0, raw)) {
        return static_cast<long>(nearest);
    }
    return static_cast<long>(std::ceil(raw));
}

SupportResult common_support(const Vector& w_a, const Vector& w_b) {
    require(w_a.size() > 0 && w_b.size() > 0, ErrorKind::InsufficientData, "both weight vectors must be nonempty");
    const double lo = w_a.minCoeff();
    const double hi = w_a.maxCoeff();
    SupportResult out;
    for (Eigen::Index i = 0; i < w_b.size(); ++i) {
        if (w_b(i) >= lo && w_b(i) <= hi) {
            out.kept.push_back(i);
        }
    }
    out.coverage = static_cast<double>(out.kept.size()) / static_cast<double>(w_b.size());
    return out;
}

core::PredictionModel weighted_prediction_model(const core::TrialData& trial, const WeightSet& ws) {
    require(ws.w.size() == trial.rows(), ErrorKind::DimensionMismatch,
            "weights cover " + std::to_string(ws.w.size()) + " units but the trial has " +
                std::to_string(trial.rows()));
    return core::fit_prediction_model(trial, core::ModelChoice::Moderator, ws.w);
}

WeightedMspe mspe_weighted(const DesignSpec& design, const VarianceSpec& var, double vif) {
    check_vif(vif);
    design.validate();
    var.validate();
    WeightedMspe out;
    out.unweighted_estimation_term = planner::estimation_variance(design, var) * (1.0 + design.p);
    out.estimation_term = vif * out.unweighted_estimation_term;
    out.inflation = vif - 1.0;
    out.mspe = out.estimation_term + var.conditional().tau_sq;
    return out;
}

WeightDiagnostics diagnose_weights(const Vector& w) {
    check_weights(w);
    const Vector share = w / w.sum();
    WeightDiagnostics d;
    d.max_normalized = share.maxCoeff();
    d.heavy_units = static_cast<int>((share.array() >= 0.25).count());
    return d;
}

Reweighting reweight(const Matrix& x_a, const Matrix& x_b, const SelectionOptions& options) {
    require(x_a.cols() == x_b.cols(), ErrorKind::DimensionMismatch, "populations have different covariate counts");
    const core::PopulationSummary ref = core::summarize(x_a);
    Reweighting out;
    out.model = fit_selection(core::standardize(x_a, ref), core::standardize(x_b, ref), options);
    out.weights_a = WeightSet::from_weights(inverse_odds(out.model.prob_in_a(core::standardize(x_a, ref))));
    out.weights_b = inverse_odds(out.model.prob_in_a(core::standardize(x_b, ref)));
    out.support = common_support(out.weights_a.w, out.weights_b);
    out.diagnostics = diagnose_weights(out.weights_a.w);
    return out;
}

} // namespace tep::weights
