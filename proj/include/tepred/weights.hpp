#pragma once

#include <tepred/core.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tep::weights {

using core::DesignSpec;
using core::Matrix;
using core::Vector;
using core::VarianceSpec;

/// Per-unit weights over the estimation population with their summary.
struct WeightSet {
    Vector w;
    bool normalized = false;
    double support_lo = 0.0;
    double support_hi = 0.0;
    double vif = 1.0;
    double n_effective = 0.0;

    /// Validates and summarizes raw weights.
    static WeightSet from_weights(Vector w);
};

/// Logistic model for membership in the estimation population (label 1)
/// against the target population (label 0).
struct SelectionModel {
    Vector coefficients; // intercept, then one log-odds slope per covariate
    bool converged = false;
    int iterations = 0;
    double score_max = 0.0;

    /// Fitted probability of belonging to the estimation population.
    Vector prob_in_a(const Matrix& x) const;
};

struct SelectionOptions {
    double tolerance = 1e-8;
    int max_iterations = 100;
    /// Used to name the offending covariate in separation errors.
    std::vector<std::string> names;
};

SelectionModel fit_selection(const Matrix& x_a, const Matrix& x_b, const SelectionOptions& options = {});

/// (1 - pi) / pi per unit; exactly 0 or 1 raises DegeneratePropensity.
Vector inverse_odds(const Vector& prob_in_a);

WeightSet normalize(const WeightSet& ws);

/// 1 + population variance / mean^2.
double kish_vif(const Vector& w);

double effective_n(double n, double vif);
/// ceil(n * vif), guarding against floating-point noise just above an integer.
long required_n(long n_target, double vif);

struct SupportResult {
    double coverage = 0.0;
    std::vector<Eigen::Index> kept; // target-population indices inside the source weight range
};

SupportResult common_support(const Vector& w_a, const Vector& w_b);

/// Per-arm weighted regressions; predictions are x'(beta1 - beta0) plus the
/// weighted intercept difference.
core::PredictionModel weighted_prediction_model(const core::TrialData& trial, const WeightSet& ws);

struct WeightedMspe {
    double mspe = 0.0;
    double estimation_term = 0.0;
    double unweighted_estimation_term = 0.0;
    /// estimation_term / unweighted_estimation_term - 1
    double inflation = 0.0;
    /// The estimate is only valid when the weights balance the moderator
    /// distribution and every target pattern is represented in the source.
    bool assumes_balance_and_positivity = true;
};

WeightedMspe mspe_weighted(const DesignSpec& design, const VarianceSpec& var, double vif);

struct WeightDiagnostics {
    double max_normalized = 0.0;
    /// Units holding at least 25% of the total weight on their own.
    int heavy_units = 0;
};

WeightDiagnostics diagnose_weights(const Vector& w);

/// Selection fit, inverse-odds weights for both populations and the support
/// check, as one pass. Covariates are standardized to the estimation
/// population before fitting, so `model` coefficients live on that scale.
struct Reweighting {
    SelectionModel model;
    WeightSet weights_a;
    Vector weights_b;
    SupportResult support;
    WeightDiagnostics diagnostics;
};

Reweighting reweight(const Matrix& x_a, const Matrix& x_b, const SelectionOptions& options = {});

} // namespace tep::weights
