#pragma once

#include <tepred/core.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tep::planner {

using core::DesignSpec;
using core::ModelChoice;
using core::PopulationSummary;
using core::Vector;
using core::VarianceSpec;

/// sigma0|x^2 / n0 + sigma1|x^2 / n1: sampling variance of the ATE estimate
/// with the moderators held at their means.
double estimation_variance(const DesignSpec& design, const VarianceSpec& var);

/// MSPE of the moderator (separate per-arm regressions) model. Balanced
/// designs use the scaled form; unbalanced designs use the conditional-variance
/// form. Both agree when n0 == n1.
double mspe_moderator(const DesignSpec& design, const VarianceSpec& var);

/// (sigma0x^2/n0 + sigma1x^2/n1)(1 + p) + taux^2
double mspe_moderator_conditional(double sigma0x_sq, double sigma1x_sq, double taux_sq, int n0, int n1, int p);

/// Constant-effect prediction from a common-slope model with p covariates.
/// Balanced designs only.
double mspe_ancova(const DesignSpec& design, const VarianceSpec& var);

/// Unadjusted difference in means used as every unit's prediction. Equals
/// mspe_ancova at p = 0, R^2_0 = 0. Balanced designs only.
double mspe_raw(const DesignSpec& design, const VarianceSpec& var);

double mspe(ModelChoice model, const DesignSpec& design, const VarianceSpec& var);

/// Smallest R^2_tau at which the moderator model's MSPE does not exceed the
/// common-slope model's. `ancova_always_preferred` is set (and value = 1)
/// when no R^2_tau in [0,1] achieves that.
struct RtauThreshold {
    double value = 1.0;
    bool ancova_always_preferred = false;
};

/// Coefficients of A u^2 + B u + C, u = sqrt(1 - R^2_tau); the moderator model
/// wins where the quadratic is <= 0.
struct RtauQuadratic {
    double a, b, c;
};

RtauQuadratic rtau_quadratic(const DesignSpec& design, const VarianceSpec& var);
RtauThreshold min_rtau_sq(const DesignSpec& design, const VarianceSpec& var);

/// Squared prediction error at standardized covariate vector x.
double spe_unit(const Vector& x_std, const DesignSpec& design, const VarianceSpec& var, const PopulationSummary& pop);

struct PredictionInterval {
    double lower = 0.0;
    double upper = 0.0;
    double width = 0.0;
};

enum class IntervalQuantile { Normal, StudentT };

/// delta_hat -/+ q * sqrt(spe) with q the (1 - alpha/2) normal quantile, or
/// the Student-t quantile with `t_df` degrees of freedom when requested.
PredictionInterval prediction_interval(double delta_hat, double spe, double alpha,
                                       IntervalQuantile quantile = IntervalQuantile::Normal, double t_df = 0.0);

enum class Sidedness { TwoSided, OneSided };

/// t_{1-alpha/2}(df) + t_{power}(df), df = N - p - 2 (one-sided uses 1 - alpha).
double mdes_multiplier(int total_n, int p, double alpha, double power, Sidedness sides = Sidedness::TwoSided);

/// Minimum detectable effect size for a simple two-arm trial.
double mdes(int total_n, int p, double rp_sq, double pi_treat, double alpha, double power,
            Sidedness sides = Sidedness::TwoSided);

/// 1 - sqrt(mspe_small / mspe_large): relative shrinkage of a prediction-interval width.
double width_reduction(double mspe_small, double mspe_large);

/// Round half away from zero to `decimals` places.
double round_half_away(double value, int decimals);

// ---------------------------------------------------------------------------
// Grids

struct PlanCell {
    int n = 0;
    int p = 0;
    double tau_star_sq = 0.0;
    double rtau_sq = 0.0;
    double rho0eta = 0.0;
    double r0_sq = 0.0;
    double alpha = 0.10;
    double sigma0_sq = 1.0;
    double ate = 0.0;

    DesignSpec design() const { return DesignSpec::balanced(n, p); }
    VarianceSpec variance() const;
};

struct PlanResult {
    double mspe = 0.0;
    double pi_width = 0.0;
    double pi_lower = 0.0;
    double pi_upper = 0.0;
    ModelChoice model = ModelChoice::Ancova;
};

struct PlanRow {
    PlanCell cell;
    ModelChoice model = ModelChoice::Ancova;
    std::optional<PlanResult> result;
    std::string error;
};

PlanResult plan_cell(const PlanCell& cell, ModelChoice model);

/// One row per cell per model, in input order. Failing cells carry their
/// error message instead of being dropped.
std::vector<PlanRow> plan_table(const std::vector<PlanCell>& grid, const std::vector<ModelChoice>& models);

struct ThresholdRow {
    PlanCell cell;
    std::optional<RtauThreshold> threshold;
    std::string error;
};

std::vector<ThresholdRow> threshold_table(const std::vector<PlanCell>& grid);

/// Nested comparison of the common-slope model (p parameters for covariates)
/// against the moderator model (2p).
struct ComparisonRow {
    PlanCell cell;
    double mspe_p = 0.0;
    double mspe_2p = 0.0;
    double width_p = 0.0;
    double width_2p = 0.0;
    double pct_width_reduction = 0.0;
    bool moderator_better = false;
    std::string error;
};

/// When `only_moderator_better` is set, rows where the moderator model does
/// not have strictly smaller MSPE are omitted.
std::vector<ComparisonRow> comparison_table(const std::vector<PlanCell>& grid, bool only_moderator_better);

// ---------------------------------------------------------------------------
// Preset grids: rho0eta = 0, R^2_0 = 0.80, sigma0^2 = 1, ATE = 0.22, 90% intervals.

namespace presets {

std::vector<PlanCell> table1();
std::vector<PlanCell> table2();
/// p = 1 nested comparison grid, R^2_tau in steps of 0.2.
std::vector<PlanCell> table3();
/// p = 3 counterpart of table3.
std::vector<PlanCell> appendix_b();

} // namespace presets

} // namespace tep::planner
