#pragma once

#include <tepred/core.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tep::oracle {

using core::DesignSpec;
using core::Matrix;
using core::ModelChoice;
using core::PredictionModel;
using core::Vector;
using core::VarianceSpec;

using Rng = std::mt19937_64;

/// Seed for replication `index`: a pure function of (seed, index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

enum class CovariateLaw { StandardNormal, Gaussian, Resample };

/// Potential-outcomes world: Y(k) = mu_k + x'beta_k + eps_k with
/// corr(eps_0, eps_1) = rho01.
struct WorldSpec {
    int p = 0;
    Vector beta0;
    Vector beta1;
    double mu0 = 0.0;
    double mu1 = 0.0;
    double sigma0 = 1.0; // residual SDs given x
    double sigma1 = 1.0;
    double rho01 = 1.0;
    CovariateLaw law = CovariateLaw::StandardNormal;
    Vector law_mean;    // Gaussian law
    Matrix law_cov;     // Gaussian law
    Matrix law_pool;    // Resample law: rows drawn with replacement
    std::uint64_t seed = 0;

    /// Variance of the idiosyncratic effect given x.
    double tau_sq() const;
    void validate() const;
};

/// Finite population with both potential outcomes.
struct Population {
    Matrix x;
    Vector y0;
    Vector y1;
    Vector delta; // y1 - y0

    Eigen::Index size() const { return delta.size(); }
};

Population generate_world(const WorldSpec& spec, Eigen::Index n_units);

/// Samples n0 + n1 units without replacement, assigns n1 of them to
/// treatment at random and returns the observed trial.
core::TrialData draw_trial(const Population& world, int n0, int n1, std::uint64_t seed);

PredictionModel run_trial(const Population& world, int n0, int n1, ModelChoice model, std::uint64_t seed);

struct MspeEstimate {
    double mspe = 0.0;
    double mc_se = 0.0;
    int replications = 0;
};

/// Mean of (delta_hat - delta)^2 over the target units for one fitted model.
double squared_error(const PredictionModel& model, const Population& target);

/// Averages squared_error over replications; the standard error comes from
/// the spread of the per-replication values.
MspeEstimate empirical_mspe(const std::vector<PredictionModel>& fits, const Population& target);
MspeEstimate summarize_replications(const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Closed-form validation

enum class Scenario { Within, Shifted, Weighted };

std::string_view to_string(Scenario s) noexcept;
std::optional<Scenario> parse_scenario(std::string_view name) noexcept;

/// Moment-matched draws fix each arm's covariate mean at 0 and covariance at
/// the population value, which is the fixed-design setting the closed forms
/// describe. Random draws sample covariates independently every replication.
enum class TrialDesign { MomentMatched, Random };

struct ValidateOptions {
    int target_units = 400;
    TrialDesign trial_design = TrialDesign::MomentMatched;
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on this value.
    unsigned threads = 0;
    /// Shifted scenario: target mean and covariance in coordinates
    /// standardized to the estimation population.
    Vector shift_mean;
    Matrix shift_cov;
    /// Weighted scenario: share of the second stratum in the estimation and
    /// target populations.
    double stratum_share_a = 0.4;
    double stratum_share_b = 0.6;
    /// Models compared in the within scenario; all applicable models by default.
    std::vector<ModelChoice> models;
};

/// World consistent with (var, p): the first covariate carries all of the
/// moderation, all covariates share the outcome-explaining loading equally.
WorldSpec invert_variance_spec(const VarianceSpec& var, int p, double ate = 0.0);

struct ModelComparison {
    std::string label;
    double empirical = 0.0;
    double closed_form = 0.0;
    double mc_se = 0.0;
    double relative_error = 0.0;
    /// (empirical - closed_form) / mc_se
    double z_score = 0.0;
};

struct SimulationReport {
    Scenario scenario = Scenario::Within;
    DesignSpec design;
    VarianceSpec variance;
    int replications = 0;
    std::uint64_t seed = 0;
    TrialDesign trial_design = TrialDesign::MomentMatched;
    int target_units = 0;
    std::vector<ModelComparison> models;
    std::vector<std::string> notes;

    double max_relative_error() const;
    double max_abs_z() const;
    /// Deterministic JSON rendering.
    std::string to_json(int indent = 2) const;
};

SimulationReport validate(const DesignSpec& design, const VarianceSpec& var, Scenario scenario, int reps,
                          std::uint64_t seed, const ValidateOptions& options = {});

/// Share of 100(1 - alpha)% prediction intervals, built from the per-unit
/// SPE, that cover the true effect.
struct CoverageResult {
    double coverage = 0.0;
    long predictions = 0;
};

CoverageResult interval_coverage(const DesignSpec& design, const VarianceSpec& var, double alpha, int reps,
                                 int units_per_rep, std::uint64_t seed);

/// Runs body(r) for r in [0, count) on a fixed pool of threads.
void parallel_for(int count, unsigned threads, const std::function<void(int)>& body);

} // namespace tep::oracle
