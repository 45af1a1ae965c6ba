#pragma once

#include <tepred/core.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tep::shift {

using core::DesignSpec;
using core::Matrix;
using core::PopulationSummary;
using core::Vector;
using core::VarianceSpec;

/// Estimation population A and prediction population B, both expressed in
/// coordinates standardized with respect to A.
struct ShiftSpec {
    PopulationSummary pop_a;
    PopulationSummary pop_b;
    /// Bias matrix (delta_A - delta_B)(delta_A - delta_B)'; zero when unset.
    std::optional<Matrix> theta;
    /// Idiosyncratic effect variance in B; taken equal to A's when unset.
    std::optional<double> tau_b_sq;

    static Matrix outer(const Vector& theta_vec) { return theta_vec * theta_vec.transpose(); }

    /// Throws on dimension mismatch or a non-PSD theta. Returns non-fatal
    /// warnings, e.g. pop_a not looking self-standardized.
    std::vector<std::string> validate() const;
};

struct ShiftDiagnostics {
    double mahalanobis_m = 0.0;
    double burg_d = 0.0;
    double combined = 0.0;
};

/// (mu_B - mu_A)' Sigma_A^{-1} (mu_B - mu_A)
double mahalanobis(const PopulationSummary& pop_a, const PopulationSummary& pop_b);

/// tr(Sigma_A^{-1} Sigma_B)
double burg(const PopulationSummary& pop_a, const PopulationSummary& pop_b);

ShiftDiagnostics diagnostics(const PopulationSummary& pop_a, const PopulationSummary& pop_b);

struct ShiftedMspe {
    double mspe = 0.0;
    double estimation_term = 0.0; // (sigma0x^2/n0 + sigma1x^2/n1)(1 + D + M)
    double bias_term = 0.0;       // tr(Theta Sigma_B)
    double tau_b_sq = 0.0;
    bool tau_b_assumed_equal = false;
    ShiftDiagnostics distance;
};

/// MSPE in B of the moderator model fit in A.
ShiftedMspe mspe_shifted(const DesignSpec& design, const VarianceSpec& var, const ShiftSpec& spec);

struct AteShiftedMspe {
    double mspe = 0.0;
    /// Bias term replaced by (delta_B' Sigma_A delta_B) * M.
    double upper_bound = 0.0;
    double bias_term = 0.0;
    double bound_term = 0.0;
};

/// MSPE in B when A's ATE estimate is every unit's prediction. `tau_b_sq`
/// defaults to A's total effect variance tau^2.
AteShiftedMspe mspe_ate_shifted(const DesignSpec& design, const VarianceSpec& var, const PopulationSummary& pop_a,
                                const PopulationSummary& pop_b, const Vector& delta_b,
                                std::optional<double> tau_b_sq = std::nullopt);

/// (mu_S - mu_P)'(beta1 - beta0); PATE = SATE + this.
double sample_selection_bias(const Vector& mu_s, const Vector& mu_p, const Vector& delta);

/// How much the naive within-A SPE estimate at x understates the true SPE in
/// B: x' Theta x + (tau_B^2 - tau_A^2). Positive means underestimation.
double spe_estimator_bias(const Vector& x, const ShiftSpec& spec, double tau_a_sq);

} // namespace tep::shift
