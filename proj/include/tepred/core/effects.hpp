#pragma once

#include <tepred/core/linalg.hpp>

#include <optional>
#include <vector>

namespace tep::core {

/// Observed trial: covariates, outcome and 0/1 assignment per unit.
struct TrialData {
    Matrix x;
    Vector y;
    std::vector<int> t;
    bool standardized = false;

    Eigen::Index rows() const { return y.size(); }
    void validate() const;
    /// Rows of arm `arm` (0 or 1), in original order.
    std::vector<Eigen::Index> arm_rows(int arm) const;
};

/// Variance of the idiosyncratic effect:
/// sigma1^2 + sigma0^2 - 2 rho01 sigma1 sigma0.
double tau_squared(double sigma0, double sigma1, double rho01);

struct AteEstimate {
    double delta_hat = 0.0;
    double se = 0.0;
    /// Unset when se == 0.
    std::optional<double> t;
    /// Satterthwaite degrees of freedom; unset when both arm variances vanish.
    std::optional<double> df;
};

/// Difference in arm means with the unpooled (Welch) standard error. Arm
/// variances use the sample convention (divide by n - 1).
AteEstimate ate_estimate(const TrialData& trial);

} // namespace tep::core
