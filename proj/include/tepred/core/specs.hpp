#pragma once

#include <optional>

namespace tep::core {

/// Arm sizes, moderator count and error rates.
struct DesignSpec {
    int n0 = 0;
    int n1 = 0;
    int p = 0;
    double alpha = 0.05;
    double power = 0.80;

    static DesignSpec balanced(int n, int p, double alpha = 0.05, double power = 0.80) {
        return DesignSpec{n, n, p, alpha, power};
    }

    int total() const { return n0 + n1; }
    double pi_treat() const { return static_cast<double>(n1) / static_cast<double>(total()); }
    bool is_balanced() const { return n0 == n1; }

    void validate() const;
    /// Throws ErrorKind::Domain unless n0 == n1; `op` names the caller.
    int require_balanced(const char* op) const;
};

/// Residual variances of the potential-outcome regressions and of the
/// idiosyncratic effect, all conditional on the moderators.
struct ConditionalVariances {
    double sigma0_sq; // sigma^2_{0|x}
    double sigma1_sq; // sigma^2_{1|x}
    double tau_sq;    // tau^2_{A|x}
};

/// Variance structure of the potential outcomes. Effect-size units: every
/// planning formula is proportional to sigma0_sq.
struct VarianceSpec {
    double sigma0_sq = 1.0;
    std::optional<double> sigma1_sq;
    std::optional<double> rho01;
    double rho0eta = 0.0;
    double r0p_sq = 0.0;
    double rtaup_sq = 0.0;
    double tau_star_sq = 0.0;

    /// Builds a spec from the raw arm variances and the potential-outcome
    /// correlation; tau_star_sq is derived as tau^2 / sigma0^2.
    static VarianceSpec from_raw(double sigma0_sq, double sigma1_sq, double rho01);

    double tau_sq() const { return tau_star_sq * sigma0_sq; }
    double tau_star() const;
    double r_minus_0_sq() const { return 1.0 - r0p_sq; }
    double r_minus_tau_sq() const { return 1.0 - rtaup_sq; }

    /// Conditional variances implied by
    /// V[Y(1) | x] = sigma0|x^2 + tau|x^2 + 2 rho0eta sigma0|x tau|x.
    ConditionalVariances conditional() const;

    void validate() const;
};

} // namespace tep::core
