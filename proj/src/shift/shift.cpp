#include <tepred/planner.hpp>
#include <tepred/shift.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace tep::shift {

namespace {

void require_same_dim(const PopulationSummary& a, const PopulationSummary& b) {
    require(a.dim() == b.dim(), ErrorKind::DimensionMismatch,
            "population dimensions differ: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    require(a.sigma.rows() == a.dim() && b.sigma.rows() == b.dim(), ErrorKind::DimensionMismatch,
            "covariance shape does not match mean dimension");
}

} // namespace

std::vector<std::string> ShiftSpec::validate() const {
    require_same_dim(pop_a, pop_b);
    pop_a.validate();
    pop_b.validate();
    if (theta) {
        require(theta->rows() == pop_a.dim() && theta->cols() == pop_a.dim(), ErrorKind::DimensionMismatch,
                "theta must be p x p");
        require(core::is_symmetric(*theta, 1e-12), ErrorKind::Domain, "theta must be symmetric");
        if (theta->size() > 0) {
            Eigen::SelfAdjointEigenSolver<Matrix> eig(*theta, Eigen::EigenvaluesOnly);
            const double hi = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
            require(eig.eigenvalues().minCoeff() >= -1e-12 * hi, ErrorKind::Domain,
                    "theta must be positive semi-definite");
        }
    }
    require(!tau_b_sq || *tau_b_sq >= 0.0, ErrorKind::Domain, "tau_B^2 must be nonnegative");

    std::vector<std::string> warnings;
    const auto p = pop_a.dim();
    if (p > 0) {
        const bool centered = pop_a.mu.cwiseAbs().maxCoeff() <= 1e-8;
        const bool unit = (pop_a.sigma.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-8;
        if (!centered || !unit) {
            warnings.emplace_back("pop_a does not look standardized with respect to itself "
                                  "(means 0, variances 1 expected)");
        }
    }
    return warnings;
}

double mahalanobis(const PopulationSummary& pop_a, const PopulationSummary& pop_b) {
    require_same_dim(pop_a, pop_b);
    if (pop_a.dim() == 0) {
        return 0.0;
    }
    const core::SpdFactor factor(pop_a.sigma, "Sigma_A");
    return factor.quadratic_inverse(pop_b.mu - pop_a.mu);
}

double burg(const PopulationSummary& pop_a, const PopulationSummary& pop_b) {
    require_same_dim(pop_a, pop_b);
    if (pop_a.dim() == 0) {
        return 0.0;
    }
    const core::SpdFactor factor(pop_a.sigma, "Sigma_A");
    return factor.solve(pop_b.sigma).trace();
}

ShiftDiagnostics diagnostics(const PopulationSummary& pop_a, const PopulationSummary& pop_b) {
    ShiftDiagnostics d;
    d.mahalanobis_m = mahalanobis(pop_a, pop_b);
    d.burg_d = burg(pop_a, pop_b);
    d.combined = d.mahalanobis_m + d.burg_d;
    return d;
}

ShiftedMspe mspe_shifted(const DesignSpec& design, const VarianceSpec& var, const ShiftSpec& spec) {
    spec.validate();
    require(spec.pop_a.dim() == design.p, ErrorKind::DimensionMismatch,
            "population dimension " + std::to_string(spec.pop_a.dim()) + " differs from p=" +
                std::to_string(design.p));
    ShiftedMspe out;
    out.distance = diagnostics(spec.pop_a, spec.pop_b);
    out.estimation_term = planner::estimation_variance(design, var) * (1.0 + out.distance.combined);
    out.bias_term = spec.theta ? (*spec.theta * spec.pop_b.sigma).trace() : 0.0;
    out.tau_b_assumed_equal = !spec.tau_b_sq.has_value();
    out.tau_b_sq = spec.tau_b_sq.value_or(var.conditional().tau_sq);
    out.mspe = out.estimation_term + out.bias_term + out.tau_b_sq;
    return out;
}

AteShiftedMspe mspe_ate_shifted(const DesignSpec& design, const VarianceSpec& var, const PopulationSummary& pop_a,
                                const PopulationSummary& pop_b, const Vector& delta_b, std::optional<double> tau_b_sq) {
    require_same_dim(pop_a, pop_b);
    require(delta_b.size() == pop_a.dim(), ErrorKind::DimensionMismatch, "delta_B dimension differs from populations");
    const double est = planner::estimation_variance(design, var);
    const double tau_b = tau_b_sq.value_or(var.tau_sq());
    require(tau_b >= 0.0, ErrorKind::Domain, "tau_B^2 must be nonnegative");

    const Vector gap = pop_b.mu - pop_a.mu;
    const double proj = gap.dot(delta_b);
    AteShiftedMspe out;
    out.bias_term = proj * proj;
    out.bound_term = delta_b.dot(pop_a.sigma * delta_b) * mahalanobis(pop_a, pop_b);
    out.mspe = est + out.bias_term + tau_b;
    out.upper_bound = est + out.bound_term + tau_b;
    return out;
}

double sample_selection_bias(const Vector& mu_s, const Vector& mu_p, const Vector& delta) {
    require(mu_s.size() == mu_p.size() && mu_s.size() == delta.size(), ErrorKind::DimensionMismatch,
            "sample means, population means and contrast must share a dimension");
    return (mu_s - mu_p).dot(delta);
}

double spe_estimator_bias(const Vector& x, const ShiftSpec& spec, double tau_a_sq) {
    require(x.size() == spec.pop_a.dim(), ErrorKind::DimensionMismatch, "covariate vector dimension mismatch");
    const double quad = spec.theta ? x.dot(*spec.theta * x) : 0.0;
    const double tau_b = spec.tau_b_sq.value_or(tau_a_sq);
    return quad + (tau_b - tau_a_sq);
}

} // namespace tep::shift
