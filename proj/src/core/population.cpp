#include <tepred/core/population.hpp>
#include <tepred/core/specs.hpp>
#include <tepred/error.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace tep::core {

void DesignSpec::validate() const {
    require(n0 > 0 && n1 > 0, ErrorKind::Domain, "arm sizes must be positive");
    require(p >= 0, ErrorKind::Domain, "moderator count must be nonnegative");
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::Domain, "alpha must lie in (0,1)");
    require(power > 0.0 && power < 1.0, ErrorKind::Domain, "power must lie in (0,1)");
}

int DesignSpec::require_balanced(const char* op) const {
    validate();
    require(is_balanced(), ErrorKind::Domain,
            std::string(op) + " requires a balanced design (n0 == n1), got n0=" + std::to_string(n0) +
                ", n1=" + std::to_string(n1));
    return n0;
}

VarianceSpec VarianceSpec::from_raw(double sigma0_sq, double sigma1_sq, double rho01) {
    require(sigma0_sq > 0.0, ErrorKind::Domain, "sigma0^2 must be positive to scale tau*^2");
    require(sigma1_sq >= 0.0, ErrorKind::Domain, "sigma1^2 must be nonnegative");
    require(rho01 >= -1.0 && rho01 <= 1.0, ErrorKind::Domain, "rho01 must lie in [-1,1]");
    VarianceSpec v;
    v.sigma0_sq = sigma0_sq;
    v.sigma1_sq = sigma1_sq;
    v.rho01 = rho01;
    const double s0 = std::sqrt(sigma0_sq);
    const double s1 = std::sqrt(sigma1_sq);
    const double tau_sq = std::max(0.0, s1 * s1 + s0 * s0 - 2.0 * rho01 * s0 * s1);
    v.tau_star_sq = tau_sq / sigma0_sq;
    return v;
}

double VarianceSpec::tau_star() const { return std::sqrt(tau_star_sq); }

ConditionalVariances VarianceSpec::conditional() const {
    const double s0x_sq = sigma0_sq * r_minus_0_sq();
    const double tx_sq = tau_sq() * r_minus_tau_sq();
    const double cross = 2.0 * rho0eta * std::sqrt(s0x_sq) * std::sqrt(tx_sq);
    return {s0x_sq, s0x_sq + tx_sq + cross, tx_sq};
}

void VarianceSpec::validate() const {
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    auto corr = [](double v) { return v >= -1.0 && v <= 1.0; };
    require(sigma0_sq >= 0.0, ErrorKind::Domain, "sigma0^2 must be nonnegative");
    require(!sigma1_sq || *sigma1_sq >= 0.0, ErrorKind::Domain, "sigma1^2 must be nonnegative");
    require(!rho01 || corr(*rho01), ErrorKind::Domain, "rho01 must lie in [-1,1]");
    require(corr(rho0eta), ErrorKind::Domain, "rho0eta must lie in [-1,1]");
    require(unit(r0p_sq), ErrorKind::Domain, "R^2_0p must lie in [0,1]");
    require(unit(rtaup_sq), ErrorKind::Domain, "R^2_taup must lie in [0,1]");
    require(tau_star_sq >= 0.0, ErrorKind::Domain, "tau*^2 must be nonnegative");
}

void PopulationSummary::validate() const {
    require(sigma.rows() == mu.size() && sigma.cols() == mu.size(), ErrorKind::DimensionMismatch,
            "covariance is " + std::to_string(sigma.rows()) + "x" + std::to_string(sigma.cols()) +
                " but mean has dimension " + std::to_string(mu.size()));
    require(is_symmetric(sigma), ErrorKind::Domain, "covariance matrix is not symmetric");
    if (mu.size() > 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma, Eigen::EigenvaluesOnly);
        const double hi = std::max(0.0, eig.eigenvalues().maxCoeff());
        require(eig.eigenvalues().minCoeff() >= -1e-12 * std::max(1.0, hi), ErrorKind::Domain,
                "covariance matrix is not positive semi-definite");
    }
}

PopulationSummary unit_summary(Eigen::Index p, std::size_t n_units) {
    return {Vector::Zero(p), Matrix::Identity(p, p), n_units};
}

PopulationSummary summarize(const Matrix& data) {
    require(data.rows() >= 2, ErrorKind::InsufficientData,
            "summarize needs at least 2 rows, got " + std::to_string(data.rows()));
    const double n = static_cast<double>(data.rows());
    PopulationSummary out;
    out.mu = data.colwise().mean().transpose();
    const Matrix centered = data.rowwise() - out.mu.transpose();
    // population convention: divide by n
    out.sigma = (centered.transpose() * centered) / n;
    out.sigma = 0.5 * (out.sigma + out.sigma.transpose());
    out.n_units = static_cast<std::size_t>(data.rows());
    return out;
}

namespace {

Vector reference_scales(const PopulationSummary& ref) {
    Vector sd(ref.dim());
    for (Eigen::Index k = 0; k < ref.dim(); ++k) {
        const double v = ref.sigma(k, k);
        if (!(v > 0.0)) {
            fail(ErrorKind::DegenerateReference,
                 "reference variance of column " + std::to_string(k) + " is not positive");
        }
        sd(k) = std::sqrt(v);
    }
    return sd;
}

} // namespace

Matrix standardize(const Matrix& data, const PopulationSummary& ref) {
    require(data.cols() == ref.dim() && ref.sigma.rows() == ref.dim(), ErrorKind::DimensionMismatch,
            "data has " + std::to_string(data.cols()) + " columns but reference has dimension " +
                std::to_string(ref.dim()));
    const Vector sd = reference_scales(ref);
    Matrix out = data.rowwise() - ref.mu.transpose();
    for (Eigen::Index k = 0; k < out.cols(); ++k) {
        out.col(k) /= sd(k);
    }
    return out;
}

PopulationSummary standardize(const PopulationSummary& pop, const PopulationSummary& ref) {
    require(pop.dim() == ref.dim(), ErrorKind::DimensionMismatch, "population dimensions differ");
    const Vector sd = reference_scales(ref);
    const Vector inv = sd.cwiseInverse();
    PopulationSummary out;
    out.mu = (pop.mu - ref.mu).cwiseProduct(inv);
    out.sigma = inv.asDiagonal() * pop.sigma * inv.asDiagonal();
    out.n_units = pop.n_units;
    return out;
}

} // namespace tep::core
