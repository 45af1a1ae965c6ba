#include "kernels.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace tep::oracle::detail {

Matrix gaussian_block(Eigen::Index n, const Vector& mean, const Matrix& cov, bool matched, Rng& rng) {
    const Eigen::Index p = mean.size();
    std::normal_distribution<double> normal;
    Matrix z(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < p; ++k) {
            z(i, k) = normal(rng);
        }
    }
    if (p == 0) {
        return z;
    }
    if (matched) {
        require(n > p, ErrorKind::InsufficientData,
                "moment matching needs more than " + std::to_string(p) + " units, got " + std::to_string(n));
        z.rowwise() -= z.colwise().mean();
        const Matrix sample = z.transpose() * z / static_cast<double>(n);
        const Eigen::LLT<Matrix> llt(sample);
        require(llt.info() == Eigen::Success, ErrorKind::Singular, "sample covariance is singular");
        // z * L^{-T} has identity sample covariance.
        z = llt.matrixL().solve(z.transpose()).transpose();
    }
    const core::SpdFactor target(cov, "covariate covariance");
    Matrix x = z * target.lower().transpose();
    x.rowwise() += mean.transpose();
    return x;
}

Population outcomes_for(const WorldSpec& world, Matrix x, Rng& rng) {
    std::normal_distribution<double> normal;
    const double partner = std::sqrt(std::max(0.0, 1.0 - world.rho01 * world.rho01));
    Population pop;
    const Eigen::Index n = x.rows();
    pop.y0.resize(n);
    pop.y1.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double z0 = normal(rng);
        const double z1 = normal(rng);
        const double lin0 = world.p > 0 ? x.row(i).dot(world.beta0) : 0.0;
        const double lin1 = world.p > 0 ? x.row(i).dot(world.beta1) : 0.0;
        pop.y0(i) = world.mu0 + lin0 + world.sigma0 * z0;
        pop.y1(i) = world.mu1 + lin1 + world.sigma1 * (world.rho01 * z0 + partner * z1);
    }
    pop.delta = pop.y1 - pop.y0;
    pop.x = std::move(x);
    return pop;
}

core::TrialData simulate_trial(const WorldSpec& world, int n0, int n1, TrialDesign design, Rng& rng) {
    const Vector zero = Vector::Zero(world.p);
    const Matrix eye = Matrix::Identity(world.p, world.p);
    const bool matched = design == TrialDesign::MomentMatched;

    core::TrialData trial;
    trial.x.resize(n0 + n1, world.p);
    trial.y.resize(n0 + n1);
    trial.t.assign(static_cast<std::size_t>(n0 + n1), 0);
    Eigen::Index row = 0;
    for (int arm = 0; arm < 2; ++arm) {
        const int n = arm == 0 ? n0 : n1;
        const Population units = outcomes_for(world, gaussian_block(n, zero, eye, matched, rng), rng);
        trial.x.middleRows(row, n) = units.x;
        trial.y.segment(row, n) = arm == 0 ? units.y0 : units.y1;
        for (int i = 0; i < n; ++i) {
            trial.t[static_cast<std::size_t>(row + i)] = arm;
        }
        row += n;
    }
    trial.standardized = true;
    return trial;
}

Population simulate_target(const WorldSpec& world, int m, const Vector& mean, const Matrix& cov, TrialDesign design,
                           Rng& rng) {
    return outcomes_for(world, gaussian_block(m, mean, cov, design == TrialDesign::MomentMatched, rng), rng);
}

} // namespace tep::oracle::detail
