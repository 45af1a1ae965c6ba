#pragma once

#include <tepred/oracle.hpp>

namespace tep::oracle::detail {

/// n x p standard-normal draws. When `matched`, the columns are shifted and
/// rotated so the sample mean is exactly `mean` and the population-convention
/// sample covariance exactly `cov`; otherwise they are plain draws from
/// N(mean, cov).
Matrix gaussian_block(Eigen::Index n, const Vector& mean, const Matrix& cov, bool matched, Rng& rng);

/// Fills outcomes for covariates `x` under `world`: both potential outcomes
/// and the unit effects.
Population outcomes_for(const WorldSpec& world, Matrix x, Rng& rng);

/// One simulated trial from a world with N(0, I) covariates.
core::TrialData simulate_trial(const WorldSpec& world, int n0, int n1, TrialDesign design, Rng& rng);

/// Target population with N(mean, cov) covariates.
Population simulate_target(const WorldSpec& world, int m, const Vector& mean, const Matrix& cov, TrialDesign design,
                           Rng& rng);

} // namespace tep::oracle::detail
