#pragma once

#include <tepred/core/linalg.hpp>

#include <cstddef>

namespace tep::core {

/// Mean vector and covariance of a covariate population. Covariance uses the
/// population convention (divide by n_units).
struct PopulationSummary {
    Vector mu;
    Matrix sigma;
    std::size_t n_units = 0;

    Eigen::Index dim() const { return mu.size(); }
    /// Checks shape, symmetry (1e-12 relative) and positive semi-definiteness.
    void validate() const;
};

/// Population with zero means and the given covariance (identity by default).
PopulationSummary unit_summary(Eigen::Index p, std::size_t n_units = 0);

/// Column means and population covariance. Needs at least 2 rows.
PopulationSummary summarize(const Matrix& data);

/// (x - mu_k) / sqrt(sigma_kk) column by column.
Matrix standardize(const Matrix& data, const PopulationSummary& ref);

/// Re-expresses `pop` in the coordinates obtained by standardizing with
/// respect to `ref`.
PopulationSummary standardize(const PopulationSummary& pop, const PopulationSummary& ref);

} // namespace tep::core
