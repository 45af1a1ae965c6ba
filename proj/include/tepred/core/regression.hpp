#pragma once

#include <tepred/core/linalg.hpp>

#include <optional>

namespace tep::core {

struct OlsFit {
    /// Intercept first, then one slope per column of the design.
    Vector coefficients;
    /// Weighted RSS / (positive-weight rows - columns - 1); NaN when that
    /// count is not positive.
    double residual_variance = 0.0;
    double rss = 0.0;
};

/// (Weighted) least squares of y on [1, x]. The intercept column is prepended
/// internally. Solved through the Cholesky factor of X'WX; a rank-deficient
/// cross-product raises ErrorKind::Singular and a negative weight raises
/// ErrorKind::InvalidWeight.
OlsFit ols_fit(const Matrix& x, const Vector& y, const std::optional<Vector>& weights = std::nullopt);

/// [1, x]
Matrix with_intercept(const Matrix& x);

} // namespace tep::core
