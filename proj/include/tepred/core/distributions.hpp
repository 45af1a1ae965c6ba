#pragma once

namespace tep::core {

/// Inverse CDF of Student's t with `df` degrees of freedom (df > 0, real).
double quantile_t(double prob, double df);

/// Inverse CDF of the standard normal.
double quantile_normal(double prob);

double cdf_normal(double x);

} // namespace tep::core
