#include <tepred/planner.hpp>

#include <cmath>
#include <string>

namespace tep::planner {

PredictionInterval prediction_interval(double delta_hat, double spe, double alpha, IntervalQuantile quantile,
                                       double t_df) {
    require(spe >= 0.0, ErrorKind::Domain, "squared prediction error must be nonnegative");
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::Domain, "alpha must lie in (0,1)");
    const double q = quantile == IntervalQuantile::Normal ? core::quantile_normal(1.0 - alpha / 2.0)
                                                          : core::quantile_t(1.0 - alpha / 2.0, t_df);
    const double half = q * std::sqrt(spe);
    return {delta_hat - half, delta_hat + half, 2.0 * half};
}

double mdes_multiplier(int total_n, int p, double alpha, double power, Sidedness sides) {
    const int df = total_n - p - 2;
    require(df > 0, ErrorKind::InsufficientDf,
            "MDES needs N - p - 2 > 0, got " + std::to_string(df));
    require(alpha > 0.0 && alpha < 1.0 && power > 0.0 && power < 1.0, ErrorKind::Domain,
            "alpha and power must lie in (0,1)");
    const double crit = sides == Sidedness::TwoSided ? 1.0 - alpha / 2.0 : 1.0 - alpha;
    return core::quantile_t(crit, df) + core::quantile_t(power, df);
}

double mdes(int total_n, int p, double rp_sq, double pi_treat, double alpha, double power, Sidedness sides) {
    require(rp_sq >= 0.0 && rp_sq <= 1.0, ErrorKind::Domain, "R^2 must lie in [0,1]");
    require(pi_treat > 0.0 && pi_treat < 1.0, ErrorKind::Domain, "treatment proportion must lie in (0,1)");
    const double m = mdes_multiplier(total_n, p, alpha, power, sides);
    return m * std::sqrt((1.0 - rp_sq) / (total_n * pi_treat * (1.0 - pi_treat)));
}

} // namespace tep::planner
