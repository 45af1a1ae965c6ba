#include <tepred/core/distributions.hpp>
#include <tepred/error.hpp>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>

namespace tep::core {

namespace {

void check_prob(double prob) {
    require(prob > 0.0 && prob < 1.0, ErrorKind::Domain, "probability must lie strictly inside (0,1)");
}

} // namespace

double quantile_t(double prob, double df) {
    check_prob(prob);
    require(df > 0.0 && std::isfinite(df), ErrorKind::Domain, "degrees of freedom must be positive");
    if (prob == 0.5) {
        return 0.0;
    }
    return boost::math::quantile(boost::math::students_t_distribution<double>(df), prob);
}

double quantile_normal(double prob) {
    check_prob(prob);
    if (prob == 0.5) {
        return 0.0;
    }
    return boost::math::quantile(boost::math::normal_distribution<double>(), prob);
}

double cdf_normal(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace tep::core
