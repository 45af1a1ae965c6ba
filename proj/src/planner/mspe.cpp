#include <tepred/planner.hpp>

#include <cmath>
#include <string>

namespace tep::planner {

namespace {

void require_df(int n, int p) {
    require(n > p + 1, ErrorKind::InsufficientDf,
            "per-arm size n=" + std::to_string(n) + " must exceed p+1=" + std::to_string(p + 1));
}

} // namespace

double estimation_variance(const DesignSpec& design, const VarianceSpec& var) {
    design.validate();
    var.validate();
    const core::ConditionalVariances cv = var.conditional();
    return cv.sigma0_sq / design.n0 + cv.sigma1_sq / design.n1;
}

double mspe_moderator_conditional(double sigma0x_sq, double sigma1x_sq, double taux_sq, int n0, int n1, int p) {
    require(n0 > 0 && n1 > 0, ErrorKind::Domain, "arm sizes must be positive");
    require(sigma0x_sq >= 0.0 && sigma1x_sq >= 0.0 && taux_sq >= 0.0, ErrorKind::Domain,
            "variances must be nonnegative");
    return (sigma0x_sq / n0 + sigma1x_sq / n1) * (1.0 + p) + taux_sq;
}

double mspe_moderator(const DesignSpec& design, const VarianceSpec& var) {
    design.validate();
    var.validate();
    const int p = design.p;
    require_df(std::min(design.n0, design.n1), p);

    if (!design.is_balanced()) {
        const core::ConditionalVariances cv = var.conditional();
        return mspe_moderator_conditional(cv.sigma0_sq, cv.sigma1_sq, cv.tau_sq, design.n0, design.n1, p);
    }
    const double n = design.n0;
    const double r0 = std::sqrt(var.r_minus_0_sq());
    const double rt = std::sqrt(var.r_minus_tau_sq());
    const double ts = var.tau_star();
    const double bracket = var.r_minus_0_sq() + ts * var.rho0eta * rt * r0 +
                           var.tau_star_sq * var.r_minus_tau_sq() * (0.5 + n / (2.0 * (1.0 + p)));
    return 2.0 * var.sigma0_sq * (1.0 + p) / n * bracket;
}

double mspe_ancova(const DesignSpec& design, const VarianceSpec& var) {
    const double n = design.require_balanced("mspe_ancova");
    var.validate();
    const int p = design.p;
    require_df(design.n0, p);
    const double r0 = std::sqrt(var.r_minus_0_sq());
    const double ts = var.tau_star();
    const double bracket =
        var.r_minus_0_sq() + var.rho0eta * ts * r0 + var.tau_star_sq * (0.5 + 2.0 * n / (2.0 + p));
    return var.sigma0_sq * (2.0 + p) / (2.0 * n) * bracket;
}

double mspe_raw(const DesignSpec& design, const VarianceSpec& var) {
    const double n = design.require_balanced("mspe_raw");
    var.validate();
    const double ts = var.tau_star();
    return var.sigma0_sq / n * (1.0 + var.rho0eta * ts + var.tau_star_sq * (2.0 * n + 1.0) / 2.0);
}

double mspe(ModelChoice model, const DesignSpec& design, const VarianceSpec& var) {
    switch (model) {
    case ModelChoice::RawMeans: return mspe_raw(design, var);
    case ModelChoice::Ancova: return mspe_ancova(design, var);
    case ModelChoice::Moderator: return mspe_moderator(design, var);
    }
    fail(ErrorKind::Domain, "unknown model");
}

RtauQuadratic rtau_quadratic(const DesignSpec& design, const VarianceSpec& var) {
    const double n = design.require_balanced("min_rtau_sq");
    const double p = design.p;
    const double r0 = std::sqrt(var.r_minus_0_sq());
    const double ts = var.tau_star();
    // everything in units of sigma0^2
    VarianceSpec unit = var;
    unit.sigma0_sq = 1.0;
    const double n_mspe_ancova = n * mspe_ancova(design, unit);
    return {var.tau_star_sq * (1.0 + p + n), 2.0 * (1.0 + p) * var.rho0eta * ts * r0,
            2.0 * (1.0 + p) * var.r_minus_0_sq() - n_mspe_ancova};
}

RtauThreshold min_rtau_sq(const DesignSpec& design, const VarianceSpec& var) {
    design.require_balanced("min_rtau_sq");
    var.validate();
    require_df(design.n0, design.p);
    if (!(var.tau_star_sq > 0.0)) {
        return {1.0, true};
    }
    const RtauQuadratic q = rtau_quadratic(design, var);
    const double disc = q.b * q.b - 4.0 * q.a * q.c;
    if (disc < 0.0) {
        return {1.0, true};
    }
    const double root_hi = (-q.b + std::sqrt(disc)) / (2.0 * q.a);
    const double root_lo = (-q.b - std::sqrt(disc)) / (2.0 * q.a);
    // the quadratic opens upward: the moderator model wins for u in [root_lo, root_hi]
    if (root_hi < 0.0 || root_lo > 1.0) {
        return {1.0, true};
    }
    const double u = std::min(root_hi, 1.0);
    return {std::clamp(1.0 - u * u, 0.0, 1.0), false};
}

double spe_unit(const Vector& x_std, const DesignSpec& design, const VarianceSpec& var, const PopulationSummary& pop) {
    require(x_std.size() == design.p, ErrorKind::DimensionMismatch,
            "covariate vector has dimension " + std::to_string(x_std.size()) + ", design has p=" +
                std::to_string(design.p));
    require(pop.dim() == design.p, ErrorKind::DimensionMismatch, "population dimension differs from p");
    double leverage = 0.0;
    if (design.p > 0) {
        const core::SpdFactor factor(pop.sigma, "population covariance");
        leverage = factor.quadratic_inverse(x_std);
    }
    const core::ConditionalVariances cv = var.conditional();
    return estimation_variance(design, var) * (1.0 + leverage) + cv.tau_sq;
}

double width_reduction(double mspe_small, double mspe_large) {
    require(mspe_large > 0.0 && mspe_small >= 0.0, ErrorKind::Domain, "MSPE values must be positive");
    return 1.0 - std::sqrt(mspe_small / mspe_large);
}

double round_half_away(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

} // namespace tep::planner
