#include <tepred/weights.hpp>

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <string>

namespace tep::weights {

namespace {

// Beyond this linear predictor the fitted probability is 1 to double precision.
constexpr double kSaturatedEta = 30.0;

double logistic(double eta) {
    if (eta >= 0.0) {
        return 1.0 / (1.0 + std::exp(-eta));
    }
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

// log(1 + exp(eta)) without overflow.
double softplus(double eta) { return eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta)); }

double log_likelihood(const Matrix& design, const Vector& z, const Vector& beta) {
    const Vector eta = design * beta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        ll += z(i) * eta(i) - softplus(eta(i));
    }
    return ll;
}

std::string column_name(const SelectionOptions& opt, Eigen::Index k) {
    const auto idx = static_cast<std::size_t>(k);
    if (idx < opt.names.size()) {
        return opt.names[idx];
    }
    return "x" + std::to_string(k + 1);
}

void check_columns(const Matrix& pooled, const Matrix& x_a, const Matrix& x_b, const SelectionOptions& opt) {
    for (Eigen::Index k = 0; k < pooled.cols(); ++k) {
        const double lo = pooled.col(k).minCoeff();
        const double hi = pooled.col(k).maxCoeff();
        require(hi > lo, ErrorKind::Singular, "covariate '" + column_name(opt, k) + "' is constant across both populations");
        const bool a_below = x_a.col(k).maxCoeff() < x_b.col(k).minCoeff();
        const bool b_below = x_b.col(k).maxCoeff() < x_a.col(k).minCoeff();
        if (a_below || b_below) {
            fail(ErrorKind::Separation,
                 "covariate '" + column_name(opt, k) + "' perfectly separates the populations; coefficients diverge");
        }
    }
}

} // namespace

Vector SelectionModel::prob_in_a(const Matrix& x) const {
    require(x.cols() + 1 == coefficients.size(), ErrorKind::DimensionMismatch, "covariate width differs from fitted model");
    const Vector eta = core::with_intercept(x) * coefficients;
    return eta.unaryExpr([](double e) { return logistic(e); });
}

SelectionModel fit_selection(const Matrix& x_a, const Matrix& x_b, const SelectionOptions& opt) {
    require(x_a.rows() > 0 && x_b.rows() > 0, ErrorKind::InsufficientData, "both populations must be nonempty");
    require(x_a.cols() == x_b.cols(), ErrorKind::DimensionMismatch, "populations have different covariate counts");
    require(x_a.allFinite() && x_b.allFinite(), ErrorKind::Domain, "covariates must be finite");

    Matrix pooled(x_a.rows() + x_b.rows(), x_a.cols());
    pooled << x_a, x_b;
    check_columns(pooled, x_a, x_b, opt);

    const Matrix design = core::with_intercept(pooled);
    Vector z = Vector::Zero(pooled.rows());
    z.head(x_a.rows()).setOnes();

    SelectionModel model;
    model.coefficients = Vector::Zero(design.cols());
    const double share = static_cast<double>(x_a.rows()) / static_cast<double>(pooled.rows());
    model.coefficients(0) = std::log(share / (1.0 - share));

    double ll = log_likelihood(design, z, model.coefficients);
    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        const Vector eta = design * model.coefficients;
        const Vector prob = eta.unaryExpr([](double e) { return logistic(e); });
        const Vector score = design.transpose() * (z - prob);
        model.score_max = score.cwiseAbs().maxCoeff();
        model.iterations = iter - 1;
        if (model.score_max < opt.tolerance) {
            model.converged = true;
            return model;
        }
        if (eta.cwiseAbs().maxCoeff() > kSaturatedEta) {
            Eigen::Index worst = 0;
            Vector scaled(pooled.cols());
            for (Eigen::Index k = 0; k < pooled.cols(); ++k) {
                const double sd = std::sqrt((pooled.col(k).array() - pooled.col(k).mean()).square().mean());
                scaled(k) = std::abs(model.coefficients(k + 1)) * sd;
            }
            if (scaled.size() > 0) {
                scaled.maxCoeff(&worst);
            }
            fail(ErrorKind::Separation,
                 "selection model coefficients diverge; covariate '" + column_name(opt, worst) +
                     "' (quasi-)separates the populations");
        }

        const Vector curvature = prob.array() * (1.0 - prob.array());
        Matrix info = design.transpose() * curvature.asDiagonal() * design;
        info = 0.5 * (info + info.transpose());
        const Eigen::LDLT<Matrix> ldlt(info);
        require(ldlt.info() == Eigen::Success && ldlt.isPositive(), ErrorKind::Singular,
                "selection model information matrix is singular");
        const Vector step = ldlt.solve(score);

        double scale = 1.0;
        Vector proposal = model.coefficients + step;
        double next_ll = log_likelihood(design, z, proposal);
        for (int halving = 0; halving < 30 && next_ll < ll; ++halving) {
            scale *= 0.5;
            proposal = model.coefficients + scale * step;
            next_ll = log_likelihood(design, z, proposal);
        }
        model.coefficients = proposal;
        ll = std::max(ll, next_ll);
    }

    const Vector prob = (design * model.coefficients).unaryExpr([](double e) { return logistic(e); });
    model.score_max = (design.transpose() * (z - prob)).cwiseAbs().maxCoeff();
    model.iterations = opt.max_iterations;
    model.converged = model.score_max < opt.tolerance;
    require(model.converged, ErrorKind::Convergence,
            "selection model did not converge in " + std::to_string(opt.max_iterations) +
                " iterations (max score " + std::to_string(model.score_max) + ")");
    return model;
}

} // namespace tep::weights
