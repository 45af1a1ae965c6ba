#include <tepred/core/regression.hpp>
#include <tepred/error.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace tep::core {

Matrix with_intercept(const Matrix& x) {
    Matrix design(x.rows(), x.cols() + 1);
    design.col(0).setOnes();
    design.rightCols(x.cols()) = x;
    return design;
}

OlsFit ols_fit(const Matrix& x, const Vector& y, const std::optional<Vector>& weights) {
    require(x.rows() == y.size(), ErrorKind::DimensionMismatch,
            "design has " + std::to_string(x.rows()) + " rows but outcome has " + std::to_string(y.size()));
    require(x.rows() >= x.cols() + 1, ErrorKind::InsufficientDf,
            "least squares needs at least " + std::to_string(x.cols() + 1) + " rows, got " +
                std::to_string(x.rows()));
    if (weights) {
        require(weights->size() == y.size(), ErrorKind::DimensionMismatch, "weight vector length differs from rows");
        for (Eigen::Index i = 0; i < weights->size(); ++i) {
            if (!((*weights)(i) >= 0.0) || !std::isfinite((*weights)(i))) {
                fail(ErrorKind::InvalidWeight, "weight at row " + std::to_string(i) + " is negative or not finite");
            }
        }
    }

    const Matrix design = with_intercept(x);
    Matrix xtwx;
    Vector xtwy;
    if (weights) {
        const Matrix wx = weights->asDiagonal() * design;
        xtwx = design.transpose() * wx;
        xtwy = wx.transpose() * y;
    } else {
        xtwx = design.transpose() * design;
        xtwy = design.transpose() * y;
    }
    xtwx = 0.5 * (xtwx + xtwx.transpose());

    const SpdFactor factor(xtwx, "design cross-product");
    OlsFit fit;
    fit.coefficients = factor.solve(xtwy);
    const Vector resid = y - design * fit.coefficients;
    fit.rss = weights ? resid.cwiseAbs2().dot(*weights) : resid.squaredNorm();
    // Zero-weight rows carry no information, so they do not earn degrees of freedom.
    const auto used = weights ? static_cast<Eigen::Index>((weights->array() > 0.0).count()) : x.rows();
    const auto df = used - x.cols() - 1;
    fit.residual_variance = df > 0 ? fit.rss / static_cast<double>(df) : std::numeric_limits<double>::quiet_NaN();
    return fit;
}

} // namespace tep::core
