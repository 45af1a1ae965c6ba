#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <string>

namespace tep::core {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Smallest eigenvalue must exceed this fraction of the largest for a matrix to
/// count as positive definite.
inline constexpr double kPdRelativeTolerance = 1e-10;

/// Cholesky factor of a symmetric positive-definite matrix. Construction throws
/// ErrorKind::Singular (the message names `what`) when the input is not
/// numerically positive definite. There is no pseudo-inverse fallback.
class SpdFactor {
public:
    explicit SpdFactor(const Matrix& m, const std::string& what = "matrix");

    Eigen::Index dim() const { return llt_.rows(); }
    Vector solve(const Vector& b) const { return llt_.solve(b); }
    Matrix solve(const Matrix& b) const { return llt_.solve(b); }
    Matrix inverse() const;
    /// b' M^{-1} b
    double quadratic_inverse(const Vector& b) const;
    Matrix lower() const { return llt_.matrixL(); }

private:
    Eigen::LLT<Matrix> llt_;
};

bool is_symmetric(const Matrix& m, double rel_tol = 1e-12);

} // namespace tep::core
