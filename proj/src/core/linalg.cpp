#include <tepred/core/linalg.hpp>
#include <tepred/error.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>

namespace tep {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::InsufficientDf: return "insufficient-df";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::DegenerateReference: return "degenerate-reference";
    case ErrorKind::InvalidWeight: return "invalid-weight";
    case ErrorKind::DegenerateWeights: return "degenerate-weights";
    case ErrorKind::DegeneratePropensity: return "degenerate-propensity";
    case ErrorKind::Separation: return "perfect-separation";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Usage: return "usage";
    }
    return "unknown";
}

namespace core {

SpdFactor::SpdFactor(const Matrix& m, const std::string& what) {
    require(m.rows() == m.cols(), ErrorKind::DimensionMismatch, what + " is not square");
    require(m.rows() > 0, ErrorKind::DimensionMismatch, what + " is empty");
    require(m.allFinite(), ErrorKind::Domain, what + " has non-finite entries");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(hi > 0.0) || !(lo > kPdRelativeTolerance * hi)) {
        fail(ErrorKind::Singular, what + " is not positive definite (eigenvalue range [" +
                                      std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }
    llt_.compute(m);
    if (llt_.info() != Eigen::Success) {
        fail(ErrorKind::Singular, what + " failed Cholesky factorization");
    }
}

Matrix SpdFactor::inverse() const {
    return llt_.solve(Matrix::Identity(dim(), dim()));
}

double SpdFactor::quadratic_inverse(const Vector& b) const {
    const Vector half = llt_.matrixL().solve(b);
    return half.squaredNorm();
}

bool is_symmetric(const Matrix& m, double rel_tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

} // namespace core
} // namespace tep
