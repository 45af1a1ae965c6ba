#include <tepred/core/effects.hpp>
#include <tepred/error.hpp>

#include <cmath>
#include <string>

namespace tep::core {

void TrialData::validate() const {
    require(x.rows() == y.size() && static_cast<Eigen::Index>(t.size()) == y.size(), ErrorKind::DimensionMismatch,
            "trial rows disagree: x=" + std::to_string(x.rows()) + ", y=" + std::to_string(y.size()) +
                ", t=" + std::to_string(t.size()));
    bool seen[2] = {false, false};
    for (std::size_t i = 0; i < t.size(); ++i) {
        require(t[i] == 0 || t[i] == 1, ErrorKind::Domain, "assignment at row " + std::to_string(i) + " is not 0/1");
        seen[t[i]] = true;
    }
    require(seen[0] && seen[1], ErrorKind::InsufficientData, "each arm must contain at least one unit");
}

std::vector<Eigen::Index> TrialData::arm_rows(int arm) const {
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == arm) {
            rows.push_back(static_cast<Eigen::Index>(i));
        }
    }
    return rows;
}

double tau_squared(double sigma0, double sigma1, double rho01) {
    require(sigma0 >= 0.0 && sigma1 >= 0.0, ErrorKind::Domain, "standard deviations must be nonnegative");
    require(rho01 >= -1.0 && rho01 <= 1.0, ErrorKind::Domain, "rho01 must lie in [-1,1]");
    // (s1 - s0)^2 + 2 s0 s1 (1 - rho) keeps the perfectly correlated case exactly zero
    const double diff = sigma1 - sigma0;
    return diff * diff + 2.0 * sigma0 * sigma1 * (1.0 - rho01);
}

namespace {

struct ArmMoments {
    double mean = 0.0;
    double var = 0.0; // n - 1 convention
    double n = 0.0;
};

ArmMoments arm_moments(const TrialData& trial, int arm) {
    ArmMoments m;
    for (Eigen::Index i = 0; i < trial.rows(); ++i) {
        if (trial.t[static_cast<std::size_t>(i)] == arm) {
            m.mean += trial.y(i);
            m.n += 1.0;
        }
    }
    require(m.n >= 2.0, ErrorKind::InsufficientData,
            "arm " + std::to_string(arm) + " has fewer than 2 units");
    m.mean /= m.n;
    for (Eigen::Index i = 0; i < trial.rows(); ++i) {
        if (trial.t[static_cast<std::size_t>(i)] == arm) {
            const double d = trial.y(i) - m.mean;
            m.var += d * d;
        }
    }
    m.var /= (m.n - 1.0);
    return m;
}

} // namespace

AteEstimate ate_estimate(const TrialData& trial) {
    require(static_cast<Eigen::Index>(trial.t.size()) == trial.y.size(), ErrorKind::DimensionMismatch,
            "assignment and outcome lengths differ");
    const ArmMoments c = arm_moments(trial, 0);
    const ArmMoments tr = arm_moments(trial, 1);

    AteEstimate out;
    out.delta_hat = tr.mean - c.mean;
    const double v0 = c.var / c.n;
    const double v1 = tr.var / tr.n;
    out.se = std::sqrt(v0 + v1);
    if (out.se > 0.0) {
        out.t = out.delta_hat / out.se;
        const double denom = v0 * v0 / (c.n - 1.0) + v1 * v1 / (tr.n - 1.0);
        out.df = (v0 + v1) * (v0 + v1) / denom;
    }
    return out;
}

} // namespace tep::core
