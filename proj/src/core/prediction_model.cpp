#include <tepred/core/prediction_model.hpp>
#include <tepred/core/regression.hpp>
#include <tepred/error.hpp>

#include <string>

namespace tep::core {

std::string_view to_string(ModelChoice m) noexcept {
    switch (m) {
    case ModelChoice::RawMeans: return "raw";
    case ModelChoice::Ancova: return "ancova";
    case ModelChoice::Moderator: return "moderator";
    }
    return "unknown";
}

std::optional<ModelChoice> parse_model(std::string_view name) noexcept {
    if (name == "raw" || name == "rawmeans" || name == "raw-means") {
        return ModelChoice::RawMeans;
    }
    if (name == "ancova" || name == "anova") {
        return ModelChoice::Ancova;
    }
    if (name == "moderator" || name == "mod") {
        return ModelChoice::Moderator;
    }
    return std::nullopt;
}

Vector PredictionModel::delta() const { return beta1 - beta0; }

double PredictionModel::predict(const Vector& x) const {
    if (model == ModelChoice::Moderator) {
        require(x.size() == beta0.size(), ErrorKind::DimensionMismatch, "covariate vector has wrong dimension");
        return ate() + x.dot(delta());
    }
    return ate();
}

Vector PredictionModel::predict(const Matrix& x) const {
    if (model == ModelChoice::Moderator) {
        require(x.cols() == beta0.size(), ErrorKind::DimensionMismatch, "covariate matrix has wrong width");
        return (x * delta()).array() + ate();
    }
    return Vector::Constant(x.rows(), ate());
}

namespace {

struct ArmSlice {
    Matrix x;
    Vector y;
    std::optional<Vector> w;
};

ArmSlice slice_arm(const TrialData& trial, int arm, const std::optional<Vector>& weights) {
    const auto rows = trial.arm_rows(arm);
    ArmSlice s{Matrix(static_cast<Eigen::Index>(rows.size()), trial.x.cols()),
               Vector(static_cast<Eigen::Index>(rows.size())), std::nullopt};
    if (weights) {
        s.w = Vector(static_cast<Eigen::Index>(rows.size()));
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto r = static_cast<Eigen::Index>(k);
        s.x.row(r) = trial.x.row(rows[k]);
        s.y(r) = trial.y(rows[k]);
        if (weights) {
            (*s.w)(r) = (*weights)(rows[k]);
        }
    }
    if (s.w) {
        require(s.w->sum() > 0.0, ErrorKind::DegenerateWeights,
                "arm " + std::to_string(arm) + " has zero total weight");
    }
    return s;
}

} // namespace

PredictionModel fit_prediction_model(const TrialData& trial, ModelChoice model, const std::optional<Vector>& weights) {
    trial.validate();
    if (weights) {
        require(weights->size() == trial.rows(), ErrorKind::DimensionMismatch, "weights not aligned to trial rows");
    }
    const auto p = trial.x.cols();
    PredictionModel out;
    out.model = model;

    switch (model) {
    case ModelChoice::RawMeans: {
        for (int arm = 0; arm < 2; ++arm) {
            const ArmSlice s = slice_arm(trial, arm, weights);
            const OlsFit fit = ols_fit(Matrix(s.y.size(), 0), s.y, s.w);
            (arm == 0 ? out.intercept0 : out.intercept1) = fit.coefficients(0);
            (arm == 0 ? out.resid_var0 : out.resid_var1) = fit.residual_variance;
        }
        out.beta0 = Vector::Zero(0);
        out.beta1 = Vector::Zero(0);
        break;
    }
    case ModelChoice::Ancova: {
        Matrix design(trial.rows(), p + 1);
        for (Eigen::Index i = 0; i < trial.rows(); ++i) {
            design(i, 0) = trial.t[static_cast<std::size_t>(i)];
        }
        design.rightCols(p) = trial.x;
        const OlsFit fit = ols_fit(design, trial.y, weights);
        out.intercept0 = fit.coefficients(0);
        out.intercept1 = fit.coefficients(0) + fit.coefficients(1);
        out.beta0 = fit.coefficients.tail(p);
        out.beta1 = out.beta0;
        out.resid_var0 = out.resid_var1 = fit.residual_variance;
        break;
    }
    case ModelChoice::Moderator: {
        for (int arm = 0; arm < 2; ++arm) {
            const ArmSlice s = slice_arm(trial, arm, weights);
            const OlsFit fit = ols_fit(s.x, s.y, s.w);
            (arm == 0 ? out.intercept0 : out.intercept1) = fit.coefficients(0);
            (arm == 0 ? out.beta0 : out.beta1) = fit.coefficients.tail(p);
            (arm == 0 ? out.resid_var0 : out.resid_var1) = fit.residual_variance;
        }
        break;
    }
    }
    return out;
}

} // namespace tep::core
