#pragma once

#include <tepred/core/effects.hpp>
#include <tepred/core/linalg.hpp>

#include <optional>
#include <string_view>

namespace tep::core {

enum class ModelChoice {
    RawMeans, // difference in arm means, no covariates
    Ancova,   // one equation, common slopes, additive treatment
    Moderator // separate per-arm regressions
};

std::string_view to_string(ModelChoice m) noexcept;
std::optional<ModelChoice> parse_model(std::string_view name) noexcept;

/// Fitted per-arm intercepts and slopes. For Ancova both arms share the slope
/// vector, so every unit receives the same predicted effect.
struct PredictionModel {
    ModelChoice model = ModelChoice::Moderator;
    double intercept0 = 0.0;
    double intercept1 = 0.0;
    Vector beta0;
    Vector beta1;
    double resid_var0 = 0.0;
    double resid_var1 = 0.0;

    double ate() const { return intercept1 - intercept0; }
    /// beta1 - beta0 (the moderator contrast).
    Vector delta() const;
    double predict(const Vector& x) const;
    Vector predict(const Matrix& x) const;
};

/// Fits `model` to the trial with optional nonnegative per-row weights.
/// RawMeans ignores the covariates; Ancova regresses y on [1, t, x].
PredictionModel fit_prediction_model(const TrialData& trial, ModelChoice model,
                                     const std::optional<Vector>& weights = std::nullopt);

} // namespace tep::core
