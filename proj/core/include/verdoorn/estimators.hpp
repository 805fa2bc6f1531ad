#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "verdoorn/core_stats.hpp"
#include "verdoorn/panel_model.hpp"

namespace verdoorn {

enum class EstimatorKind { dif, gls };

std::string_view to_string(EstimatorKind kind);

struct VarianceComponents {
    double sigma2_idio = 0.0;
    double sigma2_entity = 0.0;
    double theta = 0.0;
};

/// theta = 1 − sqrt(σ²_idio / (σ²_idio + T·σ²_entity)); 0 when both variances vanish.
double quasi_demeaning_weight(double sigma2_idio, double sigma2_entity, std::size_t intervals);

/// Fixed effects through first differences of the growth panel, no intercept.
OlsFit estimate_dif(const GrowthPanel& panel, std::span<const Variable> regressors, Variable dependent);

/// Swamy–Arora two-step: σ²_idio from the within regression (df N·T − N − K),
/// σ²_entity from the between regression minus σ²_idio/T, clamped at zero.
/// When the between regression has no residual df (N ≤ K + 1, common with five
/// regions and the augmented equation) or is singular, the between variance
/// comes from the entity means of pooled-OLS residuals instead.
VarianceComponents estimate_variance_components(const GrowthPanel& panel, std::span<const Variable> regressors,
                                                Variable dependent, std::vector<std::string>* warnings = nullptr);

struct GlsOptions {
    /// Diagnostic override of the quasi-demeaning weight, in [0, 1].
    std::optional<double> theta;
};

struct GlsFit {
    OlsFit fit;
    VarianceComponents components;
    /// False only when theta = 1, where the transformed intercept vanishes and
    /// the fit reduces to the within estimator.
    bool has_constant = true;
    std::vector<std::string> warnings;
};

/// Random-effects GLS by quasi-demeaning every variable with theta and fitting
/// an intercept column of 1 − theta.
GlsFit estimate_gls(const GrowthPanel& panel, std::span<const Variable> regressors, Variable dependent,
                    const GlsOptions& options = {});

}  // namespace verdoorn
