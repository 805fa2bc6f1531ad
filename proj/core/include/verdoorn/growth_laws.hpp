#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "verdoorn/core_stats.hpp"
#include "verdoorn/estimators.hpp"
#include "verdoorn/panel_model.hpp"

namespace verdoorn {

/// The growth-law regressions:
///   verdoorn    p on q
///   kaldor      e on q
///   rowthorn_p  p on e
///   rowthorn_q  q on e
///   augmented   p on q, cq, fq, conc
enum class Equation { verdoorn, kaldor, rowthorn_p, rowthorn_q, augmented };

inline constexpr Equation kAllEquations[] = {Equation::verdoorn, Equation::kaldor, Equation::rowthorn_p,
                                             Equation::rowthorn_q, Equation::augmented};

std::string_view to_string(Equation eq);
/// Row label used in rendered tables.
std::string_view display_name(Equation eq);
std::optional<Equation> parse_equation(std::string_view text);

struct EquationForm {
    Variable dependent;
    std::vector<Variable> regressors;
};

EquationForm form_of(Equation eq);

struct ModelSpec {
    Equation equation = Equation::verdoorn;
    EstimatorKind estimator = EstimatorKind::dif;
    Group group;
};

/// Coefficient names: "const" for the intercept, otherwise the variable name.
inline constexpr std::string_view kConstantName = "const";

struct NamedCoefficient {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    Significance flag = Significance::none;
};

struct FitResult {
    ModelSpec spec;
    OlsFit fit;
    std::vector<NamedCoefficient> coefficients;
    std::optional<VarianceComponents> components;
    std::vector<std::string> warnings;

    const NamedCoefficient* find(std::string_view name) const;
};

struct FitOptions {
    SignificanceLevels levels;
    /// GLS only: fix the quasi-demeaning weight instead of estimating it.
    std::optional<double> theta;
};

/// Fits one specification on the spec's group slice of the panel.
FitResult fit_model(const GrowthPanel& panel, const ModelSpec& spec, const FitOptions& options = {});

struct IdentityResidual {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

struct IdentityReport {
    Group group;
    EstimatorKind estimator = EstimatorKind::dif;
    std::optional<double> theta;
    std::vector<IdentityResidual> identities;

    double max_residual() const;
    bool holds(double tolerance = 1e-10) const { return max_residual() < tolerance; }
};

/// Fits the Verdoorn, Kaldor and both Rowthorn equations on one shared
/// transformed sample and reports d = 1 − b, c = −a, λ₂ = λ₁, ε₂ = 1 + ε₁.
/// For GLS, theta is estimated once from the Verdoorn equation and reused.
/// The intercept identities are skipped when the transform has no intercept.
IdentityReport identity_check(const GrowthPanel& panel, EstimatorKind estimator, const Group& group,
                              const FitOptions& options = {});

enum class ReturnsVerdict { increasing, constant, decreasing, out_of_bounds, inconclusive };

std::string_view to_string(ReturnsVerdict verdict);

struct ReturnsClassification {
    ReturnsVerdict verdict = ReturnsVerdict::inconclusive;
    double b = 0.0;
    bool significant = false;
};

/// Verdict from a Verdoorn coefficient and its flag. Only the 5% flag counts
/// as significant; b = 0 exactly is constant returns.
ReturnsClassification classify_verdoorn_coefficient(double b, Significance flag);

/// Reads the q coefficient of a Verdoorn or augmented fit.
ReturnsClassification classify_returns(const FitResult& fit);

}  // namespace verdoorn
