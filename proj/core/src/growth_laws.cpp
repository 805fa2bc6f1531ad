#include "verdoorn/growth_laws.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "verdoorn/errors.hpp"

namespace verdoorn {
namespace {

GrowthPanel slice_for(const GrowthPanel& panel, const Group& group) {
    auto slice = select_group(panel, group);
    if (slice.size() == 0) {
        throw Error(ErrorKind::UnknownGroup,
                    std::string(to_string(group.kind)) + " group '" + group.label + "' has no rows");
    }
    return slice;
}

std::vector<NamedCoefficient> name_coefficients(const OlsFit& fit, bool has_constant,
                                                std::span<const Variable> regressors, SignificanceLevels levels) {
    std::vector<NamedCoefficient> out;
    Eigen::Index j = 0;
    auto push = [&](std::string name) {
        out.push_back({std::move(name), fit.coefficients(j), fit.std_errors(j), fit.t_stats(j),
                       significance_flag(fit.t_stats(j), fit.df, levels)});
        ++j;
    };
    if (has_constant) push(std::string(kConstantName));
    for (auto v : regressors) push(std::string(to_string(v)));
    return out;
}

double coefficient(const FitResult& fit, std::string_view name) {
    const auto* c = fit.find(name);
    if (c == nullptr) throw Error(ErrorKind::WrongSpec, "fit has no '" + std::string(name) + "' coefficient");
    return c->estimate;
}

}  // namespace

std::string_view to_string(Equation eq) {
    switch (eq) {
        case Equation::verdoorn: return "VERDOORN";
        case Equation::kaldor: return "KALDOR";
        case Equation::rowthorn_p: return "ROWTHORN_P";
        case Equation::rowthorn_q: return "ROWTHORN_Q";
        case Equation::augmented: return "AUGMENTED";
    }
    return "?";
}

std::string_view display_name(Equation eq) {
    switch (eq) {
        case Equation::verdoorn: return "Verdoorn";
        case Equation::kaldor: return "Kaldor";
        case Equation::rowthorn_p: return "Rowthorn-p";
        case Equation::rowthorn_q: return "Rowthorn-q";
        case Equation::augmented: return "Augmented";
    }
    return "?";
}

std::optional<Equation> parse_equation(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    std::replace(lower.begin(), lower.end(), '-', '_');
    for (auto eq : kAllEquations) {
        std::string name(to_string(eq));
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
        if (lower == name) return eq;
    }
    return std::nullopt;
}

EquationForm form_of(Equation eq) {
    switch (eq) {
        case Equation::verdoorn: return {Variable::p, {Variable::q}};
        case Equation::kaldor: return {Variable::e, {Variable::q}};
        case Equation::rowthorn_p: return {Variable::p, {Variable::e}};
        case Equation::rowthorn_q: return {Variable::q, {Variable::e}};
        case Equation::augmented: return {Variable::p, {Variable::q, Variable::cq, Variable::fq, Variable::conc}};
    }
    throw Error(ErrorKind::WrongSpec, "unknown equation");
}

const NamedCoefficient* FitResult::find(std::string_view name) const {
    const auto it = std::find_if(coefficients.begin(), coefficients.end(),
                                 [&](const NamedCoefficient& c) { return c.name == name; });
    return it == coefficients.end() ? nullptr : &*it;
}

FitResult fit_model(const GrowthPanel& panel, const ModelSpec& spec, const FitOptions& options) {
    const auto slice = slice_for(panel, spec.group);
    const auto form = form_of(spec.equation);

    FitResult result;
    result.spec = spec;
    if (spec.estimator == EstimatorKind::dif) {
        result.fit = estimate_dif(slice, form.regressors, form.dependent);
        result.coefficients = name_coefficients(result.fit, false, form.regressors, options.levels);
    } else {
        auto gls = estimate_gls(slice, form.regressors, form.dependent, GlsOptions{options.theta});
        result.fit = std::move(gls.fit);
        result.components = gls.components;
        result.warnings = std::move(gls.warnings);
        result.coefficients = name_coefficients(result.fit, gls.has_constant, form.regressors, options.levels);
    }
    return result;
}

double IdentityReport::max_residual() const {
    double worst = 0.0;
    for (const auto& id : identities) worst = std::max(worst, std::fabs(id.residual));
    return worst;
}

IdentityReport identity_check(const GrowthPanel& panel, EstimatorKind estimator, const Group& group,
                              const FitOptions& options) {
    const auto slice = slice_for(panel, group);

    FitOptions shared = options;
    if (estimator == EstimatorKind::gls && !shared.theta) {
        const auto verdoorn = form_of(Equation::verdoorn);
        shared.theta = estimate_variance_components(slice, verdoorn.regressors, verdoorn.dependent).theta;
    }

    auto fit = [&](Equation eq) { return fit_model(slice, ModelSpec{eq, estimator, group}, shared); };
    const auto eq1 = fit(Equation::verdoorn);
    const auto eq2 = fit(Equation::kaldor);
    const auto eq3 = fit(Equation::rowthorn_p);
    const auto eq4 = fit(Equation::rowthorn_q);

    IdentityReport report;
    report.group = group;
    report.estimator = estimator;
    report.theta = estimator == EstimatorKind::gls ? shared.theta : std::nullopt;

    auto add = [&](std::string name, double lhs, double rhs) {
        report.identities.push_back({std::move(name), lhs, rhs, lhs - rhs});
    };
    const double b = coefficient(eq1, "q");
    const double d = coefficient(eq2, "q");
    const double eps1 = coefficient(eq3, "e");
    const double eps2 = coefficient(eq4, "e");
    add("d = 1 - b", d, 1.0 - b);
    if (eq1.find(kConstantName) != nullptr) {
        const double a = coefficient(eq1, kConstantName);
        const double c = coefficient(eq2, kConstantName);
        add("c = -a", c, -a);
        add("lambda2 = lambda1", coefficient(eq4, kConstantName), coefficient(eq3, kConstantName));
    }
    add("eps2 = 1 + eps1", eps2, 1.0 + eps1);
    return report;
}

std::string_view to_string(ReturnsVerdict verdict) {
    switch (verdict) {
        case ReturnsVerdict::increasing: return "INCREASING";
        case ReturnsVerdict::constant: return "CONSTANT";
        case ReturnsVerdict::decreasing: return "DECREASING";
        case ReturnsVerdict::out_of_bounds: return "OUT_OF_BOUNDS";
        case ReturnsVerdict::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

ReturnsClassification classify_verdoorn_coefficient(double b, Significance flag) {
    ReturnsClassification out;
    out.b = b;
    out.significant = flag == Significance::at_5pct;
    if (b == 0.0) {
        out.verdict = ReturnsVerdict::constant;
    } else if (!out.significant) {
        out.verdict = ReturnsVerdict::inconclusive;
    } else if (b >= 1.0) {
        out.verdict = ReturnsVerdict::out_of_bounds;
    } else if (b > 0.0) {
        out.verdict = ReturnsVerdict::increasing;
    } else {
        out.verdict = ReturnsVerdict::decreasing;
    }
    return out;
}

ReturnsClassification classify_returns(const FitResult& fit) {
    if (fit.spec.equation != Equation::verdoorn && fit.spec.equation != Equation::augmented) {
        throw Error(ErrorKind::WrongSpec, std::string(to_string(fit.spec.equation)) +
                                              " does not estimate a Verdoorn coefficient");
    }
    const auto* q = fit.find("q");
    if (q == nullptr) throw Error(ErrorKind::WrongSpec, "fit has no q coefficient");
    return classify_verdoorn_coefficient(q->estimate, q->flag);
}

}  // namespace verdoorn
