#include "verdoorn/estimators.hpp"

#include <cmath>

#include "verdoorn/errors.hpp"

namespace verdoorn {
namespace {

Eigen::MatrixXd stack(const GrowthPanel& panel, std::span<const Variable> regressors) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(panel.size()), static_cast<Eigen::Index>(regressors.size()));
    for (std::size_t j = 0; j < regressors.size(); ++j) X.col(static_cast<Eigen::Index>(j)) = panel.column(regressors[j]);
    return X;
}

// Per-entity means of each column; rows are entities.
Eigen::MatrixXd entity_means(const Eigen::MatrixXd& data, std::size_t entities, std::size_t intervals) {
    const auto n = static_cast<Eigen::Index>(entities);
    const auto t = static_cast<Eigen::Index>(intervals);
    Eigen::MatrixXd means(n, data.cols());
    for (Eigen::Index i = 0; i < n; ++i) means.row(i) = data.middleRows(i * t, t).colwise().mean();
    return means;
}

Eigen::MatrixXd expand(const Eigen::MatrixXd& means, std::size_t intervals) {
    const auto t = static_cast<Eigen::Index>(intervals);
    Eigen::MatrixXd out(means.rows() * t, means.cols());
    for (Eigen::Index i = 0; i < means.rows(); ++i) out.middleRows(i * t, t).rowwise() = means.row(i);
    return out;
}

void check_panel(const GrowthPanel& panel, std::span<const Variable> regressors) {
    if (regressors.empty()) throw Error(ErrorKind::DimensionMismatch, "no regressors requested");
    if (panel.entity_count() < 2) {
        throw Error(ErrorKind::InsufficientObservations, "random effects need at least two entities");
    }
    if (panel.interval_count() < 2) {
        throw Error(ErrorKind::InsufficientIntervals, "random effects need at least two intervals per entity");
    }
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
    return kind == EstimatorKind::dif ? "DIF" : "GLS";
}

double quasi_demeaning_weight(double sigma2_idio, double sigma2_entity, std::size_t intervals) {
    const double total = sigma2_idio + static_cast<double>(intervals) * sigma2_entity;
    if (total <= 0.0) return 0.0;
    return 1.0 - std::sqrt(sigma2_idio / total);
}

OlsFit estimate_dif(const GrowthPanel& panel, std::span<const Variable> regressors, Variable dependent) {
    if (regressors.empty()) throw Error(ErrorKind::DimensionMismatch, "no regressors requested");
    const auto diffed = first_difference(panel);
    DesignMatrix X{stack(diffed, regressors), false};
    return ols_fit(X, diffed.column(dependent));
}

VarianceComponents estimate_variance_components(const GrowthPanel& panel, std::span<const Variable> regressors,
                                                Variable dependent, std::vector<std::string>* warnings) {
    check_panel(panel, regressors);
    const std::size_t n = panel.entity_count();
    const std::size_t t = panel.interval_count();
    const std::size_t k = regressors.size();

    const Eigen::MatrixXd X = stack(panel, regressors);
    const Eigen::VectorXd y = panel.column(dependent);
    const Eigen::MatrixXd x_means = entity_means(X, n, t);
    const Eigen::VectorXd y_means = entity_means(y, n, t).col(0);

    const long within_df = static_cast<long>(n * t) - static_cast<long>(n) - static_cast<long>(k);
    if (within_df < 1) {
        throw Error(ErrorKind::InsufficientObservations,
                    "within regression has " + std::to_string(within_df) + " residual degrees of freedom");
    }
    DesignMatrix within{X - expand(x_means, t), false};
    const OlsFit within_fit = ols_fit(within, y - expand(y_means, t).col(0));

    VarianceComponents vc;
    vc.sigma2_idio = within_fit.ssr / static_cast<double>(within_df);

    double between_var = 0.0;
    bool have_between = false;
    if (n > k + 1) {
        DesignMatrix between{Eigen::MatrixXd(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1)), true};
        between.values.col(0).setOnes();
        between.values.rightCols(static_cast<Eigen::Index>(k)) = x_means;
        try {
            const OlsFit between_fit = ols_fit(between, y_means);
            between_var = between_fit.sigma2;
            have_between = true;
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::SingularDesign) throw;
            if (warnings) warnings->push_back("between regression singular; entity variance from pooled residuals");
        }
    } else if (warnings) {
        warnings->push_back("between regression has no residual df; entity variance from pooled residuals");
    }
    if (!have_between) {
        DesignMatrix pooled{Eigen::MatrixXd(X.rows(), static_cast<Eigen::Index>(k + 1)), true};
        pooled.values.col(0).setOnes();
        pooled.values.rightCols(static_cast<Eigen::Index>(k)) = X;
        const OlsFit pooled_fit = ols_fit(pooled, y);
        const Eigen::VectorXd u_means = entity_means(pooled_fit.residuals, n, t).col(0);
        between_var = u_means.squaredNorm() / static_cast<double>(n);
    }

    vc.sigma2_entity = between_var - vc.sigma2_idio / static_cast<double>(t);
    if (vc.sigma2_entity < 0.0) {
        if (warnings) warnings->push_back("negative entity variance estimate clamped to zero");
        vc.sigma2_entity = 0.0;
    }
    vc.theta = quasi_demeaning_weight(vc.sigma2_idio, vc.sigma2_entity, t);
    return vc;
}

GlsFit estimate_gls(const GrowthPanel& panel, std::span<const Variable> regressors, Variable dependent,
                    const GlsOptions& options) {
    check_panel(panel, regressors);
    GlsFit out;
    if (options.theta) {
        const double theta = *options.theta;
        if (!(theta >= 0.0 && theta <= 1.0)) {
            throw Error(ErrorKind::InvalidConfig, "theta override must lie in [0, 1]");
        }
        out.components.theta = theta;
    } else {
        out.components = estimate_variance_components(panel, regressors, dependent, &out.warnings);
    }

    const double theta = out.components.theta;
    const std::size_t t = panel.interval_count();
    const Eigen::MatrixXd X = stack(panel, regressors);
    const Eigen::VectorXd y = panel.column(dependent);
    const Eigen::MatrixXd X_star = X - theta * expand(entity_means(X, panel.entity_count(), t), t);
    const Eigen::VectorXd y_star = y - theta * expand(entity_means(y, panel.entity_count(), t), t).col(0);

    out.has_constant = 1.0 - theta > 0.0;
    DesignMatrix design;
    design.has_constant = out.has_constant;
    if (out.has_constant) {
        design.values.resize(X.rows(), X.cols() + 1);
        design.values.col(0).setConstant(1.0 - theta);
        design.values.rightCols(X.cols()) = X_star;
    } else {
        out.warnings.push_back("theta = 1: intercept annihilated, fit equals the within estimator");
        design.values = X_star;
    }
    out.fit = ols_fit(design, y_star);
    return out;
}

}  // namespace verdoorn
