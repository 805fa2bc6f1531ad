#include "verdoorn/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "verdoorn/errors.hpp"
#include "verdoorn/student_t.hpp"

namespace verdoorn {
namespace {

void check_design(const DesignMatrix& X, Eigen::Index n_y) {
    if (X.rows() != n_y) {
        throw Error(ErrorKind::DimensionMismatch,
                    "design has " + std::to_string(X.rows()) + " rows but response has " +
                        std::to_string(n_y));
    }
    if (X.cols() == 0) throw Error(ErrorKind::DimensionMismatch, "design has no columns");
    if (X.rows() <= X.cols()) {
        throw Error(ErrorKind::InsufficientObservations,
                    std::to_string(X.rows()) + " observations for " + std::to_string(X.cols()) +
                        " regressors");
    }
    if (!X.values.allFinite()) throw Error(ErrorKind::SingularDesign, "design has non-finite entries");
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (X.values.col(j).isZero(0.0)) {
            throw Error(ErrorKind::SingularDesign, "column " + std::to_string(j) + " is identically zero");
        }
        for (Eigen::Index k = 0; k < j; ++k) {
            if (X.values.col(j) == X.values.col(k)) {
                throw Error(ErrorKind::SingularDesign, "columns " + std::to_string(k) + " and " +
                                                           std::to_string(j) + " are identical");
            }
        }
    }
}

}  // namespace

OlsFit ols_fit(const DesignMatrix& X, const Eigen::VectorXd& y) {
    check_design(X, y.size());
    if (!y.allFinite()) throw Error(ErrorKind::DimensionMismatch, "response has non-finite entries");

    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();

    // rcond(XᵀX) = (σ_min / σ_max)² in the 2-norm.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X.values);
    const auto& sv = svd.singularValues();
    const double ratio = sv(0) > 0.0 ? sv(k - 1) / sv(0) : 0.0;
    if (ratio * ratio < kSingularRcond) {
        throw Error(ErrorKind::SingularDesign,
                    "reciprocal condition of X'X is " + std::to_string(ratio * ratio));
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X.values);
    const Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const Eigen::VectorXd qty = (qr.householderQ().transpose() * y).head(k);

    OlsFit fit;
    fit.coefficients = R.triangularView<Eigen::Upper>().solve(qty);
    fit.residuals = y - X.values * fit.coefficients;
    fit.df = static_cast<int>(n - k);
    fit.ssr = fit.residuals.squaredNorm();
    fit.sigma2 = fit.ssr / fit.df;

    // (XᵀX)⁻¹ = R⁻¹R⁻ᵀ, so its diagonal is the squared row norms of R⁻¹.
    const Eigen::MatrixXd r_inv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    fit.std_errors = (r_inv.rowwise().squaredNorm() * fit.sigma2).cwiseSqrt();
    fit.t_stats = fit.coefficients.cwiseQuotient(fit.std_errors);

    double sst = 0.0;
    if (X.has_constant) {
        sst = (y.array() - y.mean()).matrix().squaredNorm();
    } else {
        sst = y.squaredNorm();
    }
    // Both forms are in [0, 1] in exact arithmetic; clamp rounding spill.
    fit.r_squared = sst > 0.0 ? std::clamp(1.0 - fit.ssr / sst, 0.0, 1.0) : 1.0;

    fit.durbin_watson = fit.ssr > 0.0 ? durbin_watson(fit.residuals)
                                      : std::numeric_limits<double>::quiet_NaN();
    return fit;
}

double durbin_watson(std::span<const double> residuals) {
    if (residuals.size() < 2) {
        throw Error(ErrorKind::InsufficientObservations, "Durbin-Watson needs at least two residuals");
    }
    double num = 0.0;
    double den = residuals[0] * residuals[0];
    for (std::size_t t = 1; t < residuals.size(); ++t) {
        const double diff = residuals[t] - residuals[t - 1];
        num += diff * diff;
        den += residuals[t] * residuals[t];
    }
    if (den == 0.0) throw Error(ErrorKind::ZeroResidualNorm, "all residuals are zero");
    return num / den;
}

double durbin_watson(const Eigen::VectorXd& residuals) {
    return durbin_watson(std::span<const double>(residuals.data(), static_cast<std::size_t>(residuals.size())));
}

std::string_view to_string(Significance flag) {
    switch (flag) {
        case Significance::none: return "none";
        case Significance::at_10pct: return "at_10pct";
        case Significance::at_5pct: return "at_5pct";
    }
    return "none";
}

Significance significance_flag(double t_stat, int df, SignificanceLevels levels) {
    if (df < 1) throw Error(ErrorKind::InvalidDf, "significance test needs df >= 1, got " + std::to_string(df));
    if (std::isnan(t_stat)) return Significance::none;
    const double abs_t = std::fabs(t_stat);
    if (abs_t > stats::student_t_quantile(1.0 - 0.5 * levels.strong, df)) return Significance::at_5pct;
    if (abs_t > stats::student_t_quantile(1.0 - 0.5 * levels.weak, df)) return Significance::at_10pct;
    return Significance::none;
}

}  // namespace verdoorn
