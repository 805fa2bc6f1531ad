#pragma once

#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace verdoorn {

/// Regressor matrix for a single least-squares problem. When has_constant is
/// set, column 0 is a nonzero constant column (an intercept, possibly scaled
/// by a GLS transform) and R² is computed on the centered total sum of squares.
struct DesignMatrix {
    Eigen::MatrixXd values;
    bool has_constant = false;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd residuals;
    double r_squared = 0.0;
    // NaN when the fit is exact (zero residual norm).
    double durbin_watson = 0.0;
    int df = 0;
    double sigma2 = 0.0;
    double ssr = 0.0;
};

/// Reciprocal-condition threshold on XᵀX below which a design is singular.
inline constexpr double kSingularRcond = 1e-12;

/// Least squares through a Householder QR of X. Rows are assumed to be in the
/// panel's canonical (entity, time) order, which is what durbin_watson reads.
OlsFit ols_fit(const DesignMatrix& X, const Eigen::VectorXd& y);

/// Σ(e_t − e_{t−1})² / Σe_t².
double durbin_watson(std::span<const double> residuals);
double durbin_watson(const Eigen::VectorXd& residuals);

enum class Significance { none, at_10pct, at_5pct };

std::string_view to_string(Significance flag);

/// Two-sided test sizes for the single and double star.
struct SignificanceLevels {
    double strong = 0.05;
    double weak = 0.10;
};

/// Two-sided Student-t significance of a coefficient. A level is reached when
/// |t| strictly exceeds the corresponding upper quantile of t(df).
Significance significance_flag(double t_stat, int df, SignificanceLevels levels = {});

}  // namespace verdoorn
