#pragma once

// Student-t distribution built on the regularized incomplete beta function.
// No external statistics dependency; accuracy target is 1e-8 on quantiles.

namespace verdoorn::stats {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// P(T <= t) for T ~ t(df), df > 0.
double student_t_cdf(double t, double df);

/// Inverse of student_t_cdf for p in (0, 1).
double student_t_quantile(double p, double df);

}  // namespace verdoorn::stats
