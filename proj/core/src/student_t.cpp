#include "verdoorn/student_t.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "verdoorn/errors.hpp"

namespace verdoorn::stats {
namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 1000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    return h;
}

// Upper tail P(T > t) for t >= 0.
double upper_tail(double t, double df) {
    const double x = df / (df + t * t);
    return 0.5 * incomplete_beta(0.5 * df, 0.5, x);
}

double density(double t, double df) {
    const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                            0.5 * std::log(df * std::numbers::pi);
    return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw Error(ErrorKind::InvalidDf, "incomplete beta requires positive shape parameters");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw Error(ErrorKind::InvalidDf, "t distribution needs df > 0");
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    const double tail = upper_tail(std::fabs(t), df);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
    if (!(df > 0.0)) throw Error(ErrorKind::InvalidDf, "t distribution needs df > 0");
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "quantile probability must lie in (0, 1)");
    }
    if (p == 0.5) return 0.0;

    // Solve on the upper tail, then mirror.
    const double target = p > 0.5 ? 1.0 - p : p;
    double lo = 0.0;
    double hi = 1.0;
    while (upper_tail(hi, df) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) break;
    }

    // Newton steps kept inside the bracket; fall back to bisection.
    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = upper_tail(t, df) - target;
        if (f > 0.0) {
            lo = t;
        } else {
            hi = t;
        }
        const double slope = -density(t, df);
        double next = slope != 0.0 ? t - f / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - t) <= 1e-15 * std::max(1.0, std::fabs(t))) {
            t = next;
            break;
        }
        t = next;
    }
    return p > 0.5 ? t : -t;
}

}  // namespace verdoorn::stats
