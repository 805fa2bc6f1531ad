#include <doctest.h>

#include <boost/math/distributions/students_t.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "verdoorn/student_t.hpp"

using namespace verdoorn::stats;
using boost::multiprecision::cpp_bin_float_50;

namespace {

double reference_quantile(double p, double df) {
    boost::math::students_t_distribution<cpp_bin_float_50> dist{cpp_bin_float_50(df)};
    return static_cast<double>(boost::math::quantile(dist, cpp_bin_float_50(p)));
}

}  // namespace

TEST_CASE("incomplete beta matches closed forms") {
    // I_x(1, 1) = x; I_x(a, 1) = x^a.
    CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-14));
    CHECK(incomplete_beta(2.5, 1.0, 0.6) == doctest::Approx(std::pow(0.6, 2.5)).epsilon(1e-13));
    CHECK(incomplete_beta(3.0, 4.0, 0.0) == 0.0);
    CHECK(incomplete_beta(3.0, 4.0, 1.0) == 1.0);
}

TEST_CASE("t cdf is symmetric and centered") {
    CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double t : {0.3, 1.2, 2.9, 7.5}) {
        CHECK(student_t_cdf(t, 5.0) + student_t_cdf(-t, 5.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    // df = 1 is Cauchy.
    CHECK(student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("t quantiles agree with a 50-digit reference") {
    for (double df : {1.0, 2.0, 3.0, 6.0, 8.0, 9.0, 11.0, 14.0, 30.0, 120.0}) {
        for (double p : {0.5 + 1e-6, 0.6, 0.9, 0.95, 0.975, 0.995, 0.9995, 0.025, 0.1}) {
            const double ours = student_t_quantile(p, df);
            const double ref = reference_quantile(p, df);
            CAPTURE(df);
            CAPTURE(p);
            CHECK(std::fabs(ours - ref) < 1e-8 * std::max(1.0, std::fabs(ref)));
        }
    }
}

TEST_CASE("t(11) critical values from the significance table") {
    CHECK(student_t_quantile(0.975, 11) == doctest::Approx(2.2009851600916392).epsilon(1e-12));
    CHECK(student_t_quantile(0.95, 11) == doctest::Approx(1.7958848187040435).epsilon(1e-12));
}

TEST_CASE("bad arguments throw") {
    CHECK_THROWS(student_t_cdf(1.0, 0.0));
    CHECK_THROWS(student_t_quantile(1.0, 5.0));
    CHECK_THROWS(student_t_quantile(0.0, 5.0));
}
