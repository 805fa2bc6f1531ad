#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "verdoorn/core_stats.hpp"
#include "verdoorn/errors.hpp"
#include "verdoorn/synth.hpp"

using namespace verdoorn;

namespace {

DesignMatrix with_constant(std::initializer_list<double> x) {
    DesignMatrix X{Eigen::MatrixXd(static_cast<Eigen::Index>(x.size()), 2), true};
    Eigen::Index r = 0;
    for (double v : x) {
        X.values(r, 0) = 1.0;
        X.values(r, 1) = v;
        ++r;
    }
    return X;
}

ErrorKind kind_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& err) {
        return err.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::IoError;
}

// Random design with an intercept and k−1 normal columns; redrawn until
// reasonably conditioned.
DesignMatrix random_design(synth::Rng& rng, int n, int k) {
    for (;;) {
        DesignMatrix X{Eigen::MatrixXd(n, k), true};
        for (int r = 0; r < n; ++r) {
            X.values(r, 0) = 1.0;
            for (int c = 1; c < k; ++c) X.values(r, c) = rng.normal(0.0, 1.0 + c);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(X.values);
        if (svd.singularValues()(k - 1) / svd.singularValues()(0) > 1e-3) return X;
    }
}

}  // namespace

TEST_CASE("ols: exact fit through the origin") {
    DesignMatrix X{Eigen::MatrixXd(3, 1), false};
    X.values << 1, 2, 3;
    Eigen::VectorXd y(3);
    y << 2, 4, 6;
    const auto fit = ols_fit(X, y);
    CHECK(fit.coefficients(0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.residuals.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK(fit.df == 2);
}

TEST_CASE("ols: two-point line matches the hand-solved normal equations") {
    const auto X = with_constant({1, 2, 3});
    Eigen::VectorXd y(3);
    y << 1, 2, 2;
    const auto fit = ols_fit(X, y);
    CHECK(fit.coefficients(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fit.coefficients(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    // residuals (1/6, -1/3, 1/6): SSR = 1/6, SST = 2/3.
    CHECK(fit.ssr == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(fit.r_squared == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(fit.sigma2 == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    // Var(slope) = σ²/Sxx = (1/6)/2.
    CHECK(fit.std_errors(1) == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-13));
}

TEST_CASE("ols: error paths") {
    SUBCASE("zero column") {
        DesignMatrix X{Eigen::MatrixXd(4, 2), true};
        X.values << 1, 0, 1, 0, 1, 0, 1, 0;
        CHECK(kind_of([&] { ols_fit(X, Eigen::VectorXd::Ones(4)); }) == ErrorKind::SingularDesign);
    }
    SUBCASE("duplicate columns") {
        DesignMatrix X{Eigen::MatrixXd(4, 2), false};
        X.values << 1, 1, 2, 2, 3, 3, 5, 5;
        CHECK(kind_of([&] { ols_fit(X, Eigen::VectorXd::Ones(4)); }) == ErrorKind::SingularDesign);
    }
    SUBCASE("near-collinear columns") {
        DesignMatrix X{Eigen::MatrixXd(4, 2), false};
        X.values << 1, 2, 2, 4, 3, 6, 5, 10 + 1e-9;
        CHECK(kind_of([&] { ols_fit(X, Eigen::VectorXd::Ones(4)); }) == ErrorKind::SingularDesign);
    }
    SUBCASE("length mismatch") {
        const auto X = with_constant({1, 2, 3});
        CHECK(kind_of([&] { ols_fit(X, Eigen::VectorXd::Ones(4)); }) == ErrorKind::DimensionMismatch);
    }
    SUBCASE("no residual df") {
        const auto X = with_constant({1, 2});
        CHECK(kind_of([&] { ols_fit(X, Eigen::VectorXd::Ones(2)); }) == ErrorKind::InsufficientObservations);
    }
}

TEST_CASE("ols: uncentered R2 without intercept may exceed the centered one") {
    DesignMatrix X{Eigen::MatrixXd(4, 1), false};
    X.values << 1, 2, 3, 4;
    Eigen::VectorXd y(4);
    y << 5, 5, 5, 6;
    const auto fit = ols_fit(X, y);
    const double uncentered = 1.0 - fit.ssr / y.squaredNorm();
    CHECK(fit.r_squared == doctest::Approx(uncentered).epsilon(1e-14));
    const double centered = 1.0 - fit.ssr / (y.array() - y.mean()).matrix().squaredNorm();
    CHECK(centered < 0.0);
    CHECK(fit.r_squared > 0.0);
}

TEST_CASE("ols: properties on random designs") {
    synth::Rng rng(20240601);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 1 + static_cast<int>(rng.uniform() * 5);
        const int n = k + 2 + static_cast<int>(rng.uniform() * (29 - k));
        const auto X = random_design(rng, n, k);
        Eigen::VectorXd y(n);
        for (int r = 0; r < n; ++r) y(r) = rng.normal(0.0, 1.0) + 0.5 * r;

        const auto fit = ols_fit(X, y);
        CAPTURE(trial);

        const Eigen::VectorXd beta = oracle::normal_equations(X.values, y);
        CHECK(((fit.coefficients - beta).cwiseAbs().array() / beta.cwiseAbs().array().max(1.0)).maxCoeff() < 1e-10);

        const double scale = X.values.cwiseAbs().maxCoeff() * y.cwiseAbs().maxCoeff();
        CHECK((X.values.transpose() * fit.residuals).cwiseAbs().maxCoeff() < 1e-8 * scale);
        CHECK(fit.df == n - k);
        for (Eigen::Index j = 0; j < k; ++j) {
            CHECK(fit.t_stats(j) == doctest::Approx(fit.coefficients(j) / fit.std_errors(j)).epsilon(1e-15));
        }
        CHECK(fit.durbin_watson >= 0.0);
        CHECK(fit.durbin_watson <= 4.0);
        CHECK(fit.r_squared >= 0.0);
        CHECK(fit.r_squared <= 1.0);

        // y → s·y scales coefficients, errors and residuals; |t|, R2, DW, flags fixed.
        const double s = -3.7;
        const auto scaled = ols_fit(X, s * y);
        CHECK((scaled.coefficients - s * fit.coefficients).cwiseAbs().maxCoeff() <
              1e-12 * std::max(1.0, fit.coefficients.cwiseAbs().maxCoeff() * 3.7));
        CHECK((scaled.std_errors - std::fabs(s) * fit.std_errors).cwiseAbs().maxCoeff() <
              1e-12 * std::max(1.0, fit.std_errors.maxCoeff() * 3.7));
        CHECK((scaled.residuals - s * fit.residuals).cwiseAbs().maxCoeff() <
              1e-12 * std::max(1.0, y.cwiseAbs().maxCoeff() * 3.7));
        CHECK((scaled.t_stats + fit.t_stats).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, fit.t_stats.cwiseAbs().maxCoeff()));
        CHECK(std::fabs(scaled.r_squared - fit.r_squared) < 1e-12);
        CHECK(std::fabs(scaled.durbin_watson - fit.durbin_watson) < 1e-12);
        for (Eigen::Index j = 0; j < k; ++j) {
            CHECK(significance_flag(scaled.t_stats(j), scaled.df) == significance_flag(fit.t_stats(j), fit.df));
        }
    }
}

TEST_CASE("durbin-watson hand cases") {
    const std::vector<double> flat{1, 1, 1, 1};
    const std::vector<double> alternating{1, -1, 1, -1};
    CHECK(durbin_watson(flat) == 0.0);
    CHECK(durbin_watson(alternating) == 3.0);
    CHECK_THROWS_AS(durbin_watson(std::vector<double>{1.0}), Error);
    CHECK(kind_of([] { durbin_watson(std::vector<double>{0.0, 0.0, 0.0}); }) == ErrorKind::ZeroResidualNorm);
}

TEST_CASE("durbin-watson near 2 for white noise and within [0, 4]") {
    synth::Rng rng(99);
    std::vector<double> e(500);
    for (auto& v : e) v = rng.normal();
    CHECK(std::fabs(durbin_watson(e) - 2.0) < 0.2);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> r(2 + trial % 17);
        for (auto& v : r) v = rng.normal() * (trial % 3 == 0 ? 1.0 : 0.01);
        const double dw = durbin_watson(r);
        CHECK(dw >= 0.0);
        CHECK(dw <= 4.0);
    }
}

TEST_CASE("significance flags at the t(11) boundaries") {
    CHECK(significance_flag(0.0, 11) == Significance::none);
    CHECK(significance_flag(2.201, 11) == Significance::at_5pct);
    CHECK(significance_flag(-2.201, 11) == Significance::at_5pct);
    CHECK(significance_flag(2.2009, 11) == Significance::at_10pct);
    CHECK(significance_flag(1.90, 11) == Significance::at_10pct);
    CHECK(significance_flag(1.79, 11) == Significance::none);
    CHECK(kind_of([] { significance_flag(1.0, 0); }) == ErrorKind::InvalidDf);
}

TEST_CASE("significance flag is monotone in |t|") {
    for (int df : {1, 3, 9, 11, 40}) {
        int previous = 0;
        for (double t = 0.0; t < 15.0; t += 0.01) {
            const int level = static_cast<int>(significance_flag(t, df));
            CHECK(level >= previous);
            previous = level;
        }
        CHECK(previous == static_cast<int>(Significance::at_5pct));
    }
}

TEST_CASE("custom significance levels") {
    // |t| = 2.0 at df = 11 has a two-sided p of about 0.071.
    CHECK(significance_flag(2.0, 11, {0.05, 0.10}) == Significance::at_10pct);
    CHECK(significance_flag(2.0, 11, {0.08, 0.20}) == Significance::at_5pct);
}
