#include <doctest.h>

#include <cmath>
#include <random>

#include "forecast/arima.hpp"
#include "forecast/diagnostics.hpp"

using namespace forecast;

namespace {

std::vector<double> white_noise(std::uint64_t seed, int n) {
    return simulate({0, 0, 0}, {}, {}, 0.0, 1.0, n, seed).values;
}

// Per-lag regression oracle: lag-k pacf is the k-th coefficient of the
// best linear predictor of x_t from (x_{t-1}, ..., x_{t-k}). Its normal
// equations are the order-k Yule-Walker system in the autocorrelations,
// solved here by plain Gaussian elimination with pivoting, a route fully
// independent of the Durbin-Levinson recursion.
double regression_pacf(const std::vector<double>& series, int k) {
    const auto rho = acf(series, k);
    std::vector<std::vector<double>> a(k, std::vector<double>(k));
    std::vector<double> rhs(k);
    for (int r = 0; r < k; ++r) {
        rhs[r] = rho[r + 1];
        for (int c = 0; c < k; ++c) a[r][c] = rho[std::abs(r - c)];
    }
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < k; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs[k - 1] / a[k - 1][k - 1];
}

}  // namespace

TEST_CASE("acf lag 0 is 1 and alternating series hits the closed form") {
    std::vector<double> alt(20);
    for (int i = 0; i < 20; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const auto rho = acf(alt, 3);
    CHECK(rho[0] == doctest::Approx(1.0));
    // direct summation: lag-1 numerator is -(n-1), denominator n
    CHECK(rho[1] == doctest::Approx(-0.95));
}

TEST_CASE("acf of seeded white noise stays inside 3/sqrt(n)") {
    const auto noise = white_noise(1234, 1000);
    const auto rho = acf(noise, 20);
    for (int k = 1; k <= 20; ++k) {
        CHECK(std::abs(rho[k]) < 3.0 / std::sqrt(1000.0));
    }
}

TEST_CASE("acf rejects constant series") {
    CHECK_THROWS_AS(acf(std::vector<double>(10, 2.0), 3), DegenerateSeries);
}

TEST_CASE("acf is invariant under affine transforms") {
    const auto noise = white_noise(99, 200);
    auto scaled = noise;
    for (double& v : scaled) v = -3.5 * v + 7.0;
    const auto a = acf(noise, 10);
    const auto b = acf(scaled, 10);
    for (int k = 0; k <= 10; ++k) {
        CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-10));
    }
}

TEST_CASE("pacf lag 1 equals acf lag 1") {
    const auto noise = white_noise(5, 300);
    CHECK(pacf(noise, 5)[0] == doctest::Approx(acf(noise, 5)[1]).epsilon(1e-12));
}

TEST_CASE("pacf of AR(1) cuts off after lag 1") {
    const auto series = simulate({1, 0, 0}, {0.7}, {}, 0.0, 1.0, 2000, 42).values;
    const auto partials = pacf(series, 5);
    const double bound = confidence_bound(2000);
    CHECK(partials[0] > 0.6);
    for (int k = 2; k <= 5; ++k) {
        CHECK(std::abs(partials[k - 1]) < bound);
    }
}

TEST_CASE("Durbin-Levinson pacf matches the regression oracle") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto series = simulate({1, 0, 0}, {0.5}, {}, 0.0, 1.0, 50, seed).values;
        const auto partials = pacf(series, 6);
        for (int k = 1; k <= 6; ++k) {
            CHECK(partials[k - 1] == doctest::Approx(regression_pacf(series, k)).epsilon(1e-8));
        }
    }
}

TEST_CASE("confidence_bound formula") {
    CHECK(confidence_bound(100) == doctest::Approx(0.196));
    CHECK(confidence_bound(400) == doctest::Approx(0.098));
    CHECK(confidence_bound(4) == doctest::Approx(0.98));
}

TEST_CASE("suggest_order applies the band-crossing rule") {
    Correlogram gram;
    gram.max_lag = 3;
    gram.confidence_bound = 0.196;
    gram.acf = {1.0, 0.8, 0.6, 0.05};
    gram.pacf = {0.8, 0.05, 0.02};
    const auto [p, q] = suggest_order(gram);
    CHECK(p == 1);
    CHECK(q == 2);
}

TEST_CASE("suggest_order returns (0,0) when lag 1 is inside the band") {
    Correlogram gram;
    gram.max_lag = 3;
    gram.confidence_bound = 0.196;
    gram.acf = {1.0, 0.1, 0.05, 0.01};
    gram.pacf = {0.1, 0.05, 0.01};
    const auto [p, q] = suggest_order(gram);
    CHECK(p == 0);
    CHECK(q == 0);
}

TEST_CASE("suggest_order recovers p=2 on a simulated AR(2)") {
    const auto series = simulate({2, 0, 0}, {0.5, 0.3}, {}, 0.0, 1.0, 2000, 7).values;
    const auto gram = correlogram(series, 10);
    const auto [p, q] = suggest_order(gram);
    CHECK(p == 2);
    CHECK(q >= 1);  // AR(2) acf decays slowly; q is unconstrained by the rule
}

TEST_CASE("suggest_order caps suggestions at 5") {
    Correlogram gram;
    gram.max_lag = 8;
    gram.confidence_bound = 0.1;
    gram.acf.assign(9, 0.9);
    gram.acf[0] = 1.0;
    gram.pacf.assign(8, 0.9);
    const auto [p, q] = suggest_order(gram);
    CHECK(p == 5);
    CHECK(q == 5);
}

TEST_CASE("adf_test keeps the unit root on a random walk") {
    const auto walk = simulate({0, 1, 0}, {}, {}, 0.0, 1.0, 300, 2024).values;
    const AdfResult result = adf_test(walk);
    CHECK_FALSE(result.reject_unit_root);
}

TEST_CASE("adf_test rejects on a stationary AR(1)") {
    const auto series = simulate({1, 0, 0}, {0.5}, {}, 0.0, 1.0, 300, 2024).values;
    const AdfResult result = adf_test(series);
    CHECK(result.reject_unit_root);
    CHECK(result.statistic < result.critical_values.at(AdfLevel::five_percent));
}

TEST_CASE("adf_test cannot reject a deterministic ramp without a trend term") {
    std::vector<double> ramp(100);
    for (int t = 0; t < 100; ++t) ramp[t] = t;
    const AdfResult result = adf_test(ramp, 4);
    CHECK_FALSE(result.reject_unit_root);
}

TEST_CASE("adf_test statistic is invariant under adding a constant") {
    const auto series = simulate({1, 0, 0}, {0.6}, {}, 0.0, 1.0, 250, 5).values;
    auto shifted = series;
    for (double& v : shifted) v += 123.0;
    CHECK(adf_test(series).statistic ==
          doctest::Approx(adf_test(shifted).statistic).epsilon(1e-8));
}

TEST_CASE("chi-square tail via the incomplete gamma") {
    // reference values from standard tables
    CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(chi_square_sf(18.307, 10) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(gamma_p(0.5, 100.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_p(3.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("ljung_box accepts white noise and flags AR(1) residuals") {
    const auto noise = white_noise(2718, 500);
    const ResidualReport clean = ljung_box(noise, 10, 0);
    CHECK(clean.uncorrelated);
    CHECK(clean.mean_within_tolerance);
    CHECK(clean.ljung_box_p >= 0.0);
    CHECK(clean.ljung_box_p <= 1.0);
    CHECK(clean.ljung_box_statistic >= 0.0);

    const auto correlated = simulate({1, 0, 0}, {0.8}, {}, 0.0, 1.0, 500, 2718).values;
    CHECK_FALSE(ljung_box(correlated, 10, 0).uncorrelated);
}

TEST_CASE("ljung_box flags a nonzero residual mean") {
    auto residuals = white_noise(31, 200);
    for (double& v : residuals) v = v * 1e-3 + 5.0;
    const ResidualReport report = ljung_box(residuals, 10, 0);
    CHECK_FALSE(report.mean_within_tolerance);
}
