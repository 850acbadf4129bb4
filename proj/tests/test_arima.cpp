#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "forecast/arima.hpp"
#include "forecast/diagnostics.hpp"

using namespace forecast;

namespace {

TimeSeries wrap(std::vector<double> values) {
    TimeSeries s;
    s.frequency = Frequency::monthly;
    s.values = std::move(values);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        s.stamps.push_back(encode_month(2000, 1) + static_cast<Stamp>(i));
    }
    return s;
}

}  // namespace

TEST_CASE("css_objective with no coefficients sums squared values") {
    CHECK(css_objective({}, {}, 0.0, {1.0, -1.0, 2.0}) == doctest::Approx(6.0));
}

TEST_CASE("css_objective is zero under perfect one-lag persistence") {
    CHECK(css_objective({1.0}, {}, 0.0, {5.0, 5.0, 5.0}) == doctest::Approx(0.0));
}

TEST_CASE("css_objective matches the hand recursion for ARMA(1,1)") {
    // a1 is start-up, a2 = 1 - 0.5 + 0.5*0 = 0.5, a3 = 1 - 0.5 + 0.5*0.5 = 0.75
    CHECK(css_objective({0.5}, {0.5}, 0.0, {1.0, 1.0, 1.0}) == doctest::Approx(0.8125));
}

TEST_CASE("css_objective is non-negative and zero only for zero residuals") {
    CHECK(css_objective({0.3}, {0.2}, 0.5, {1.0, -2.0, 0.7, 3.0}) > 0.0);
    // constant series at the mean leaves nothing to explain
    CHECK(css_objective({0.0}, {}, 2.0, {2.0, 2.0, 2.0}) == 0.0);
}

TEST_CASE("root check accepts stationary and rejects explosive polynomials") {
    CHECK(roots_outside_unit_circle({}));
    CHECK(roots_outside_unit_circle({0.5}));
    CHECK(roots_outside_unit_circle({0.5, 0.3}));
    CHECK(roots_outside_unit_circle({1.73 * 0.95, -0.95 * 0.95}));  // complex pair, |root| > 1
    CHECK_FALSE(roots_outside_unit_circle({1.0}));
    CHECK_FALSE(roots_outside_unit_circle({1.2}));
    CHECK_FALSE(roots_outside_unit_circle({0.9, 0.2}));  // phi(1) < 0 side
}

TEST_CASE("nelder_mead on convex problems") {
    NelderMeadConfig config;
    config.max_iter = 500;
    const auto one_d = nelder_mead(
        [](const std::vector<double>& x) { return (x[0] - 3.0) * (x[0] - 3.0); }, {0.0}, config);
    CHECK(std::abs(one_d.argmin[0] - 3.0) < 1e-4);

    const auto two_d = nelder_mead(
        [](const std::vector<double>& x) { return x[0] * x[0] + 10.0 * x[1] * x[1]; }, {5.0, 5.0},
        config);
    CHECK(std::abs(two_d.argmin[0]) < 1e-3);
    CHECK(std::abs(two_d.argmin[1]) < 1e-3);
}

TEST_CASE("nelder_mead solves Rosenbrock") {
    NelderMeadConfig config;
    config.max_iter = 2000;
    config.tol = 1e-12;
    auto rosen = [](const std::vector<double>& x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    const auto result = nelder_mead(rosen, {-1.2, 1.0}, config);
    CHECK(rosen(result.argmin) < 1e-6);
}

TEST_CASE("simulate produces law-of-large-numbers behavior") {
    const int n = 5000;
    const auto noise = simulate({0, 0, 0}, {}, {}, 0.0, 1.0, n, 77).values;
    double mean = 0.0;
    for (double v : noise) mean += v;
    mean /= n;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("simulate AR(1) lag-1 acf near phi") {
    const auto series = simulate({1, 0, 0}, {0.9}, {}, 0.0, 1.0, 5000, 123).values;
    CHECK(acf(series, 1)[1] == doctest::Approx(0.9).epsilon(0.06));
}

TEST_CASE("simulate degenerate noiseless case is constant") {
    const auto series = simulate({0, 0, 0}, {}, {}, 4.2, 0.0, 50, 1).values;
    for (double v : series) CHECK(v == doctest::Approx(4.2));
}

TEST_CASE("simulate rejects invalid coefficients") {
    CHECK_THROWS_AS(simulate({1, 0, 0}, {1.1}, {}, 0.0, 1.0, 10, 1), DomainError);
}

TEST_CASE("fit recovers an AR(1) coefficient") {
    const auto series = simulate({1, 0, 0}, {0.6}, {}, 0.0, 1.0, 500, 99);
    const ArimaModel model = fit(series, {1, 0, 0});
    REQUIRE(model.phi.size() == 1);
    CHECK(model.phi[0] > 0.5);
    CHECK(model.phi[0] < 0.7);
    CHECK(model.sigma2 > 0.0);
}

TEST_CASE("fit recovers an MA(1) coefficient") {
    const auto series = simulate({0, 0, 1}, {}, {0.5}, 0.0, 1.0, 500, 4);
    const ArimaModel model = fit(series, {0, 0, 1});
    REQUIRE(model.theta.size() == 1);
    CHECK(model.theta[0] > 0.35);
    CHECK(model.theta[0] < 0.65);
}

TEST_CASE("fit with order (0,0,0) is the sample mean model") {
    const auto series = wrap({1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 5.0, 4.0, 3.0, 2.0});
    const ArimaModel model = fit(series, {0, 0, 0});
    CHECK(model.mu == doctest::Approx(3.5));
    REQUIRE(model.residuals.size() == series.size());
    for (std::size_t t = 0; t < series.size(); ++t) {
        CHECK(model.residuals[t] == doctest::Approx(series.values[t] - 3.5));
    }
}

TEST_CASE("fit never returns non-stationary coefficients") {
    for (std::uint64_t seed : {10ULL, 11ULL, 12ULL}) {
        const auto series = simulate({2, 0, 1}, {0.5, -0.3}, {0.4}, 1.0, 1.0, 400, seed);
        const ArimaModel model = fit(series, {2, 0, 1});
        CHECK(roots_outside_unit_circle(model.phi));
        CHECK(roots_outside_unit_circle(model.theta));
    }
}

TEST_CASE("fit parameter recovery over 20 seeds (median)") {
    std::vector<double> errors;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto series = simulate({1, 0, 0}, {0.6}, {}, 0.0, 1.0, 500, 1000 + seed);
        errors.push_back(std::abs(fit(series, {1, 0, 0}).phi[0] - 0.6));
    }
    std::sort(errors.begin(), errors.end());
    CHECK(errors[10] < 0.05);
}

TEST_CASE("forecast of AR(1) decays geometrically") {
    ArimaModel model;
    model.order = {1, 0, 0};
    model.phi = {0.5};
    model.mu = 0.0;
    model.differenced = {0.0, 1.0, 2.0};
    model.residuals = {0.0, 0.0, 0.0};
    const ForecastResult fc = forecast::forecast(model, 3);
    CHECK(fc.point_forecasts[0] == doctest::Approx(1.0));
    CHECK(fc.point_forecasts[1] == doctest::Approx(0.5));
    CHECK(fc.point_forecasts[2] == doctest::Approx(0.25));
}

TEST_CASE("forecast of a mean-only model is the mean") {
    ArimaModel model;
    model.order = {0, 0, 0};
    model.mu = 3.2;
    model.differenced = {3.0, 3.4};
    model.residuals = {0.0, 0.0};
    const ForecastResult fc = forecast::forecast(model, 4);
    for (double v : fc.point_forecasts) CHECK(v == doctest::Approx(3.2));
}

TEST_CASE("forecast of a driftless random walk is flat at the last level") {
    ArimaModel model;
    model.order = {0, 1, 0};
    model.mu = 0.0;
    model.differenced = {1.0};  // levels were [16, 17]
    model.residuals = {0.0};
    model.differencing.seeds = {{16.0}};
    const ForecastResult fc = forecast::forecast(model, 3);
    for (double v : fc.point_forecasts) CHECK(v == doctest::Approx(17.0));
}

TEST_CASE("forecast of a stationary model converges to the mean") {
    const auto series = simulate({2, 0, 0}, {0.6, -0.2}, {}, 5.0, 1.0, 600, 21);
    const ArimaModel model = fit(series, {2, 0, 0});
    const ForecastResult fc = forecast::forecast(model, 50);
    double head = 0.0, tail = 0.0;
    for (int h = 0; h < 50; ++h) {
        const double dev = std::abs(fc.point_forecasts[h] - model.mu);
        (h < 25 ? head : tail) = std::max(h < 25 ? head : tail, dev);
    }
    // the envelope decays geometrically, so the tail sits far below the head
    CHECK(tail < 0.1 * head + 1e-9);
    CHECK(std::abs(fc.point_forecasts[49] - model.mu) < 1e-3 * head + 1e-9);
}

TEST_CASE("forecast is shift-equivariant for d=0 models") {
    const auto series = simulate({1, 0, 0}, {0.5}, {}, 0.0, 1.0, 400, 33);
    TimeSeries shifted = series;
    for (double& v : shifted.values) v += 10.0;
    const auto fc = forecast::forecast(fit(series, {1, 0, 0}), 6);
    const auto fc_shifted = forecast::forecast(fit(shifted, {1, 0, 0}), 6);
    for (int h = 0; h < 6; ++h) {
        CHECK(fc_shifted.point_forecasts[h] ==
              doctest::Approx(fc.point_forecasts[h] + 10.0).epsilon(1e-6));
    }
}

TEST_CASE("simulate -> fit -> simulate preserves lag-1 acf") {
    const auto original = simulate({1, 0, 0}, {0.7}, {}, 0.0, 1.0, 2000, 55);
    const ArimaModel model = fit(original, {1, 0, 0});
    const auto regenerated =
        simulate(model.order, model.phi, model.theta, model.mu, std::sqrt(model.sigma2), 2000, 56);
    CHECK(acf(regenerated.values, 1)[1] ==
          doctest::Approx(acf(original.values, 1)[1]).epsilon(0.15));
}

TEST_CASE("arima model serialization round-trips") {
    const auto series = simulate({1, 1, 1}, {0.4}, {0.3}, 0.0, 1.0, 300, 9);
    const ArimaModel model = fit(series, {1, 1, 1});
    const ArimaModel back = deserialize_arima(serialize(model));
    CHECK(back.order.p == model.order.p);
    CHECK(back.order.d == model.order.d);
    CHECK(back.order.q == model.order.q);
    CHECK(back.phi == model.phi);
    CHECK(back.theta == model.theta);
    CHECK(back.mu == model.mu);
    CHECK(back.sigma2 == model.sigma2);
    const auto fc = forecast::forecast(model, 5);
    const auto fc_back = forecast::forecast(back, 5);
    for (int h = 0; h < 5; ++h) {
        CHECK(fc_back.point_forecasts[h] == fc.point_forecasts[h]);
    }
}

TEST_CASE("fit demands the heuristic length floor") {
    CHECK_THROWS_AS(fit(wrap({1.0, 2.0, 3.0}), {1, 0, 1}), InsufficientData);
}
