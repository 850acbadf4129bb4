#ifndef FORECAST_ARIMA_HPP
#define FORECAST_ARIMA_HPP

#include <functional>
#include <string>
#include <vector>

#include "forecast/series.hpp"

namespace forecast {

struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;
};

struct ArimaModel {
    ArimaOrder order;
    std::vector<double> phi;    // AR coefficients
    std::vector<double> theta;  // MA coefficients, subtracted in the recursion
    double mu = 0.0;            // mean of the differenced series
    double sigma2 = 0.0;
    std::vector<double> residuals;  // in-sample, aligned with differenced series
    DifferencingRecord differencing;
    std::vector<double> differenced;  // training series after differencing
};

struct ForecastResult {
    int horizon = 0;
    std::vector<double> point_forecasts;  // original (level) units
};

// Conditional sum of squares of the recursive ARMA residuals; start-up
// residuals (the first max(p, q)) are zeroed and excluded from the sum.
// Total by contract: overflow returns +infinity. Stationarity and
// invertibility are enforced by fit(), not here.
double css_objective(const std::vector<double>& phi, const std::vector<double>& theta,
                     double mu, const std::vector<double>& series);

// Residual sequence of the same recursion, start-up entries zero.
std::vector<double> css_residuals(const std::vector<double>& phi, const std::vector<double>& theta,
                                  double mu, const std::vector<double>& series);

// Roots of 1 - c1 z - ... - ck z^k all outside the unit circle.
bool roots_outside_unit_circle(const std::vector<double>& coeffs);

ArimaModel fit(const TimeSeries& series, const ArimaOrder& order);

ForecastResult forecast(const ArimaModel& model, int horizon);

// ARMA simulator with 100-point burn-in, then d cumulative-sum passes.
// Deterministic for a given seed; the test-oracle generator for fit,
// adf_test and the correlograms.
TimeSeries simulate(const ArimaOrder& order, const std::vector<double>& phi,
                    const std::vector<double>& theta, double mu, double sigma,
                    int n, std::uint64_t seed);

struct NelderMeadConfig {
    int max_iter = 1000;
    double tol = 1e-8;  // on simplex value spread
};

struct NelderMeadResult {
    std::vector<double> argmin;
    double value = 0.0;
    int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& start, const NelderMeadConfig& config);

// Flat text format: "p,d,q" then phi, theta, mu, sigma2 lines at 17
// significant digits.
std::string serialize(const ArimaModel& model);
ArimaModel deserialize_arima(const std::string& text);

}  // namespace forecast

#endif
