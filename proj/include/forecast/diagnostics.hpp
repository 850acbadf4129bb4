#ifndef FORECAST_DIAGNOSTICS_HPP
#define FORECAST_DIAGNOSTICS_HPP

#include <map>
#include <vector>

#include "forecast/errors.hpp"

namespace forecast {

// ACF/PACF per lag plus the white-noise confidence band.
struct Correlogram {
    int max_lag = 0;
    std::vector<double> acf;   // lags 0..max_lag
    std::vector<double> pacf;  // lags 1..max_lag; pacf[k-1] is lag k
    double confidence_bound = 0.0;
};

enum class AdfLevel { one_percent, five_percent, ten_percent };

struct AdfResult {
    double statistic = 0.0;
    int lag_order = 0;
    std::map<AdfLevel, double> critical_values;
    AdfLevel level = AdfLevel::five_percent;
    bool reject_unit_root = false;
};

struct ResidualReport {
    double residual_mean = 0.0;
    bool mean_within_tolerance = false;
    double ljung_box_statistic = 0.0;
    double ljung_box_p = 0.0;
    bool uncorrelated = false;  // at level 0.05
};

// Biased (n-denominator) autocorrelation estimator, lags 0..max_lag.
std::vector<double> acf(const std::vector<double>& series, int max_lag);

// Partial autocorrelations via Durbin-Levinson over the acf, lags 1..max_lag.
std::vector<double> pacf(const std::vector<double>& series, int max_lag);

// White-noise band half-width 1.96/sqrt(n).
double confidence_bound(int n);

Correlogram correlogram(const std::vector<double>& series, int max_lag);

// (p, q) from the last lag before PACF/ACF first fall inside the band.
// Both capped at 5.
std::pair<int, int> suggest_order(const Correlogram& gram);

// Augmented Dickey-Fuller, constant / no trend, lag order by minimum AIC
// over 0..max_lag. max_lag < 0 selects the Schwert rule default.
AdfResult adf_test(const std::vector<double>& series, int max_lag = -1,
                   AdfLevel level = AdfLevel::five_percent);

ResidualReport ljung_box(const std::vector<double>& residuals, int h, int fitted_params);

// Regularized lower incomplete gamma P(a, x); chi-square CDF with k dof at
// x is P(k/2, x/2).
double gamma_p(double a, double x);
double chi_square_sf(double x, int dof);

}  // namespace forecast

#endif
