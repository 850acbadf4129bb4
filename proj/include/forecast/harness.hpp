#ifndef FORECAST_HARNESS_HPP
#define FORECAST_HARNESS_HPP

#include <string>
#include <vector>

#include "forecast/arima.hpp"
#include "forecast/neural.hpp"
#include "forecast/series.hpp"

namespace forecast {

struct ModelEvaluation {
    std::string name;
    std::vector<double> forecasts;  // degrees C
    std::vector<double> actuals;    // degrees C
    double mse = 0.0;
};

struct EvaluationReport {
    std::vector<ModelEvaluation> models;  // arima, deep, seasonal_naive
    std::vector<Stamp> test_stamps;
    std::string winner;        // argmin of mse over all entries
    double relative_gap = 0.0;  // between the arima and deep pipelines
};

std::pair<TimeSeries, TimeSeries> split_holdout(const TimeSeries& series, int h = 12);

double mse(const std::vector<double>& actual, const std::vector<double>& predicted);

// Forecast month m = observed value for the same calendar month one year
// earlier. Needs h <= 12.
std::vector<double> seasonal_naive(const TimeSeries& train, int h);

// Run manifest: plain-text key/value file with [section] headers. Every key
// has a default; unknown keys are fatal.
struct RunManifest {
    std::string data_path;
    // "auto" resolves d by unit-root testing and (p, q) from the correlogram.
    std::string arima_order = "auto";
    NetworkConfig network;
    TrainingConfig training;
    int horizon = 12;
};

RunManifest parse_manifest(const std::string& path);
RunManifest parse_manifest_text(const std::string& text, const std::string& origin);

// Auto order selection: d = smallest in {0,1,2} whose differenced series
// rejects the unit root at 5% (falls back to 1 if none do), then (p, q)
// from suggest_order on the d-differenced series.
ArimaOrder resolve_auto_order(const TimeSeries& train);

EvaluationReport run_comparison(const RunManifest& manifest);

void emit_plot_data(const EvaluationReport& report, const std::string& out_dir);

std::string format_summary(const EvaluationReport& report);

}  // namespace forecast

#endif
