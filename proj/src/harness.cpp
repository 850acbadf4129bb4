#include "forecast/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "forecast/diagnostics.hpp"

namespace forecast {

std::pair<TimeSeries, TimeSeries> split_holdout(const TimeSeries& series, int h) {
    if (h < 1) throw DomainError("hold-out length must be >= 1");
    if (static_cast<int>(series.size()) <= h) {
        throw InsufficientData("series of length " + std::to_string(series.size()) +
                               " cannot spare a hold-out of " + std::to_string(h));
    }
    const std::size_t cut = series.size() - h;
    TimeSeries train, test;
    train.frequency = test.frequency = series.frequency;
    train.stamps.assign(series.stamps.begin(), series.stamps.begin() + cut);
    train.values.assign(series.values.begin(), series.values.begin() + cut);
    test.stamps.assign(series.stamps.begin() + cut, series.stamps.end());
    test.values.assign(series.values.begin() + cut, series.values.end());
    return {std::move(train), std::move(test)};
}

double mse(const std::vector<double>& actual, const std::vector<double>& predicted) {
    if (actual.empty() || actual.size() != predicted.size()) {
        throw ShapeError("mse requires equal non-empty lengths");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - predicted[i];
        sum += d * d;
    }
    return sum / actual.size();
}

std::vector<double> seasonal_naive(const TimeSeries& train, int h) {
    const int n = static_cast<int>(train.size());
    if (n < 12 || h > 12 || h < 1) {
        throw InsufficientData("seasonal_naive needs 12 train months and h <= 12");
    }
    // Test month i sits 1..h steps past the train end; the same calendar
    // month a year earlier is train index n - 12 + i.
    std::vector<double> out(h);
    for (int i = 0; i < h; ++i) out[i] = train.values[n - 12 + i];
    return out;
}

namespace {

[[noreturn]] void manifest_error(const std::string& origin, const std::string& what) {
    throw ConfigError("manifest " + origin + ": " + what);
}

long parse_long(const std::string& origin, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos == value.size()) return v;
    } catch (const std::exception&) {
    }
    manifest_error(origin, "key '" + key + "' expects an integer, got '" + value + "'");
}

double parse_double(const std::string& origin, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos == value.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    manifest_error(origin, "key '" + key + "' expects a number, got '" + value + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

RunManifest parse_manifest_text(const std::string& text, const std::string& origin) {
    RunManifest manifest;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            if (section != "data" && section != "arima" && section != "network" &&
                section != "training" && section != "evaluation") {
                manifest_error(origin, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            manifest_error(origin, "line " + std::to_string(lineno) + " is not 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qualified = section + "." + key;

        if (qualified == "data.path") {
            manifest.data_path = value;
        } else if (qualified == "arima.order") {
            manifest.arima_order = value;
        } else if (qualified == "network.conv_filters") {
            manifest.network.conv_filters = static_cast<int>(parse_long(origin, qualified, value));
        } else if (qualified == "network.kernel_size") {
            manifest.network.kernel_size = static_cast<int>(parse_long(origin, qualified, value));
        } else if (qualified == "network.pool_size") {
            manifest.network.pool_size = static_cast<int>(parse_long(origin, qualified, value));
        } else if (qualified == "network.pool_mode") {
            if (value == "max") {
                manifest.network.pool_mode = PoolMode::max;
            } else if (value == "average") {
                manifest.network.pool_mode = PoolMode::average;
            } else {
                manifest_error(origin, "network.pool_mode must be max or average");
            }
        } else if (qualified == "network.hidden_size") {
            manifest.network.hidden_size = static_cast<int>(parse_long(origin, qualified, value));
        } else if (qualified == "training.epochs") {
            manifest.training.epochs = static_cast<int>(parse_long(origin, qualified, value));
        } else if (qualified == "training.learning_rate") {
            manifest.training.learning_rate = parse_double(origin, qualified, value);
        } else if (qualified == "training.batch_size") {
            manifest.training.batch_size = static_cast<int>(parse_long(origin, qualified, value));
        } else if (qualified == "training.seed") {
            manifest.training.seed = static_cast<std::uint64_t>(parse_long(origin, qualified, value));
        } else if (qualified == "training.lookback") {
            manifest.training.lookback = static_cast<int>(parse_long(origin, qualified, value));
        } else if (qualified == "training.patience") {
            manifest.training.patience = static_cast<int>(parse_long(origin, qualified, value));
        } else if (qualified == "evaluation.horizon") {
            manifest.horizon = static_cast<int>(parse_long(origin, qualified, value));
        } else {
            manifest_error(origin, "unknown key '" + qualified + "'");
        }
    }
    if (manifest.data_path.empty()) manifest_error(origin, "data.path is required");
    if (manifest.training.learning_rate < 0.0) manifest_error(origin, "training.learning_rate must be >= 0");
    if (manifest.training.epochs < 1 || manifest.training.batch_size < 1 ||
        manifest.training.patience < 1 || manifest.training.lookback < 1) {
        manifest_error(origin, "training counts must be positive");
    }
    if (manifest.horizon < 1) manifest_error(origin, "evaluation.horizon must be >= 1");
    if (manifest.arima_order != "auto") {
        int p, d, q;
        if (std::sscanf(manifest.arima_order.c_str(), "%d,%d,%d", &p, &d, &q) != 3 ||
            p < 0 || d < 0 || q < 0) {
            manifest_error(origin, "arima.order must be 'auto' or 'p,d,q'");
        }
    }
    manifest.network.lookback = manifest.training.lookback;
    return manifest;
}

RunManifest parse_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    RunManifest manifest = parse_manifest_text(text.str(), path);
    // data.path is relative to the manifest's directory.
    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty() && std::filesystem::path(manifest.data_path).is_relative()) {
        manifest.data_path = (dir / manifest.data_path).string();
    }
    return manifest;
}

ArimaOrder resolve_auto_order(const TimeSeries& train) {
    ArimaOrder order;
    order.d = 1;  // fallback when no candidate rejects the unit root
    std::vector<double> working = train.values;
    for (int d = 0; d <= 2; ++d) {
        if (d > 0) {
            auto [diffed, record] = difference(working, 1);
            working = std::move(diffed);
        }
        const AdfResult adf = adf_test(working);
        if (adf.reject_unit_root) {
            order.d = d;
            break;
        }
    }
    auto [stationary, record] = difference(train.values, order.d);
    const int max_lag = std::min(20, static_cast<int>(stationary.size()) / 4);
    const auto gram = correlogram(stationary, max_lag);
    const auto [p, q] = suggest_order(gram);
    order.p = p;
    order.q = q;
    return order;
}

EvaluationReport run_comparison(const RunManifest& manifest) {
    TimeSeries series;
    try {
        series = read_monthly_csv(manifest.data_path);
    } catch (const UserError& e) {
        throw ConfigError(std::string("loading data: ") + e.what());
    }
    auto [train, test] = split_holdout(series, manifest.horizon);

    // ARIMA path works in raw degrees C; the CSS objective is scale-free.
    ArimaOrder order;
    if (manifest.arima_order == "auto") {
        order = resolve_auto_order(train);
    } else {
        std::sscanf(manifest.arima_order.c_str(), "%d,%d,%d", &order.p, &order.d, &order.q);
    }
    const ArimaModel arima_model = fit(train, order);
    const ForecastResult arima_fc = forecast(arima_model, manifest.horizon);

    // Network path trains on z-scored values and reports in degrees C.
    auto [normalized, norm] = zscore_normalize(train);
    const auto windows = make_windows(normalized, manifest.training.lookback);
    Network network(manifest.network, manifest.training.seed);
    forecast::train(network, windows, manifest.training);
    const ForecastResult deep_fc =
        forecast_recursive(network, normalized.values, manifest.horizon, norm);

    const auto naive_fc = seasonal_naive(train, manifest.horizon);

    EvaluationReport report;
    report.test_stamps = test.stamps;
    report.models.push_back({"arima", arima_fc.point_forecasts, test.values,
                             mse(test.values, arima_fc.point_forecasts)});
    report.models.push_back({"deep", deep_fc.point_forecasts, test.values,
                             mse(test.values, deep_fc.point_forecasts)});
    report.models.push_back({"seasonal_naive", naive_fc, test.values, mse(test.values, naive_fc)});

    const auto best = std::min_element(report.models.begin(), report.models.end(),
                                       [](const auto& a, const auto& b) { return a.mse < b.mse; });
    report.winner = best->name;
    const double arima_mse = report.models[0].mse;
    const double deep_mse = report.models[1].mse;
    const double lo = std::min(arima_mse, deep_mse), hi = std::max(arima_mse, deep_mse);
    report.relative_gap = hi > 0.0 ? (hi - lo) / hi : 0.0;
    return report;
}

void emit_plot_data(const EvaluationReport& report, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    char buf[64];
    auto write_value = [&](std::ofstream& out, double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    for (const auto& model : report.models) {
        const auto path = std::filesystem::path(out_dir) / (model.name + ".csv");
        std::ofstream out(path);
        if (!out) throw IoError("cannot write '" + path.string() + "'");
        out << "month,actual,forecast\n";
        for (std::size_t i = 0; i < model.forecasts.size(); ++i) {
            out << format_month(report.test_stamps[i]) << ',';
            write_value(out, model.actuals[i]);
            out << ',';
            write_value(out, model.forecasts[i]);
            out << '\n';
        }
        if (!out) throw IoError("write failed for '" + path.string() + "'");
    }
    const auto summary_path = std::filesystem::path(out_dir) / "summary.csv";
    std::ofstream out(summary_path);
    if (!out) throw IoError("cannot write '" + summary_path.string() + "'");
    out << "model,mse\n";
    for (const auto& model : report.models) {
        out << model.name << ',';
        write_value(out, model.mse);
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + summary_path.string() + "'");
}

std::string format_summary(const EvaluationReport& report) {
    std::ostringstream out;
    out << "model            MSE (degC^2)\n";
    char buf[64];
    for (const auto& model : report.models) {
        std::snprintf(buf, sizeof(buf), "%-16s %.4f\n", model.name.c_str(), model.mse);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "winner: %s (relative gap arima/deep: %.1f%%)\n",
                  report.winner.c_str(), 100.0 * report.relative_gap);
    out << buf;
    return out.str();
}

}  // namespace forecast
