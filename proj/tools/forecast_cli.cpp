#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "forecast/diagnostics.hpp"
#include "forecast/harness.hpp"

namespace {

using namespace forecast;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

struct IngestArgs {
    std::string input, out;
    std::string timestamp_col = "Formatted Date";
    std::string temp_col = "Temperature (C)";
    std::string frequency = "hourly";
};

void run_ingest(const IngestArgs& args) {
    TimeSeries monthly;
    if (args.frequency == "monthly") {
        monthly = read_monthly_csv(args.input);  // pass-through validation
    } else if (args.frequency == "hourly") {
        std::ifstream in(args.input);
        if (!in) throw IoError("cannot open '" + args.input + "'");
        CsvColumnMap columns;
        columns.timestamp = args.timestamp_col;
        columns.temperature = args.temp_col;
        monthly = aggregate_monthly(parse_csv(in, columns));
    } else {
        throw ConfigError("--frequency must be hourly or monthly");
    }
    write_monthly_csv(monthly, args.out);
    std::cout << monthly.size() << " monthly points, " << format_month(monthly.stamps.front())
              << " .. " << format_month(monthly.stamps.back()) << "\n";
}

struct DiagnoseArgs {
    std::string input;
    int max_lag = 20;
};

void run_diagnose(const DiagnoseArgs& args) {
    const TimeSeries series = read_monthly_csv(args.input);
    const int n = static_cast<int>(series.size());
    const int max_lag = std::min(args.max_lag, n / 4);

    int chosen_d = 1;
    std::vector<double> working = series.values;
    bool found = false;
    std::cout << "ADF (constant, no trend), 5% critical value -2.86:\n";
    for (int d = 0; d <= 2; ++d) {
        if (d > 0) working = difference(working, 1).first;
        const AdfResult adf = adf_test(working);
        std::printf("  d=%d  statistic %8.4f  lag order %d  %s\n", d, adf.statistic, adf.lag_order,
                    adf.reject_unit_root ? "stationary" : "unit root not rejected");
        if (!found && adf.reject_unit_root) {
            chosen_d = d;
            found = true;
        }
    }

    const auto stationary = difference(series.values, chosen_d).first;
    const auto gram = correlogram(stationary, std::max(1, max_lag));
    const auto [p, q] = suggest_order(gram);

    std::printf("\ncorrelogram of the d=%d series (band +/- %.4f):\n", chosen_d,
                gram.confidence_bound);
    std::printf("  lag      acf     pacf\n");
    for (int k = 1; k <= gram.max_lag; ++k) {
        const char acf_mark = std::abs(gram.acf[k]) > gram.confidence_bound ? '*' : ' ';
        const char pacf_mark = std::abs(gram.pacf[k - 1]) > gram.confidence_bound ? '*' : ' ';
        std::printf("  %3d  %7.4f%c %7.4f%c\n", k, gram.acf[k], acf_mark, gram.pacf[k - 1],
                    pacf_mark);
    }
    std::printf("\nsuggested order: (%d, %d, %d)\n", p, chosen_d, q);

    const std::string csv_path = args.input + ".correlogram.csv";
    std::ostringstream csv;
    csv << "lag,acf,pacf,bound\n";
    char buf[160];
    for (int k = 1; k <= gram.max_lag; ++k) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", k, gram.acf[k], gram.pacf[k - 1],
                      gram.confidence_bound);
        csv << buf;
    }
    write_file(csv_path, csv.str());
    std::cout << "correlogram CSV: " << csv_path << "\n";
}

struct FitArimaArgs {
    std::string input, out;
    std::string order = "auto";
};

void run_fit_arima(const FitArimaArgs& args) {
    const TimeSeries series = read_monthly_csv(args.input);
    ArimaOrder order;
    if (args.order == "auto") {
        order = resolve_auto_order(series);
    } else if (std::sscanf(args.order.c_str(), "%d,%d,%d", &order.p, &order.d, &order.q) != 3 ||
               order.p < 0 || order.d < 0 || order.q < 0) {
        throw ConfigError("--order must be 'auto' or 'p,d,q'");
    }
    const ArimaModel model = fit(series, order);
    write_file(args.out, serialize(model));
    std::printf("fitted ARIMA(%d,%d,%d)  mu %.6f  sigma2 %.6f\n", model.order.p, model.order.d,
                model.order.q, model.mu, model.sigma2);

    const int h = std::min(24, static_cast<int>(model.residuals.size()) - 1);
    const int fitted = model.order.p + model.order.q;
    if (h > fitted + 1) {
        const ResidualReport residuals = ljung_box(model.residuals, std::max(fitted + 1, 12), fitted);
        std::printf("residuals: mean %.6f (%s), Ljung-Box p %.4f (%s)\n", residuals.residual_mean,
                    residuals.mean_within_tolerance ? "zero-mean ok" : "nonzero mean",
                    residuals.ljung_box_p,
                    residuals.uncorrelated ? "uncorrelated" : "correlated");
    }
}

struct TrainNetArgs {
    std::string input, out;
    NetworkConfig network;
    TrainingConfig training;
};

void run_train_net(const TrainNetArgs& args) {
    const TimeSeries series = read_monthly_csv(args.input);
    auto [normalized, norm] = zscore_normalize(series);
    NetworkConfig net_config = args.network;
    net_config.lookback = args.training.lookback;
    const auto windows = make_windows(normalized, args.training.lookback);
    Network network(net_config, args.training.seed);
    const TrainResult history = train(network, windows, args.training);

    char buf[96];
    std::snprintf(buf, sizeof(buf), "norm %.17g %.17g\n", norm.mean, norm.sample_std);
    write_file(args.out, buf + serialize(network));

    std::ostringstream losses;
    losses << "epoch,mse\n";
    for (std::size_t e = 0; e < history.epoch_mse.size(); ++e) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", e + 1, history.epoch_mse[e]);
        losses << buf;
    }
    write_file(args.out + ".loss.csv", losses.str());
    std::printf("trained %zu epochs, final MSE %.6g (normalized units)\n", history.epoch_mse.size(),
                history.epoch_mse.back());
}

struct ForecastArgs {
    std::string model, input, out;
    int horizon = 12;
};

void run_forecast(const ForecastArgs& args) {
    const TimeSeries series = read_monthly_csv(args.input);
    const std::string text = read_file(args.model);
    ForecastResult result;
    if (text.rfind("norm ", 0) == 0) {
        const auto nl = text.find('\n');
        NormalizationParams norm;
        if (std::sscanf(text.c_str(), "norm %lf %lf", &norm.mean, &norm.sample_std) != 2) {
            throw ParseError("network file: bad norm line");
        }
        Network network = deserialize_network(text.substr(nl + 1));
        std::vector<double> normalized = series.values;
        for (double& v : normalized) v = (v - norm.mean) / norm.sample_std;
        result = forecast_recursive(network, normalized, args.horizon, norm);
    } else {
        const ArimaModel model = deserialize_arima(text);
        result = forecast::forecast(model, args.horizon);
    }

    std::ostringstream csv;
    csv << "timestamp,value\n";
    char buf[96];
    for (int h = 0; h < result.horizon; ++h) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g\n",
                      format_month(series.stamps.back() + 1 + h).c_str(),
                      result.point_forecasts[h]);
        csv << buf;
    }
    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        write_file(args.out, csv.str());
        std::cout << result.horizon << " forecasts written to " << args.out << "\n";
    }
}

struct CompareArgs {
    std::string manifest;
    std::string out_dir;
};

void run_compare(const CompareArgs& args) {
    const RunManifest manifest = parse_manifest(args.manifest);
    const EvaluationReport report = run_comparison(manifest);
    const std::string out_dir = args.out_dir.empty() ? args.manifest + ".report" : args.out_dir;
    emit_plot_data(report, out_dir);
    std::cout << format_summary(report);
    std::cout << "plot CSVs: " << out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temperature forecasting toolkit: ARIMA and conv+LSTM pipelines"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "hourly weather CSV -> monthly series file");
    ingest_cmd->add_option("--input", ingest.input, "raw CSV path")->required();
    ingest_cmd->add_option("--out", ingest.out, "output monthly CSV path")->required();
    ingest_cmd->add_option("--timestamp-col", ingest.timestamp_col, "timestamp column name");
    ingest_cmd->add_option("--temp-col", ingest.temp_col, "temperature column name");
    ingest_cmd->add_option("--frequency", ingest.frequency, "hourly (default) or monthly pass-through");

    DiagnoseArgs diagnose;
    auto* diagnose_cmd = app.add_subcommand("diagnose", "ADF + correlogram + order suggestion");
    diagnose_cmd->add_option("--input", diagnose.input, "monthly series CSV")->required();
    diagnose_cmd->add_option("--max-lag", diagnose.max_lag, "correlogram depth");

    FitArimaArgs fit_arima;
    auto* fit_cmd = app.add_subcommand("fit-arima", "fit an ARIMA model");
    fit_cmd->add_option("--input", fit_arima.input, "monthly series CSV")->required();
    fit_cmd->add_option("--out", fit_arima.out, "model file path")->required();
    fit_cmd->add_option("--order", fit_arima.order, "'auto' or 'p,d,q'");

    TrainNetArgs train_net;
    auto* train_cmd = app.add_subcommand("train-net", "train the conv+LSTM forecaster");
    train_cmd->add_option("--input", train_net.input, "monthly series CSV")->required();
    train_cmd->add_option("--out", train_net.out, "network file path")->required();
    train_cmd->add_option("--epochs", train_net.training.epochs, "max epochs");
    train_cmd->add_option("--lr", train_net.training.learning_rate, "Adam learning rate");
    train_cmd->add_option("--batch", train_net.training.batch_size, "mini-batch size");
    train_cmd->add_option("--seed", train_net.training.seed, "rng seed");
    train_cmd->add_option("--lookback", train_net.training.lookback, "input window length");
    train_cmd->add_option("--patience", train_net.training.patience, "early-stop patience");
    train_cmd->add_option("--filters", train_net.network.conv_filters, "conv filters per layer");
    train_cmd->add_option("--hidden", train_net.network.hidden_size, "LSTM hidden size");

    ForecastArgs forecast_args;
    auto* forecast_cmd = app.add_subcommand("forecast", "multi-step forecast from a saved model");
    forecast_cmd->add_option("--model", forecast_args.model, "arima or network model file")->required();
    forecast_cmd->add_option("--input", forecast_args.input, "monthly series CSV")->required();
    forecast_cmd->add_option("--horizon", forecast_args.horizon, "steps ahead");
    forecast_cmd->add_option("--out", forecast_args.out, "forecast CSV (stdout if omitted)");

    CompareArgs compare;
    auto* compare_cmd = app.add_subcommand("compare", "hold-out benchmark of both models");
    compare_cmd->add_option("--manifest", compare.manifest, "run manifest path")->required();
    compare_cmd->add_option("--out-dir", compare.out_dir, "report directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints usage, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*ingest_cmd) run_ingest(ingest);
        if (*diagnose_cmd) run_diagnose(diagnose);
        if (*fit_cmd) run_fit_arima(fit_arima);
        if (*train_cmd) run_train_net(train_net);
        if (*forecast_cmd) run_forecast(forecast_args);
        if (*compare_cmd) run_compare(compare);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
