#ifndef FORECAST_NEURAL_HPP
#define FORECAST_NEURAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "forecast/arima.hpp"
#include "forecast/series.hpp"

namespace forecast {

// Time-major activation grid: values[t * channels + c].
struct FeatureMap {
    int steps = 0;
    int channels = 0;
    std::vector<double> values;

    FeatureMap() = default;
    FeatureMap(int s, int ch) : steps(s), channels(ch), values(static_cast<std::size_t>(s) * ch, 0.0) {}

    double& at(int t, int c) { return values[static_cast<std::size_t>(t) * channels + c]; }
    double at(int t, int c) const { return values[static_cast<std::size_t>(t) * channels + c]; }
};

// Valid-padding, stride-1 cross-correlation followed by ReLU.
struct ConvLayer {
    int kernel_size = 0;
    int in_channels = 0;
    int out_channels = 0;
    std::vector<double> weights;  // [(o * in + c) * k + j]
    std::vector<double> bias;
    std::vector<double> grad_weights;
    std::vector<double> grad_bias;

    // forward caches
    FeatureMap input;
    FeatureMap preact;

    double& w(int o, int c, int j) {
        return weights[(static_cast<std::size_t>(o) * in_channels + c) * kernel_size + j];
    }
    double w(int o, int c, int j) const {
        return weights[(static_cast<std::size_t>(o) * in_channels + c) * kernel_size + j];
    }

    FeatureMap forward(const FeatureMap& in);
    FeatureMap backward(const FeatureMap& grad_out);
};

enum class PoolMode { max, average };

// Non-overlapping pooling along time; a trailing remainder shorter than
// `size` is dropped.
struct PoolLayer {
    int size = 2;
    PoolMode mode = PoolMode::max;

    int input_steps = 0;
    int channels = 0;
    std::vector<int> argmax;  // per output cell, for max mode

    FeatureMap forward(const FeatureMap& in);
    FeatureMap backward(const FeatureMap& grad_out);
};

struct LstmLayer {
    int input_size = 0;
    int hidden_size = 0;
    // Each gate maps [x_t, h_prev] -> hidden_size values; row-major
    // [h * (input_size + hidden_size) + j].
    std::vector<double> w_f, w_i, w_g, w_o;
    std::vector<double> b_f, b_i, b_g, b_o;
    std::vector<double> gw_f, gw_i, gw_g, gw_o;
    std::vector<double> gb_f, gb_i, gb_g, gb_o;

    // per-step forward caches
    struct StepCache {
        std::vector<double> x, h_prev, c_prev;
        std::vector<double> f, i, g, o, c, tanh_c;
    };
    std::vector<StepCache> steps;

    FeatureMap forward(const FeatureMap& in);
    FeatureMap backward(const FeatureMap& grad_h);
};

// Single gate-by-gate cell update; forward() loops over this.
std::pair<std::vector<double>, std::vector<double>> lstm_step(
    const std::vector<double>& x, const std::vector<double>& h_prev,
    const std::vector<double>& c_prev, const LstmLayer& layer);

struct DenseLayer {
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> grad_weights;
    double grad_bias = 0.0;

    std::vector<double> input;

    double forward(const std::vector<double>& in);
    std::vector<double> backward(double grad_out);
};

struct NetworkConfig {
    int conv_filters = 16;
    int kernel_size = 3;
    int pool_size = 2;
    PoolMode pool_mode = PoolMode::max;
    int hidden_size = 32;
    int lookback = 12;
};

struct TrainingConfig {
    int epochs = 500;
    double learning_rate = 1e-3;
    int batch_size = 16;
    std::uint64_t seed = 0;
    int lookback = 12;
    int patience = 50;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long t = 0;
};

struct AdamHyper {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

void adam_step(std::vector<double*>& params, const std::vector<double*>& grads,
               AdamState& state, const AdamHyper& hyper);

// conv -> conv -> pool -> lstm -> lstm -> dense(1), per the architecture
// config. All parameters double precision.
class Network {
public:
    Network() = default;
    Network(const NetworkConfig& config, std::uint64_t seed);

    double forward(const std::vector<double>& window);
    // Gradient of 0.5 * (pred - target)^2, accumulated into the grad slots
    // of every layer. Requires a recorded forward pass.
    void backward(double target);

    void zero_grads();
    std::vector<double*> parameters();
    std::vector<double*> gradients();

    const NetworkConfig& config() const { return config_; }

    ConvLayer conv1, conv2;
    PoolLayer pool;
    LstmLayer lstm1, lstm2;
    DenseLayer dense;

private:
    NetworkConfig config_;
    bool forward_recorded_ = false;
    double last_pred_ = 0.0;
};

struct TrainResult {
    std::vector<double> epoch_mse;  // mean training MSE per epoch
};

TrainResult train(Network& network, const SupervisedWindowSet& windows, const TrainingConfig& config);

ForecastResult forecast_recursive(Network& network, const std::vector<double>& history,
                                  int horizon, const NormalizationParams& params);

double gradient_check(Network& network, const std::vector<double>& window, double target);

std::string serialize(const Network& network);
Network deserialize_network(const std::string& text);

}  // namespace forecast

#endif
