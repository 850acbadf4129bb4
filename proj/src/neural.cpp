#include "forecast/neural.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "forecast/rng.hpp"

namespace forecast {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

FeatureMap ConvLayer::forward(const FeatureMap& in) {
    if (in.channels != in_channels) {
        throw ShapeError("conv input has " + std::to_string(in.channels) + " channels, layer expects " +
                         std::to_string(in_channels));
    }
    if (in.steps < kernel_size) {
        throw ShapeError("conv input of " + std::to_string(in.steps) + " steps shorter than kernel " +
                         std::to_string(kernel_size));
    }
    input = in;
    const int out_steps = in.steps - kernel_size + 1;
    preact = FeatureMap(out_steps, out_channels);
    FeatureMap out(out_steps, out_channels);
    for (int t = 0; t < out_steps; ++t) {
        for (int o = 0; o < out_channels; ++o) {
            double v = bias[o];
            for (int c = 0; c < in_channels; ++c) {
                for (int j = 0; j < kernel_size; ++j) {
                    v += w(o, c, j) * in.at(t + j, c);
                }
            }
            preact.at(t, o) = v;
            out.at(t, o) = v > 0.0 ? v : 0.0;
        }
    }
    return out;
}

FeatureMap ConvLayer::backward(const FeatureMap& grad_out) {
    FeatureMap grad_in(input.steps, in_channels);
    for (int t = 0; t < grad_out.steps; ++t) {
        for (int o = 0; o < out_channels; ++o) {
            if (preact.at(t, o) <= 0.0) continue;  // ReLU gate
            const double d = grad_out.at(t, o);
            grad_bias[o] += d;
            for (int c = 0; c < in_channels; ++c) {
                for (int j = 0; j < kernel_size; ++j) {
                    grad_weights[(static_cast<std::size_t>(o) * in_channels + c) * kernel_size + j] +=
                        d * input.at(t + j, c);
                    grad_in.at(t + j, c) += d * w(o, c, j);
                }
            }
        }
    }
    return grad_in;
}

FeatureMap PoolLayer::forward(const FeatureMap& in) {
    if (in.steps < size) {
        throw ShapeError("pool input of " + std::to_string(in.steps) + " steps shorter than window " +
                         std::to_string(size));
    }
    input_steps = in.steps;
    channels = in.channels;
    const int out_steps = in.steps / size;
    FeatureMap out(out_steps, channels);
    argmax.assign(static_cast<std::size_t>(out_steps) * channels, 0);
    for (int t = 0; t < out_steps; ++t) {
        for (int c = 0; c < channels; ++c) {
            if (mode == PoolMode::max) {
                int best = t * size;
                double v = in.at(best, c);
                for (int j = 1; j < size; ++j) {
                    if (in.at(t * size + j, c) > v) {
                        v = in.at(t * size + j, c);
                        best = t * size + j;
                    }
                }
                out.at(t, c) = v;
                argmax[static_cast<std::size_t>(t) * channels + c] = best;
            } else {
                double sum = 0.0;
                for (int j = 0; j < size; ++j) sum += in.at(t * size + j, c);
                out.at(t, c) = sum / size;
            }
        }
    }
    return out;
}

FeatureMap PoolLayer::backward(const FeatureMap& grad_out) {
    FeatureMap grad_in(input_steps, channels);
    for (int t = 0; t < grad_out.steps; ++t) {
        for (int c = 0; c < channels; ++c) {
            const double d = grad_out.at(t, c);
            if (mode == PoolMode::max) {
                grad_in.at(argmax[static_cast<std::size_t>(t) * channels + c], c) += d;
            } else {
                for (int j = 0; j < size; ++j) grad_in.at(t * size + j, c) += d / size;
            }
        }
    }
    return grad_in;
}

std::pair<std::vector<double>, std::vector<double>> lstm_step(
    const std::vector<double>& x, const std::vector<double>& h_prev,
    const std::vector<double>& c_prev, const LstmLayer& layer) {
    const int in = layer.input_size, hidden = layer.hidden_size;
    if (static_cast<int>(x.size()) != in || static_cast<int>(h_prev.size()) != hidden ||
        static_cast<int>(c_prev.size()) != hidden) {
        throw ShapeError("lstm_step input shapes inconsistent with layer");
    }
    const int width = in + hidden;
    auto gate = [&](const std::vector<double>& w, const std::vector<double>& b, int h) {
        double v = b[h];
        const double* row = w.data() + static_cast<std::size_t>(h) * width;
        for (int j = 0; j < in; ++j) v += row[j] * x[j];
        for (int j = 0; j < hidden; ++j) v += row[in + j] * h_prev[j];
        return v;
    };
    std::vector<double> h(hidden), c(hidden);
    for (int j = 0; j < hidden; ++j) {
        const double f = sigmoid(gate(layer.w_f, layer.b_f, j));
        const double i = sigmoid(gate(layer.w_i, layer.b_i, j));
        const double g = std::tanh(gate(layer.w_g, layer.b_g, j));
        const double o = sigmoid(gate(layer.w_o, layer.b_o, j));
        c[j] = f * c_prev[j] + i * g;
        h[j] = o * std::tanh(c[j]);
    }
    return {std::move(h), std::move(c)};
}

FeatureMap LstmLayer::forward(const FeatureMap& in) {
    if (in.channels != input_size) {
        throw ShapeError("lstm input has " + std::to_string(in.channels) + " channels, layer expects " +
                         std::to_string(input_size));
    }
    const int hidden = hidden_size;
    const int width = input_size + hidden;
    steps.clear();
    steps.resize(in.steps);
    std::vector<double> h(hidden, 0.0), c(hidden, 0.0);
    FeatureMap out(in.steps, hidden);
    for (int t = 0; t < in.steps; ++t) {
        StepCache& cache = steps[t];
        cache.x.assign(in.values.begin() + static_cast<std::size_t>(t) * input_size,
                       in.values.begin() + static_cast<std::size_t>(t + 1) * input_size);
        cache.h_prev = h;
        cache.c_prev = c;
        cache.f.resize(hidden);
        cache.i.resize(hidden);
        cache.g.resize(hidden);
        cache.o.resize(hidden);
        cache.c.resize(hidden);
        cache.tanh_c.resize(hidden);
        auto gate = [&](const std::vector<double>& w, const std::vector<double>& b, int j) {
            double v = b[j];
            const double* row = w.data() + static_cast<std::size_t>(j) * width;
            for (int k = 0; k < input_size; ++k) v += row[k] * cache.x[k];
            for (int k = 0; k < hidden; ++k) v += row[input_size + k] * cache.h_prev[k];
            return v;
        };
        for (int j = 0; j < hidden; ++j) {
            cache.f[j] = sigmoid(gate(w_f, b_f, j));
            cache.i[j] = sigmoid(gate(w_i, b_i, j));
            cache.g[j] = std::tanh(gate(w_g, b_g, j));
            cache.o[j] = sigmoid(gate(w_o, b_o, j));
            cache.c[j] = cache.f[j] * cache.c_prev[j] + cache.i[j] * cache.g[j];
            cache.tanh_c[j] = std::tanh(cache.c[j]);
            h[j] = cache.o[j] * cache.tanh_c[j];
            c[j] = cache.c[j];
            out.at(t, j) = h[j];
        }
    }
    return out;
}

FeatureMap LstmLayer::backward(const FeatureMap& grad_h_seq) {
    const int hidden = hidden_size;
    const int width = input_size + hidden;
    const int T = static_cast<int>(steps.size());
    FeatureMap grad_in(T, input_size);
    std::vector<double> dh_next(hidden, 0.0), dc_next(hidden, 0.0);
    std::vector<double> dpre_f(hidden), dpre_i(hidden), dpre_g(hidden), dpre_o(hidden);
    for (int t = T - 1; t >= 0; --t) {
        const StepCache& cache = steps[t];
        for (int j = 0; j < hidden; ++j) {
            const double dh = grad_h_seq.at(t, j) + dh_next[j];
            const double dc = dc_next[j] + dh * cache.o[j] * (1.0 - cache.tanh_c[j] * cache.tanh_c[j]);
            dpre_o[j] = dh * cache.tanh_c[j] * cache.o[j] * (1.0 - cache.o[j]);
            dpre_f[j] = dc * cache.c_prev[j] * cache.f[j] * (1.0 - cache.f[j]);
            dpre_i[j] = dc * cache.g[j] * cache.i[j] * (1.0 - cache.i[j]);
            dpre_g[j] = dc * cache.i[j] * (1.0 - cache.g[j] * cache.g[j]);
            dc_next[j] = dc * cache.f[j];
        }
        std::fill(dh_next.begin(), dh_next.end(), 0.0);
        auto accumulate = [&](const std::vector<double>& w, std::vector<double>& gw,
                              std::vector<double>& gb, const std::vector<double>& dpre) {
            for (int j = 0; j < hidden; ++j) {
                const double d = dpre[j];
                if (d == 0.0) continue;
                gb[j] += d;
                double* grow = gw.data() + static_cast<std::size_t>(j) * width;
                const double* row = w.data() + static_cast<std::size_t>(j) * width;
                for (int k = 0; k < input_size; ++k) {
                    grow[k] += d * cache.x[k];
                    grad_in.at(t, k) += d * row[k];
                }
                for (int k = 0; k < hidden; ++k) {
                    grow[input_size + k] += d * cache.h_prev[k];
                    dh_next[k] += d * row[input_size + k];
                }
            }
        };
        accumulate(w_f, gw_f, gb_f, dpre_f);
        accumulate(w_i, gw_i, gb_i, dpre_i);
        accumulate(w_g, gw_g, gb_g, dpre_g);
        accumulate(w_o, gw_o, gb_o, dpre_o);
    }
    return grad_in;
}

double DenseLayer::forward(const std::vector<double>& in) {
    if (in.size() != weights.size()) throw ShapeError("dense input size mismatch");
    input = in;
    double v = bias;
    for (std::size_t j = 0; j < in.size(); ++j) v += weights[j] * in[j];
    return v;
}

std::vector<double> DenseLayer::backward(double grad_out) {
    grad_bias += grad_out;
    std::vector<double> grad_in(weights.size());
    for (std::size_t j = 0; j < weights.size(); ++j) {
        grad_weights[j] += grad_out * input[j];
        grad_in[j] = grad_out * weights[j];
    }
    return grad_in;
}

namespace {

void init_matrix(std::vector<double>& w, int fan_in, int fan_out, Rng& rng) {
    const double r = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& v : w) v = rng.uniform(-r, r);
}

void setup_conv(ConvLayer& layer, int in_ch, int out_ch, int k) {
    layer.kernel_size = k;
    layer.in_channels = in_ch;
    layer.out_channels = out_ch;
    layer.weights.assign(static_cast<std::size_t>(out_ch) * in_ch * k, 0.0);
    layer.bias.assign(out_ch, 0.0);
    layer.grad_weights.assign(layer.weights.size(), 0.0);
    layer.grad_bias.assign(out_ch, 0.0);
}

void setup_lstm(LstmLayer& layer, int in, int hidden) {
    layer.input_size = in;
    layer.hidden_size = hidden;
    const std::size_t wsize = static_cast<std::size_t>(hidden) * (in + hidden);
    for (auto* w : {&layer.w_f, &layer.w_i, &layer.w_g, &layer.w_o}) w->assign(wsize, 0.0);
    for (auto* g : {&layer.gw_f, &layer.gw_i, &layer.gw_g, &layer.gw_o}) g->assign(wsize, 0.0);
    for (auto* b : {&layer.b_f, &layer.b_i, &layer.b_g, &layer.b_o}) b->assign(hidden, 0.0);
    for (auto* g : {&layer.gb_f, &layer.gb_i, &layer.gb_g, &layer.gb_o}) g->assign(hidden, 0.0);
}

}  // namespace

Network::Network(const NetworkConfig& config, std::uint64_t seed) : config_(config) {
    setup_conv(conv1, 1, config.conv_filters, config.kernel_size);
    setup_conv(conv2, config.conv_filters, config.conv_filters, config.kernel_size);
    pool.size = config.pool_size;
    pool.mode = config.pool_mode;
    setup_lstm(lstm1, config.conv_filters, config.hidden_size);
    setup_lstm(lstm2, config.hidden_size, config.hidden_size);
    dense.weights.assign(config.hidden_size, 0.0);
    dense.grad_weights.assign(config.hidden_size, 0.0);

    Rng rng(seed);
    init_matrix(conv1.weights, conv1.in_channels * conv1.kernel_size,
                conv1.out_channels * conv1.kernel_size, rng);
    init_matrix(conv2.weights, conv2.in_channels * conv2.kernel_size,
                conv2.out_channels * conv2.kernel_size, rng);
    for (auto* w : {&lstm1.w_f, &lstm1.w_i, &lstm1.w_g, &lstm1.w_o}) {
        init_matrix(*w, lstm1.input_size + lstm1.hidden_size, lstm1.hidden_size, rng);
    }
    for (auto* w : {&lstm2.w_f, &lstm2.w_i, &lstm2.w_g, &lstm2.w_o}) {
        init_matrix(*w, lstm2.input_size + lstm2.hidden_size, lstm2.hidden_size, rng);
    }
    init_matrix(dense.weights, config.hidden_size, 1, rng);
    // Small positive conv biases keep freshly initialized preactivations off
    // the exact ReLU kink, where finite-difference gradient checks break.
    std::fill(conv1.bias.begin(), conv1.bias.end(), 0.01);
    std::fill(conv2.bias.begin(), conv2.bias.end(), 0.01);
    // Forget gates open at init so early gradients flow through the cell state.
    std::fill(lstm1.b_f.begin(), lstm1.b_f.end(), 1.0);
    std::fill(lstm2.b_f.begin(), lstm2.b_f.end(), 1.0);
}

double Network::forward(const std::vector<double>& window) {
    FeatureMap in(static_cast<int>(window.size()), 1);
    in.values = window;
    const auto h2 = lstm2.forward(lstm1.forward(pool.forward(conv2.forward(conv1.forward(in)))));
    if (h2.steps < 1) throw ShapeError("shape shrinkage exhausted all time steps");
    std::vector<double> last(h2.values.end() - h2.channels, h2.values.end());
    last_pred_ = dense.forward(last);
    forward_recorded_ = true;
    return last_pred_;
}

void Network::backward(double target) {
    if (!forward_recorded_) {
        throw StateError("backward called without a recorded forward pass");
    }
    const double dloss = last_pred_ - target;  // d/dpred of 0.5*(pred-target)^2
    const auto dlast = dense.backward(dloss);
    FeatureMap dh2(static_cast<int>(lstm2.steps.size()), lstm2.hidden_size);
    for (int j = 0; j < lstm2.hidden_size; ++j) dh2.at(dh2.steps - 1, j) = dlast[j];
    const auto dh1 = lstm2.backward(dh2);
    const auto dpool = lstm1.backward(dh1);
    const auto dconv2 = pool.backward(dpool);
    const auto dconv1 = conv2.backward(dconv2);
    conv1.backward(dconv1);
    forward_recorded_ = false;
}

void Network::zero_grads() {
    auto zero = [](std::vector<double>& v) { std::fill(v.begin(), v.end(), 0.0); };
    zero(conv1.grad_weights);
    zero(conv1.grad_bias);
    zero(conv2.grad_weights);
    zero(conv2.grad_bias);
    for (auto* layer : {&lstm1, &lstm2}) {
        zero(layer->gw_f);
        zero(layer->gw_i);
        zero(layer->gw_g);
        zero(layer->gw_o);
        zero(layer->gb_f);
        zero(layer->gb_i);
        zero(layer->gb_g);
        zero(layer->gb_o);
    }
    zero(dense.grad_weights);
    dense.grad_bias = 0.0;
}

namespace {

void collect(std::vector<double>& v, std::vector<double*>& out) {
    for (double& x : v) out.push_back(&x);
}

}  // namespace

std::vector<double*> Network::parameters() {
    std::vector<double*> out;
    collect(conv1.weights, out);
    collect(conv1.bias, out);
    collect(conv2.weights, out);
    collect(conv2.bias, out);
    for (auto* layer : {&lstm1, &lstm2}) {
        collect(layer->w_f, out);
        collect(layer->w_i, out);
        collect(layer->w_g, out);
        collect(layer->w_o, out);
        collect(layer->b_f, out);
        collect(layer->b_i, out);
        collect(layer->b_g, out);
        collect(layer->b_o, out);
    }
    collect(dense.weights, out);
    out.push_back(&dense.bias);
    return out;
}

std::vector<double*> Network::gradients() {
    std::vector<double*> out;
    collect(conv1.grad_weights, out);
    collect(conv1.grad_bias, out);
    collect(conv2.grad_weights, out);
    collect(conv2.grad_bias, out);
    for (auto* layer : {&lstm1, &lstm2}) {
        collect(layer->gw_f, out);
        collect(layer->gw_i, out);
        collect(layer->gw_g, out);
        collect(layer->gw_o, out);
        collect(layer->gb_f, out);
        collect(layer->gb_i, out);
        collect(layer->gb_g, out);
        collect(layer->gb_o, out);
    }
    collect(dense.grad_weights, out);
    out.push_back(&dense.grad_bias);
    return out;
}

void adam_step(std::vector<double*>& params, const std::vector<double*>& grads,
               AdamState& state, const AdamHyper& hyper) {
    if (params.size() != grads.size()) throw ShapeError("adam: params/grads size mismatch");
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(state.t));
    for (std::size_t j = 0; j < params.size(); ++j) {
        const double g = *grads[j];
        state.m[j] = hyper.beta1 * state.m[j] + (1.0 - hyper.beta1) * g;
        state.v[j] = hyper.beta2 * state.v[j] + (1.0 - hyper.beta2) * g * g;
        const double mhat = state.m[j] / bc1;
        const double vhat = state.v[j] / bc2;
        *params[j] -= hyper.lr * mhat / (std::sqrt(vhat) + hyper.epsilon);
    }
}

TrainResult train(Network& network, const SupervisedWindowSet& windows, const TrainingConfig& config) {
    if (windows.inputs.empty()) throw InsufficientData("no training windows");
    if (config.epochs < 1 || config.batch_size < 1 || config.patience < 1 ||
        config.learning_rate < 0.0) {
        throw ConfigError("training config values must be positive (learning rate >= 0)");
    }

    auto params = network.parameters();
    auto grads = network.gradients();
    AdamState state;
    AdamHyper hyper;
    hyper.lr = config.learning_rate;

    // Distinct stream from parameter init so re-seeding the network does
    // not shift the shuffle order.
    Rng shuffle_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

    std::vector<std::size_t> order(windows.inputs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    TrainResult result;
    double best = std::numeric_limits<double>::infinity();
    int since_best = 0;
    std::vector<double> sq_errors(order.size());
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t batch_start = 0; batch_start < order.size();
             batch_start += config.batch_size) {
            const std::size_t batch_end =
                std::min(order.size(), batch_start + config.batch_size);
            const double count = static_cast<double>(batch_end - batch_start);
            network.zero_grads();
            for (std::size_t i = batch_start; i < batch_end; ++i) {
                const double pred = network.forward(windows.inputs[order[i]]);
                const double err = pred - windows.targets[order[i]];
                sq_errors[order[i]] = err * err;
                network.backward(windows.targets[order[i]]);
            }
            for (double* g : grads) *g /= count;
            adam_step(params, grads, state, hyper);
        }
        // summed in window order so the epoch MSE is independent of the
        // shuffle, bit for bit
        double sq_sum = 0.0;
        for (double e : sq_errors) sq_sum += e;
        const double mse = sq_sum / order.size();
        if (!std::isfinite(mse)) {
            throw DivergenceError("training loss became non-finite at epoch " +
                                  std::to_string(epoch + 1));
        }
        result.epoch_mse.push_back(mse);
        if (mse < best - 1e-15) {
            best = mse;
            since_best = 0;
        } else if (++since_best >= config.patience) {
            break;
        }
    }
    return result;
}

ForecastResult forecast_recursive(Network& network, const std::vector<double>& history,
                                  int horizon, const NormalizationParams& params) {
    const int lookback = network.config().lookback;
    if (static_cast<int>(history.size()) < lookback) {
        throw InsufficientData("history shorter than lookback " + std::to_string(lookback));
    }
    std::vector<double> window(history.end() - lookback, history.end());
    ForecastResult out;
    out.horizon = horizon;
    for (int h = 0; h < horizon; ++h) {
        const double pred = network.forward(window);
        out.point_forecasts.push_back(pred * params.sample_std + params.mean);
        window.erase(window.begin());
        window.push_back(pred);
    }
    return out;
}

double gradient_check(Network& network, const std::vector<double>& window, double target) {
    network.zero_grads();
    network.forward(window);
    network.backward(target);
    auto params = network.parameters();
    auto grads = network.gradients();
    std::vector<double> analytic(grads.size());
    for (std::size_t j = 0; j < grads.size(); ++j) analytic[j] = *grads[j];

    auto loss = [&] {
        const double pred = network.forward(window);
        return 0.5 * (pred - target) * (pred - target);
    };
    constexpr double step = 1e-5;
    double max_rel = 0.0;
    for (std::size_t j = 0; j < params.size(); ++j) {
        const double saved = *params[j];
        *params[j] = saved + step;
        const double up = loss();
        *params[j] = saved - step;
        const double down = loss();
        *params[j] = saved;
        const double numeric = (up - down) / (2.0 * step);
        const double rel = std::abs(analytic[j] - numeric) /
                           std::max({std::abs(analytic[j]), std::abs(numeric), 1e-12});
        max_rel = std::max(max_rel, rel);
    }
    return max_rel;
}

namespace {

std::string join(const std::vector<double>& vals) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", vals[i]);
        if (i) out += ' ';
        out += buf;
    }
    return out;
}

}  // namespace

std::string serialize(const Network& network) {
    const NetworkConfig& c = network.config();
    std::string out;
    out += "arch conv" + std::to_string(c.conv_filters) + "k" + std::to_string(c.kernel_size) +
           " conv" + std::to_string(c.conv_filters) + "k" + std::to_string(c.kernel_size) +
           " pool" + std::to_string(c.pool_size) + (c.pool_mode == PoolMode::max ? "max" : "avg") +
           " lstm" + std::to_string(c.hidden_size) + " lstm" + std::to_string(c.hidden_size) +
           " dense1 lookback" + std::to_string(c.lookback) + "\n";
    out += "config " + std::to_string(c.conv_filters) + " " + std::to_string(c.kernel_size) + " " +
           std::to_string(c.pool_size) + " " + (c.pool_mode == PoolMode::max ? "max" : "avg") + " " +
           std::to_string(c.hidden_size) + " " + std::to_string(c.lookback) + "\n";
    auto& net = const_cast<Network&>(network);
    std::vector<double> flat;
    for (double* p : net.parameters()) flat.push_back(*p);
    out += "params " + join(flat) + "\n";
    return out;
}

Network deserialize_network(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    NetworkConfig config;
    std::vector<double> flat;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "arch") {
            continue;  // human-readable summary, config line is authoritative
        } else if (key == "config") {
            std::string mode;
            ls >> config.conv_filters >> config.kernel_size >> config.pool_size >> mode >>
                config.hidden_size >> config.lookback;
            if (!ls || (mode != "max" && mode != "avg")) {
                throw ParseError("network file: bad config line");
            }
            config.pool_mode = mode == "max" ? PoolMode::max : PoolMode::average;
        } else if (key == "params") {
            double v;
            while (ls >> v) flat.push_back(v);
        } else {
            throw ParseError("network file: unknown line key '" + key + "'");
        }
    }
    Network net(config, 0);
    auto params = net.parameters();
    if (flat.size() != params.size()) {
        throw ParseError("network file: parameter count " + std::to_string(flat.size()) +
                         " does not match architecture (" + std::to_string(params.size()) + ")");
    }
    for (std::size_t j = 0; j < flat.size(); ++j) *params[j] = flat[j];
    return net;
}

}  // namespace forecast
