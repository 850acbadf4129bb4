#include "forecast/arima.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "forecast/diagnostics.hpp"
#include "forecast/rng.hpp"

namespace forecast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fmt_error(const char* what) {
    throw ParseError(std::string("arima model file: ") + what);
}

}  // namespace

bool roots_outside_unit_circle(const std::vector<double>& coeffs) {
    // 1 - c1 z - ... - ck z^k has roots outside the unit circle iff the
    // reversed monic polynomial z^k - c1 z^{k-1} - ... - ck has all roots
    // strictly inside. Schur-Cohn reduction, degree drops by one per step.
    const int k = static_cast<int>(coeffs.size());
    if (k == 0) return true;
    std::vector<double> a(k + 1);  // a[i] is the z^i coefficient
    a[k] = 1.0;
    for (int i = 1; i <= k; ++i) a[k - i] = -coeffs[i - 1];
    int n = k;
    while (n >= 1) {
        if (!(std::abs(a[0]) < std::abs(a[n]))) return false;
        std::vector<double> b(n);
        for (int i = 0; i < n; ++i) {
            b[i] = a[n] * a[i + 1] - a[0] * a[n - 1 - i];
        }
        a = std::move(b);
        --n;
    }
    return true;
}

std::vector<double> css_residuals(const std::vector<double>& phi, const std::vector<double>& theta,
                                  double mu, const std::vector<double>& series) {
    const int p = static_cast<int>(phi.size());
    const int q = static_cast<int>(theta.size());
    const int n = static_cast<int>(series.size());
    const int startup = std::max(p, q);
    std::vector<double> a(n, 0.0);
    for (int t = startup; t < n; ++t) {
        double v = series[t] - mu;
        for (int i = 1; i <= p; ++i) v -= phi[i - 1] * (series[t - i] - mu);
        for (int j = 1; j <= q; ++j) v += theta[j - 1] * a[t - j];
        a[t] = v;
    }
    return a;
}

double css_objective(const std::vector<double>& phi, const std::vector<double>& theta,
                     double mu, const std::vector<double>& series) {
    const int startup = static_cast<int>(std::max(phi.size(), theta.size()));
    if (static_cast<int>(series.size()) <= startup) return kInf;
    const auto a = css_residuals(phi, theta, mu, series);
    double sum = 0.0;
    for (std::size_t t = startup; t < a.size(); ++t) sum += a[t] * a[t];
    if (!std::isfinite(sum)) return kInf;
    return sum;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& start, const NelderMeadConfig& config) {
    const int k = static_cast<int>(start.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> pts(k + 1, start);
    for (int i = 0; i < k; ++i) {
        pts[i + 1][i] += (start[i] != 0.0) ? 0.1 * std::abs(start[i]) : 0.1;
    }
    std::vector<double> vals(k + 1);
    for (int i = 0; i <= k; ++i) vals[i] = objective(pts[i]);

    auto order = [&] {
        std::vector<int> idx(k + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> np(k + 1);
        std::vector<double> nv(k + 1);
        for (int i = 0; i <= k; ++i) {
            np[i] = pts[idx[i]];
            nv[i] = vals[idx[i]];
        }
        pts = std::move(np);
        vals = std::move(nv);
    };

    int iter = 0;
    for (; iter < config.max_iter; ++iter) {
        order();
        // Value spread alone stalls on simplices straddling a symmetric
        // minimum, so also require the simplex itself to have collapsed.
        const double spread = vals[k] - vals[0];
        double diameter = 0.0;
        for (int i = 1; i <= k; ++i) {
            for (int j = 0; j < k; ++j) {
                diameter = std::max(diameter, std::abs(pts[i][j] - pts[0][j]));
            }
        }
        if (std::isfinite(vals[k]) && spread < config.tol && diameter < 1e-7) break;

        std::vector<double> centroid(k, 0.0);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= k;

        auto along = [&](double t) {
            std::vector<double> p(k);
            for (int j = 0; j < k; ++j) p[j] = centroid[j] + t * (pts[k][j] - centroid[j]);
            return p;
        };

        const auto reflected = along(-alpha);
        const double fr = objective(reflected);
        if (fr < vals[0]) {
            const auto expanded = along(-alpha * gamma);
            const double fe = objective(expanded);
            if (fe < fr) {
                pts[k] = expanded;
                vals[k] = fe;
            } else {
                pts[k] = reflected;
                vals[k] = fr;
            }
            continue;
        }
        if (fr < vals[k - 1]) {
            pts[k] = reflected;
            vals[k] = fr;
            continue;
        }
        const auto contracted = along(fr < vals[k] ? -alpha * rho : rho);
        const double fc = objective(contracted);
        if (fc < std::min(fr, vals[k])) {
            pts[k] = contracted;
            vals[k] = fc;
            continue;
        }
        for (int i = 1; i <= k; ++i) {
            for (int j = 0; j < k; ++j) pts[i][j] = pts[0][j] + sigma * (pts[i][j] - pts[0][j]);
            vals[i] = objective(pts[i]);
        }
    }
    order();
    return NelderMeadResult{pts[0], vals[0], iter};
}

namespace {

// Yule-Walker AR(p) coefficients via Durbin-Levinson on the biased acf.
std::vector<double> yule_walker(const std::vector<double>& series, int p) {
    if (p == 0) return {};
    const auto rho = acf(series, p);
    std::vector<double> phi(p + 1, 0.0), prev(p + 1, 0.0);
    double v = 1.0;
    for (int k = 1; k <= p; ++k) {
        double num = rho[k];
        for (int j = 1; j < k; ++j) num -= prev[j] * rho[k - j];
        const double phikk = (v > 0.0) ? num / v : 0.0;
        phi[k] = phikk;
        for (int j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
        v *= (1.0 - phikk * phikk);
        prev = phi;
    }
    return {prev.begin() + 1, prev.end()};
}

}  // namespace

ArimaModel fit(const TimeSeries& series, const ArimaOrder& order) {
    if (order.p < 0 || order.d < 0 || order.q < 0) {
        throw DomainError("arima order components must be non-negative");
    }
    const int floor_len = 10 * (order.p + order.q + 1) + order.d;
    if (static_cast<int>(series.size()) < floor_len) {
        throw InsufficientData("series length " + std::to_string(series.size()) +
                               " below heuristic floor " + std::to_string(floor_len) +
                               " for this order");
    }

    auto [diffed, record] = difference(series.values, order.d);
    const int n = static_cast<int>(diffed.size());
    const double mu = std::accumulate(diffed.begin(), diffed.end(), 0.0) / n;

    ArimaModel model;
    model.order = order;
    model.mu = mu;
    model.differencing = std::move(record);
    model.differenced = diffed;

    const int p = order.p, q = order.q;
    if (p + q == 0) {
        model.residuals.resize(n);
        double css = 0.0;
        for (int t = 0; t < n; ++t) {
            model.residuals[t] = diffed[t] - mu;
            css += model.residuals[t] * model.residuals[t];
        }
        model.sigma2 = css / n;
        return model;
    }

    std::vector<double> start(p + q, 0.0);
    auto init_phi = yule_walker(diffed, p);
    if (!roots_outside_unit_circle(init_phi)) {
        // Durbin-Levinson should not produce this; shrink toward zero if it
        // ever does numerically.
        for (double& c : init_phi) c *= 0.5;
    }
    std::copy(init_phi.begin(), init_phi.end(), start.begin());

    // Non-stationary/non-invertible points are rejected with the infinity
    // sentinel so the optimizer stays inside the admissible region.
    auto objective = [&](const std::vector<double>& x) {
        const std::vector<double> phi(x.begin(), x.begin() + p);
        const std::vector<double> theta(x.begin() + p, x.end());
        if (!roots_outside_unit_circle(phi) || !roots_outside_unit_circle(theta)) return kInf;
        return css_objective(phi, theta, mu, diffed);
    };

    NelderMeadConfig config;
    config.tol = 1e-8;
    config.max_iter = 200 * (p + q);
    const double start_value = objective(start);
    const auto result = nelder_mead(objective, start, config);
    if (!std::isfinite(result.value) || result.value > start_value + 1e-12) {
        throw FitDiverged("optimizer failed to improve on the initial point");
    }

    model.phi.assign(result.argmin.begin(), result.argmin.begin() + p);
    model.theta.assign(result.argmin.begin() + p, result.argmin.end());
    model.residuals = css_residuals(model.phi, model.theta, mu, diffed);
    model.sigma2 = result.value / (n - std::max(p, q));
    return model;
}

ForecastResult forecast(const ArimaModel& model, int horizon) {
    if (horizon < 1) throw DomainError("forecast horizon must be >= 1");
    const int p = static_cast<int>(model.phi.size());
    const int q = static_cast<int>(model.theta.size());

    std::vector<double> ext = model.differenced;
    std::vector<double> res = model.residuals;
    if (ext.empty()) throw StateError("model has no training series; was it fitted?");
    if (res.size() != ext.size()) throw ShapeError("model residuals misaligned with training series");

    for (int h = 0; h < horizon; ++h) {
        const int n = static_cast<int>(ext.size());
        double v = model.mu;
        for (int i = 1; i <= p; ++i) v += model.phi[i - 1] * (ext[n - i] - model.mu);
        for (int j = 1; j <= q; ++j) v -= model.theta[j - 1] * res[n - j];
        ext.push_back(v);
        res.push_back(0.0);  // future innovations at their expectation
    }

    const auto levels = integrate(ext, model.differencing);
    ForecastResult out;
    out.horizon = horizon;
    out.point_forecasts.assign(levels.end() - horizon, levels.end());
    return out;
}

TimeSeries simulate(const ArimaOrder& order, const std::vector<double>& phi,
                    const std::vector<double>& theta, double mu, double sigma,
                    int n, std::uint64_t seed) {
    if (n < 1) throw DomainError("simulate requires n >= 1");
    if (static_cast<int>(phi.size()) != order.p || static_cast<int>(theta.size()) != order.q) {
        throw DomainError("coefficient counts do not match the order");
    }
    if (!roots_outside_unit_circle(phi)) throw DomainError("AR coefficients are non-stationary");
    if (!roots_outside_unit_circle(theta)) throw DomainError("MA coefficients are non-invertible");
    if (sigma < 0.0) throw DomainError("sigma must be >= 0");

    constexpr int kBurnIn = 100;
    Rng rng(seed);
    const int total = n + kBurnIn;
    std::vector<double> x(total, mu), a(total, 0.0);
    for (int t = 0; t < total; ++t) {
        a[t] = sigma * rng.normal();
        double v = mu + a[t];
        for (int i = 1; i <= order.p && t - i >= 0; ++i) v += phi[i - 1] * (x[t - i] - mu);
        for (int j = 1; j <= order.q && t - j >= 0; ++j) v -= theta[j - 1] * a[t - j];
        x[t] = v;
    }
    std::vector<double> out(x.begin() + kBurnIn, x.end());
    for (int pass = 0; pass < order.d; ++pass) {
        for (std::size_t t = 1; t < out.size(); ++t) out[t] += out[t - 1];
    }

    TimeSeries series;
    series.frequency = Frequency::monthly;
    series.values = std::move(out);
    series.stamps.resize(n);
    const Stamp origin = encode_month(2000, 1);
    for (int i = 0; i < n; ++i) series.stamps[i] = origin + i;
    return series;
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

std::vector<double> parse_values(std::istringstream& line) {
    std::vector<double> out;
    double v;
    while (line >> v) out.push_back(v);
    return out;
}

}  // namespace

std::string serialize(const ArimaModel& model) {
    char buf[64];
    std::string out;
    out += std::to_string(model.order.p) + "," + std::to_string(model.order.d) + "," +
           std::to_string(model.order.q) + "\n";
    out += "phi " + join(model.phi) + "\n";
    out += "theta " + join(model.theta) + "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", model.mu);
    out += std::string("mu ") + buf + "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", model.sigma2);
    out += std::string("sigma2 ") + buf + "\n";
    for (const auto& seed : model.differencing.seeds) {
        out += "seed " + join(seed) + "\n";
    }
    out += "differenced " + join(model.differenced) + "\n";
    out += "residuals " + join(model.residuals) + "\n";
    return out;
}

ArimaModel deserialize_arima(const std::string& text) {
    std::istringstream in(text);
    ArimaModel model;
    std::string line;
    if (!std::getline(in, line) ||
        std::sscanf(line.c_str(), "%d,%d,%d", &model.order.p, &model.order.d, &model.order.q) != 3) {
        fmt_error("missing p,d,q header line");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "phi") {
            model.phi = parse_values(ls);
        } else if (key == "theta") {
            model.theta = parse_values(ls);
        } else if (key == "mu") {
            ls >> model.mu;
        } else if (key == "sigma2") {
            ls >> model.sigma2;
        } else if (key == "seed") {
            model.differencing.seeds.push_back(parse_values(ls));
        } else if (key == "differenced") {
            model.differenced = parse_values(ls);
        } else if (key == "residuals") {
            model.residuals = parse_values(ls);
        } else {
            fmt_error("unknown line key");
        }
    }
    if (static_cast<int>(model.phi.size()) != model.order.p ||
        static_cast<int>(model.theta.size()) != model.order.q ||
        model.differencing.order() != model.order.d) {
        fmt_error("coefficient counts disagree with the order header");
    }
    return model;
}

}  // namespace forecast
