#include "forecast/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace forecast {

namespace {

double sample_mean(const std::vector<double>& x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / x.size();
}

}  // namespace

std::vector<double> acf(const std::vector<double>& series, int max_lag) {
    const int n = static_cast<int>(series.size());
    if (max_lag < 1 || n <= max_lag) {
        throw DomainError("acf requires 1 <= max_lag < n");
    }
    const double mean = sample_mean(series);
    double denom = 0.0;
    for (double v : series) denom += (v - mean) * (v - mean);
    if (denom == 0.0) {
        throw DegenerateSeries("acf of a constant series is undefined");
    }
    std::vector<double> out(max_lag + 1);
    out[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (int t = 0; t + k < n; ++t) {
            num += (series[t] - mean) * (series[t + k] - mean);
        }
        out[k] = num / denom;
    }
    return out;
}

std::vector<double> pacf(const std::vector<double>& series, int max_lag) {
    const auto rho = acf(series, max_lag);
    // Durbin-Levinson: phi[k][k] is the lag-k partial autocorrelation.
    std::vector<double> out(max_lag);
    std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
    double v = 1.0;  // prediction-error variance (in units of variance)
    for (int k = 1; k <= max_lag; ++k) {
        double num = rho[k];
        for (int j = 1; j < k; ++j) num -= prev[j] * rho[k - j];
        if (v <= 0.0) {
            throw NumericalError("Durbin-Levinson breakdown: prediction-error variance <= 0 at lag " +
                                 std::to_string(k));
        }
        const double phikk = num / v;
        phi[k] = phikk;
        for (int j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
        v *= (1.0 - phikk * phikk);
        out[k - 1] = phikk;
        prev = phi;
    }
    return out;
}

double confidence_bound(int n) {
    if (n < 2) throw DomainError("confidence_bound requires n >= 2");
    return 1.96 / std::sqrt(static_cast<double>(n));
}

Correlogram correlogram(const std::vector<double>& series, int max_lag) {
    Correlogram gram;
    gram.max_lag = max_lag;
    gram.acf = acf(series, max_lag);
    gram.pacf = pacf(series, max_lag);
    gram.confidence_bound = confidence_bound(static_cast<int>(series.size()));
    return gram;
}

std::pair<int, int> suggest_order(const Correlogram& gram) {
    constexpr int kCap = 5;
    auto run_length = [&](const std::vector<double>& vals) {
        int k = 0;
        for (int lag = 1; lag <= gram.max_lag && lag <= kCap; ++lag) {
            // acf carries lag 0 at index 0, pacf starts at lag 1.
            const double v = (&vals == &gram.acf) ? vals[lag] : vals[lag - 1];
            if (std::abs(v) > gram.confidence_bound) {
                k = lag;
            } else {
                break;
            }
        }
        return k;
    };
    return {run_length(gram.pacf), run_length(gram.acf)};
}

namespace {

// Dense symmetric solve with inverse via Gauss-Jordan; k is tiny (<= ~16).
struct OlsFit {
    std::vector<double> beta;
    std::vector<double> stderr_;
    double ssr = 0.0;
    int n = 0;
};

OlsFit ols(const std::vector<std::vector<double>>& x_rows, const std::vector<double>& y) {
    const int n = static_cast<int>(x_rows.size());
    const int k = static_cast<int>(x_rows[0].size());
    std::vector<std::vector<double>> a(k, std::vector<double>(2 * k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int p = 0; p < k; ++p) {
            xty[p] += x_rows[i][p] * y[i];
            for (int q = 0; q < k; ++q) a[p][q] += x_rows[i][p] * x_rows[i][q];
        }
    }
    for (int p = 0; p < k; ++p) a[p][k + p] = 1.0;

    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) < 1e-12) {
            throw NumericalError("singular regression matrix in OLS");
        }
        std::swap(a[piv], a[col]);
        const double d = a[col][col];
        for (double& v : a[col]) v /= d;
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < 2 * k; ++c) a[r][c] -= f * a[col][c];
        }
    }

    OlsFit fit;
    fit.n = n;
    fit.beta.assign(k, 0.0);
    for (int p = 0; p < k; ++p) {
        for (int q = 0; q < k; ++q) fit.beta[p] += a[p][k + q] * xty[q];
    }
    for (int i = 0; i < n; ++i) {
        double pred = 0.0;
        for (int p = 0; p < k; ++p) pred += x_rows[i][p] * fit.beta[p];
        fit.ssr += (y[i] - pred) * (y[i] - pred);
    }
    const double s2 = fit.ssr / (n - k);
    fit.stderr_.assign(k, 0.0);
    for (int p = 0; p < k; ++p) fit.stderr_[p] = std::sqrt(s2 * a[p][k + p]);
    return fit;
}

}  // namespace

AdfResult adf_test(const std::vector<double>& series, int max_lag, AdfLevel level) {
    const int n = static_cast<int>(series.size());
    if (max_lag < 0) {
        // Schwert rule.
        max_lag = static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
    }
    if (n < 20 + max_lag) {
        throw InsufficientData("adf_test needs length >= 20 + max_lag");
    }

    std::vector<double> diff(n - 1);
    for (int t = 0; t + 1 < n; ++t) diff[t] = series[t + 1] - series[t];

    // Common estimation sample across candidate lags so AIC is comparable.
    const int k_max = max_lag;
    const int t0 = k_max;  // first usable index into diff
    const int m = static_cast<int>(diff.size()) - t0;
    if (m < 10) throw InsufficientData("adf_test: too few usable observations");

    double best_aic = std::numeric_limits<double>::infinity();
    int best_k = 0;
    OlsFit best_fit;
    for (int k = 0; k <= k_max; ++k) {
        std::vector<std::vector<double>> x_rows;
        std::vector<double> y;
        x_rows.reserve(m);
        y.reserve(m);
        for (int t = t0; t < static_cast<int>(diff.size()); ++t) {
            std::vector<double> row;
            row.reserve(2 + k);
            row.push_back(1.0);
            row.push_back(series[t]);  // level lagged one step behind diff[t]
            for (int i = 1; i <= k; ++i) row.push_back(diff[t - i]);
            x_rows.push_back(std::move(row));
            y.push_back(diff[t]);
        }
        OlsFit fit;
        try {
            fit = ols(x_rows, y);
        } catch (const NumericalError&) {
            continue;  // collinear lag terms (e.g. deterministic ramps)
        }
        const double aic = m * std::log(fit.ssr / m) + 2.0 * (k + 2);
        if (aic < best_aic) {
            best_aic = aic;
            best_k = k;
            best_fit = fit;
        }
    }

    if (!std::isfinite(best_aic) && best_fit.beta.empty()) {
        throw NumericalError("adf_test: every candidate regression was singular");
    }

    AdfResult result;
    result.lag_order = best_k;
    result.statistic = best_fit.beta[1] / best_fit.stderr_[1];
    // Asymptotic constant-only critical values; small-sample values are
    // slightly more negative, so rejections near the boundary are mildly
    // anti-conservative for short series.
    result.critical_values = {{AdfLevel::one_percent, -3.43},
                              {AdfLevel::five_percent, -2.86},
                              {AdfLevel::ten_percent, -2.57}};
    result.level = level;
    result.reject_unit_root = result.statistic < result.critical_values.at(level);
    return result;
}

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw DomainError("gamma_p requires x >= 0, a > 0");
    if (x == 0.0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // Series expansion.
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // Continued fraction for Q(a, x), modified Lentz.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - gln) * h;
    return 1.0 - q;
}

double chi_square_sf(double x, int dof) {
    if (dof < 1) throw DomainError("chi_square_sf requires dof >= 1");
    if (x <= 0.0) return 1.0;
    return 1.0 - gamma_p(dof / 2.0, x / 2.0);
}

ResidualReport ljung_box(const std::vector<double>& residuals, int h, int fitted_params) {
    const int n = static_cast<int>(residuals.size());
    if (h <= fitted_params) throw DomainError("ljung_box requires h > fitted_params");
    if (n <= h) throw InsufficientData("ljung_box requires length > h");

    const auto rho = acf(residuals, h);  // throws DegenerateSeries for constants
    double q = 0.0;
    for (int k = 1; k <= h; ++k) {
        q += rho[k] * rho[k] / (n - k);
    }
    q *= n * (n + 2.0);

    ResidualReport report;
    report.ljung_box_statistic = q;
    report.ljung_box_p = chi_square_sf(q, h - fitted_params);
    report.uncorrelated = report.ljung_box_p > 0.05;

    const double mean = sample_mean(residuals);
    double ss = 0.0;
    for (double v : residuals) ss += (v - mean) * (v - mean);
    const double s = std::sqrt(ss / (n - 1));
    report.residual_mean = mean;
    report.mean_within_tolerance = std::abs(mean) < 2.0 * s / std::sqrt(static_cast<double>(n));
    return report;
}

}  // namespace forecast
