// Regenerates the bundled synthetic monthly temperature series: a fixed
// seasonal cosine plus AR(1) noise from the library's own simulator, so CI
// can run the full comparison pipeline without any external dataset.
#include <cmath>
#include <cstdio>

#include "forecast/arima.hpp"
#include "forecast/series.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: make_dataset <output.csv>\n");
        return 1;
    }
    using namespace forecast;
    const int n = 300;  // 1991-01 .. 2015-12
    const TimeSeries noise = simulate({1, 0, 0}, {0.5}, {}, 0.0, 1.5, n, 42);
    TimeSeries series;
    series.frequency = Frequency::monthly;
    const Stamp start = encode_month(1991, 1);
    for (int i = 0; i < n; ++i) {
        const Stamp stamp = start + i;
        const int month = static_cast<int>(stamp % 12) + 1;
        const double seasonal = 11.0 + 10.5 * std::cos(2.0 * M_PI * (month - 7) / 12.0);
        series.stamps.push_back(stamp);
        series.values.push_back(seasonal + noise.values[i]);
    }
    write_monthly_csv(series, argv[1]);
    return 0;
}
