#ifndef FORECAST_SERIES_HPP
#define FORECAST_SERIES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "forecast/errors.hpp"

namespace forecast {

enum class Frequency { hourly, monthly };

// Calendar instant encoded as a single ordered integer.
// Monthly stamps are month indices (year * 12 + month - 1); hourly stamps
// encode year/month/day/hour/minute/second lexicographically.
using Stamp = std::int64_t;

Stamp encode_month(int year, int month);
int stamp_year(Stamp monthly);
int stamp_month(Stamp monthly);  // 1..12
std::string format_month(Stamp monthly);  // "YYYY-MM"

Stamp encode_instant(int year, int month, int day, int hour, int minute, int second);
Stamp instant_to_month(Stamp hourly);

// Uniformly spaced temperature observations. The universal currency between
// modules: ingestion produces it, transforms map it, models consume it.
struct TimeSeries {
    Frequency frequency = Frequency::monthly;
    std::vector<Stamp> stamps;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

// Mean and sample standard deviation (n-1 denominator) of the series a
// z-score transform was derived from.
struct NormalizationParams {
    double mean = 0.0;
    double sample_std = 1.0;
};

// Leading values dropped by each first-order differencing pass, in the
// order the passes were applied. Enough to invert the transform exactly.
struct DifferencingRecord {
    std::vector<std::vector<double>> seeds;

    int order() const { return static_cast<int>(seeds.size()); }
};

// Sliding-window supervised framing: window i predicts the value
// immediately after it.
struct SupervisedWindowSet {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    int lookback = 0;
};

struct CsvColumnMap {
    std::string timestamp = "Formatted Date";
    std::string temperature = "Temperature (C)";
};

TimeSeries parse_csv(std::istream& source, const CsvColumnMap& columns = {});

TimeSeries aggregate_monthly(const TimeSeries& hourly);

std::pair<TimeSeries, NormalizationParams> zscore_normalize(const TimeSeries& series);
TimeSeries denormalize(const TimeSeries& series, const NormalizationParams& params);

std::pair<TimeSeries, DifferencingRecord> difference(const TimeSeries& series, int d);
TimeSeries integrate(const TimeSeries& series, const DifferencingRecord& record);

// Value-sequence variants used on the differenced/forecast scale where no
// calendar stamps exist.
std::pair<std::vector<double>, DifferencingRecord> difference(const std::vector<double>& values, int d);
std::vector<double> integrate(const std::vector<double>& values, const DifferencingRecord& record);

SupervisedWindowSet make_windows(const TimeSeries& series, int lookback);
SupervisedWindowSet make_windows(const std::vector<double>& values, int lookback);

// Canonical two-column "timestamp,value" file at monthly frequency.
TimeSeries read_monthly_csv(const std::string& path);
void write_monthly_csv(const TimeSeries& series, const std::string& path);

}  // namespace forecast

#endif
