#include "forecast/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

namespace forecast {

Stamp encode_month(int year, int month) {
    return static_cast<Stamp>(year) * 12 + (month - 1);
}

int stamp_year(Stamp monthly) {
    return static_cast<int>(monthly / 12);
}

int stamp_month(Stamp monthly) {
    return static_cast<int>(monthly % 12) + 1;
}

std::string format_month(Stamp monthly) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", stamp_year(monthly), stamp_month(monthly));
    return buf;
}

Stamp encode_instant(int year, int month, int day, int hour, int minute, int second) {
    Stamp s = encode_month(year, month);
    s = s * 32 + day;
    s = s * 24 + hour;
    s = s * 60 + minute;
    s = s * 60 + second;
    return s;
}

Stamp instant_to_month(Stamp hourly) {
    return hourly / (32LL * 24 * 60 * 60);
}

namespace {

// RFC4180-ish line splitter; handles quoted fields containing commas.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

// Accepts "YYYY-MM-DD HH:MM:SS[.fff] [+ZZZZ]". The trailing UTC offset is
// kept as part of the local-time label, not applied: calendar-month
// bucketing works on local clock time.
Stamp parse_timestamp(const std::string& text, std::size_t row) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    int n = std::sscanf(text.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi, &s);
    if (n < 3 || mo < 1 || mo > 12 || d < 1 || d > 31) {
        throw ParseError("row " + std::to_string(row) + ": unparsable timestamp '" + text + "'");
    }
    return encode_instant(y, mo, d, h, mi, s);
}

double parse_temperature(const std::string& text, std::size_t row) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ParseError("row " + std::to_string(row) + ": unparsable temperature '" + text + "'");
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size() || !std::isfinite(v)) {
        throw ParseError("row " + std::to_string(row) + ": unparsable temperature '" + text + "'");
    }
    return v;
}

}  // namespace

TimeSeries parse_csv(std::istream& source, const CsvColumnMap& columns) {
    std::string line;
    if (!std::getline(source, line)) {
        throw EmptyInput("input CSV is empty");
    }
    const auto header = split_csv_line(line);
    auto find_column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw ConfigError("column '" + name + "' not found in CSV header");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t ts_col = find_column(columns.timestamp);
    const std::size_t temp_col = find_column(columns.temperature);

    // stamp -> (sum, count); duplicates collapse to their mean.
    std::map<Stamp, std::pair<double, int>> rows;
    std::size_t row = 1;
    while (std::getline(source, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() <= std::max(ts_col, temp_col)) {
            throw ParseError("row " + std::to_string(row) + ": expected at least " +
                             std::to_string(std::max(ts_col, temp_col) + 1) + " fields");
        }
        const Stamp stamp = parse_timestamp(fields[ts_col], row);
        const double temp = parse_temperature(fields[temp_col], row);
        auto& acc = rows[stamp];
        acc.first += temp;
        acc.second += 1;
    }
    if (rows.empty()) {
        throw EmptyInput("input CSV has a header but no data rows");
    }

    TimeSeries out;
    out.frequency = Frequency::hourly;
    out.stamps.reserve(rows.size());
    out.values.reserve(rows.size());
    for (const auto& [stamp, acc] : rows) {
        out.stamps.push_back(stamp);
        out.values.push_back(acc.first / acc.second);
    }
    return out;
}

TimeSeries aggregate_monthly(const TimeSeries& hourly) {
    if (hourly.frequency != Frequency::hourly) {
        throw DomainError("aggregate_monthly expects an hourly series");
    }
    std::map<Stamp, std::pair<double, int>> months;
    for (std::size_t i = 0; i < hourly.size(); ++i) {
        auto& acc = months[instant_to_month(hourly.stamps[i])];
        acc.first += hourly.values[i];
        acc.second += 1;
    }

    TimeSeries out;
    out.frequency = Frequency::monthly;
    std::string missing;
    Stamp expected = months.begin()->first;
    for (const auto& [month, acc] : months) {
        for (; expected < month; ++expected) {
            if (!missing.empty()) missing += ", ";
            missing += format_month(expected);
        }
        ++expected;
        out.stamps.push_back(month);
        out.values.push_back(acc.first / acc.second);
    }
    if (!missing.empty()) {
        throw GapError("months with no observations inside the span: " + missing);
    }
    return out;
}

std::pair<TimeSeries, NormalizationParams> zscore_normalize(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 2) {
        throw InsufficientData("z-score normalization needs at least 2 points");
    }
    const double mean = std::accumulate(series.values.begin(), series.values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : series.values) ss += (v - mean) * (v - mean);
    const double sample_std = std::sqrt(ss / (n - 1));
    if (sample_std == 0.0) {
        throw DegenerateSeries("constant series has zero sample standard deviation");
    }
    TimeSeries out = series;
    for (double& v : out.values) v = (v - mean) / sample_std;
    return {std::move(out), NormalizationParams{mean, sample_std}};
}

TimeSeries denormalize(const TimeSeries& series, const NormalizationParams& params) {
    TimeSeries out = series;
    for (double& v : out.values) v = v * params.sample_std + params.mean;
    return out;
}

std::pair<std::vector<double>, DifferencingRecord> difference(const std::vector<double>& values, int d) {
    if (d < 0) throw DomainError("differencing degree must be non-negative");
    if (static_cast<std::size_t>(d) >= values.size()) {
        throw InsufficientData("differencing degree " + std::to_string(d) +
                               " >= series length " + std::to_string(values.size()));
    }
    std::vector<double> cur = values;
    DifferencingRecord record;
    for (int pass = 0; pass < d; ++pass) {
        record.seeds.push_back({cur.front()});
        std::vector<double> next(cur.size() - 1);
        for (std::size_t t = 0; t + 1 < cur.size(); ++t) next[t] = cur[t + 1] - cur[t];
        cur = std::move(next);
    }
    return {std::move(cur), std::move(record)};
}

std::vector<double> integrate(const std::vector<double>& values, const DifferencingRecord& record) {
    std::vector<double> cur = values;
    // Invert passes innermost-first: the last seed belongs to the last pass.
    for (auto it = record.seeds.rbegin(); it != record.seeds.rend(); ++it) {
        if (it->size() != 1) {
            throw ShapeError("differencing record pass must hold exactly one seed value");
        }
        std::vector<double> next(cur.size() + 1);
        next[0] = it->front();
        for (std::size_t t = 0; t < cur.size(); ++t) next[t + 1] = next[t] + cur[t];
        cur = std::move(next);
    }
    return cur;
}

std::pair<TimeSeries, DifferencingRecord> difference(const TimeSeries& series, int d) {
    auto [vals, record] = difference(series.values, d);
    TimeSeries out;
    out.frequency = series.frequency;
    out.stamps.assign(series.stamps.begin() + d, series.stamps.end());
    out.values = std::move(vals);
    return {std::move(out), std::move(record)};
}

TimeSeries integrate(const TimeSeries& series, const DifferencingRecord& record) {
    const int d = record.order();
    TimeSeries out;
    out.frequency = series.frequency;
    out.values = integrate(series.values, record);
    if (!series.stamps.empty()) {
        if (series.stamps.size() != series.values.size()) {
            throw ShapeError("series stamps/values length mismatch");
        }
        // Stamps of the d dropped leading points precede the first retained one.
        out.stamps.reserve(out.values.size());
        for (int i = d; i > 0; --i) out.stamps.push_back(series.stamps.front() - i);
        out.stamps.insert(out.stamps.end(), series.stamps.begin(), series.stamps.end());
    }
    return out;
}

SupervisedWindowSet make_windows(const std::vector<double>& values, int lookback) {
    if (lookback < 1) throw DomainError("lookback must be >= 1");
    if (values.size() <= static_cast<std::size_t>(lookback)) {
        throw InsufficientData("series of length " + std::to_string(values.size()) +
                               " too short for lookback " + std::to_string(lookback));
    }
    SupervisedWindowSet set;
    set.lookback = lookback;
    const std::size_t count = values.size() - lookback;
    set.inputs.reserve(count);
    set.targets.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        set.inputs.emplace_back(values.begin() + i, values.begin() + i + lookback);
        set.targets.push_back(values[i + lookback]);
    }
    return set;
}

SupervisedWindowSet make_windows(const TimeSeries& series, int lookback) {
    return make_windows(series.values, lookback);
}

TimeSeries read_monthly_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw EmptyInput("'" + path + "' is empty");
    TimeSeries out;
    out.frequency = Frequency::monthly;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw ParseError(path + " row " + std::to_string(row) + ": expected 'timestamp,value'");
        }
        int y = 0, m = 0;
        if (std::sscanf(fields[0].c_str(), "%d-%d", &y, &m) != 2 || m < 1 || m > 12) {
            throw ParseError(path + " row " + std::to_string(row) + ": bad YYYY-MM timestamp '" + fields[0] + "'");
        }
        out.stamps.push_back(encode_month(y, m));
        out.values.push_back(parse_temperature(fields[1], row));
    }
    if (out.values.empty()) throw EmptyInput("'" + path + "' has no data rows");
    for (std::size_t i = 1; i < out.stamps.size(); ++i) {
        if (out.stamps[i] != out.stamps[i - 1] + 1) {
            throw GapError(path + ": months not consecutive at " + format_month(out.stamps[i]));
        }
    }
    return out;
}

void write_monthly_csv(const TimeSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "timestamp,value\n";
    char buf[64];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", series.values[i]);
        out << format_month(series.stamps[i]) << ',' << buf << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace forecast
