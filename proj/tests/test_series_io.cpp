#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "forecast/series.hpp"

using namespace forecast;

namespace {

TimeSeries monthly_from(const std::vector<double>& values, int year = 2000, int month = 1) {
    TimeSeries s;
    s.frequency = Frequency::monthly;
    s.values = values;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.stamps.push_back(encode_month(year, month) + static_cast<Stamp>(i));
    }
    return s;
}

std::vector<double> random_series(std::mt19937& gen, std::size_t n) {
    std::uniform_real_distribution<double> dist(-30.0, 30.0);
    std::vector<double> out(n);
    for (double& v : out) v = dist(gen);
    return out;
}

}  // namespace

TEST_CASE("parse_csv ingests rows in timestamp order") {
    std::istringstream csv(
        "Formatted Date,Summary,Temperature (C)\n"
        "2006-01-01 02:00:00.000 +0100,\"Mostly cloudy, cold\",11.0\n"
        "2006-01-01 00:00:00.000 +0100,Clear,10.0\n"
        "2006-01-01 01:00:00.000 +0100,Clear,12.0\n");
    const TimeSeries s = parse_csv(csv);
    REQUIRE(s.size() == 3);
    CHECK(s.values == std::vector<double>{10.0, 12.0, 11.0});
    CHECK(s.frequency == Frequency::hourly);
}

TEST_CASE("parse_csv rejects an unparsable temperature with the row number") {
    std::istringstream csv(
        "Formatted Date,Temperature (C)\n"
        "2006-01-01 00:00:00.000 +0100,10.0\n"
        "2006-01-01 01:00:00.000 +0100,abc\n");
    CHECK_THROWS_WITH_AS(parse_csv(csv), doctest::Contains("row 3"), ParseError);
}

TEST_CASE("parse_csv collapses duplicate timestamps to their mean") {
    std::istringstream csv(
        "Formatted Date,Temperature (C)\n"
        "2006-01-01 00:00:00.000 +0100,10.0\n"
        "2006-01-01 00:00:00.000 +0100,14.0\n");
    const TimeSeries s = parse_csv(csv);
    REQUIRE(s.size() == 1);
    CHECK(s.values[0] == doctest::Approx(12.0));
}

TEST_CASE("parse_csv errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_csv(empty), EmptyInput);
    std::istringstream missing("Date,Temp\n2006-01-01 00:00:00,1.0\n");
    CHECK_THROWS_AS(parse_csv(missing), ConfigError);
}

TEST_CASE("aggregate_monthly means each calendar month") {
    std::istringstream csv(
        "Formatted Date,Temperature (C)\n"
        "2006-01-01 00:00:00.000 +0100,0.0\n"
        "2006-01-15 12:00:00.000 +0100,10.0\n"
        "2006-02-03 07:00:00.000 +0100,20.0\n");
    const TimeSeries monthly = aggregate_monthly(parse_csv(csv));
    REQUIRE(monthly.size() == 2);
    CHECK(monthly.values[0] == doctest::Approx(5.0));
    CHECK(monthly.values[1] == doctest::Approx(20.0));
    CHECK(format_month(monthly.stamps[0]) == "2006-01");
}

TEST_CASE("aggregate_monthly is invariant to input row order") {
    const char* rows[] = {
        "2006-01-01 00:00:00.000 +0100,3.0\n",
        "2006-02-01 00:00:00.000 +0100,7.0\n",
        "2006-01-20 00:00:00.000 +0100,5.0\n",
    };
    std::string forward = "Formatted Date,Temperature (C)\n";
    std::string reverse = forward;
    for (const char* r : rows) forward += r;
    for (int i = 2; i >= 0; --i) reverse += rows[i];
    std::istringstream a(forward), b(reverse);
    const TimeSeries ma = aggregate_monthly(parse_csv(a));
    const TimeSeries mb = aggregate_monthly(parse_csv(b));
    CHECK(ma.values == mb.values);
    CHECK(ma.stamps == mb.stamps);
}

TEST_CASE("aggregate_monthly flags gap months") {
    std::istringstream csv(
        "Formatted Date,Temperature (C)\n"
        "2006-01-01 00:00:00.000 +0100,1.0\n"
        "2006-03-01 00:00:00.000 +0100,2.0\n");
    CHECK_THROWS_WITH_AS(aggregate_monthly(parse_csv(csv)), doctest::Contains("2006-02"), GapError);
}

TEST_CASE("zscore_normalize symmetric example") {
    const auto [z, params] = zscore_normalize(monthly_from({0.0, 10.0, 20.0}));
    CHECK(params.mean == doctest::Approx(10.0));
    CHECK(params.sample_std == doctest::Approx(10.0));
    CHECK(z.values[0] == doctest::Approx(-1.0));
    CHECK(z.values[1] == doctest::Approx(0.0));
    CHECK(z.values[2] == doctest::Approx(1.0));
}

TEST_CASE("zscore_normalize hand-computed four-point example") {
    const auto [z, params] = zscore_normalize(monthly_from({1.0, 2.0, 3.0, 4.0}));
    CHECK(params.mean == doctest::Approx(2.5));
    CHECK(params.sample_std == doctest::Approx(1.2909944487358056).epsilon(1e-9));
    CHECK(z.values[0] == doctest::Approx(-1.161895003862225).epsilon(1e-6));
    CHECK(z.values[1] == doctest::Approx(-0.3872983346207417).epsilon(1e-6));
    CHECK(z.values[2] == doctest::Approx(0.3872983346207417).epsilon(1e-6));
    CHECK(z.values[3] == doctest::Approx(1.161895003862225).epsilon(1e-6));
}

TEST_CASE("zscore_normalize rejects constant series") {
    CHECK_THROWS_AS(zscore_normalize(monthly_from({5.0, 5.0, 5.0})), DegenerateSeries);
}

TEST_CASE("denormalize inverts the z-score examples") {
    const TimeSeries z = monthly_from({-1.0, 0.0, 1.0});
    const TimeSeries back = denormalize(z, {10.0, 10.0});
    CHECK(back.values == std::vector<double>{0.0, 10.0, 20.0});
    const TimeSeries single = denormalize(monthly_from({0.0}), {3.5, 2.0});
    CHECK(single.values[0] == doctest::Approx(3.5));
}

TEST_CASE("normalize/denormalize round-trips random series") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = monthly_from(random_series(gen, 50));
        const auto [z, params] = zscore_normalize(s);
        const auto back = denormalize(z, params);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(back.values[i] ==
                  doctest::Approx(s.values[i]).epsilon(1e-12));
        }
        // normalized output has mean ~0 and sample std ~1
        double mean = 0.0;
        for (double v : z.values) mean += v;
        mean /= z.size();
        double ss = 0.0;
        for (double v : z.values) ss += (v - mean) * (v - mean);
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::sqrt(ss / (z.size() - 1)) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("difference applies the one-step delta d times") {
    const auto [d1, r1] = difference(monthly_from({1.0, 4.0, 9.0, 16.0}), 1);
    CHECK(d1.values == std::vector<double>{3.0, 5.0, 7.0});
    REQUIRE(r1.seeds.size() == 1);
    CHECK(r1.seeds[0] == std::vector<double>{1.0});

    const auto [d0, r0] = difference(monthly_from({1.0, 4.0}), 0);
    CHECK(d0.values == std::vector<double>{1.0, 4.0});
    CHECK(r0.seeds.empty());

    const auto [d2, r2] = difference(monthly_from({1.0, 4.0, 9.0, 16.0}), 2);
    CHECK(d2.values == std::vector<double>{2.0, 2.0});
}

TEST_CASE("difference requires enough data") {
    CHECK_THROWS_AS(difference(monthly_from({1.0, 2.0}), 2), InsufficientData);
}

TEST_CASE("integrate inverts difference") {
    const auto inverse = integrate(std::vector<double>{3.0, 5.0, 7.0},
                                   DifferencingRecord{{{1.0}}});
    CHECK(inverse == std::vector<double>{1.0, 4.0, 9.0, 16.0});

    std::mt19937 gen(11);
    for (int d = 0; d <= 2; ++d) {
        const auto s = random_series(gen, 20);
        const auto [diffed, record] = difference(s, d);
        const auto back = integrate(diffed, record);
        REQUIRE(back.size() == s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(back[i] == doctest::Approx(s[i]).epsilon(1e-12));
        }
        CHECK(diffed.size() == s.size() - d);
    }
}

TEST_CASE("make_windows enumerates sliding windows") {
    const auto set = make_windows(monthly_from({1.0, 2.0, 3.0, 4.0}), 2);
    REQUIRE(set.inputs.size() == 2);
    CHECK(set.inputs[0] == std::vector<double>{1.0, 2.0});
    CHECK(set.inputs[1] == std::vector<double>{2.0, 3.0});
    CHECK(set.targets == std::vector<double>{3.0, 4.0});
}

TEST_CASE("make_windows needs a target past the window") {
    CHECK_THROWS_AS(make_windows(monthly_from({1.0, 2.0}), 2), InsufficientData);
}

TEST_CASE("make_windows count is n minus lookback") {
    std::mt19937 gen(3);
    const auto set = make_windows(monthly_from(random_series(gen, 100)), 12);
    CHECK(set.inputs.size() == 88);
    CHECK(set.targets.size() == 88);
}

TEST_CASE("monthly csv round-trip") {
    const auto s = monthly_from({1.5, -2.25, 3.125}, 2015, 11);
    const std::string path = "test_monthly_roundtrip.csv";
    write_monthly_csv(s, path);
    const TimeSeries back = read_monthly_csv(path);
    CHECK(back.stamps == s.stamps);
    CHECK(back.values == s.values);
    std::remove(path.c_str());
}
