#include "doctest.h"

#include "cnsp/errors.hpp"
#include "cnsp/prng.hpp"
#include "cnsp/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace {

// Independent formulation: sort a copy, drop the first and last element,
// average the rest.
double sorted_trim_oracle(std::vector<int> values) {
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
    return sum / static_cast<double>(values.size() - 2);
}

std::vector<int> random_window(cnsp::SplitMix64& rng, std::size_t min_len = 3,
                               std::size_t max_len = 64) {
    const std::size_t n = min_len + static_cast<std::size_t>(rng.next_below(max_len - min_len + 1));
    std::vector<int> values(n);
    for (int& v : values) v = static_cast<int>(rng.next_below(1024));
    return values;
}

cnsp::Window make_window(const std::vector<int>& adc, std::uint64_t period_ms = 10) {
    cnsp::Window window;
    for (std::size_t i = 0; i < adc.size(); ++i)
        window.samples.push_back(cnsp::EmgSample{i + 1, i * period_ms, adc[i]});
    window.start_ms = 0;
    window.end_ms = adc.size() * period_ms;
    return window;
}

} // namespace

TEST_CASE("trimmed_average matches hand-computed examples") {
    CHECK(cnsp::trimmed_average(std::vector<int>{1, 2, 3}) == doctest::Approx(2.0));
    CHECK(cnsp::trimmed_average(std::vector<int>{0, 512, 1023}) == doctest::Approx(512.0));
    CHECK(cnsp::trimmed_average(std::vector<int>{10, 10, 20, 30, 30}) == doctest::Approx(20.0));
    CHECK(cnsp::trimmed_average(std::vector<int>{5, 5, 5, 5}) == doctest::Approx(5.0));
}

TEST_CASE("trimmed_average removes one instance of each extreme under ties") {
    // sum 28 - 5 - 9 = 14 over 2 remaining samples
    CHECK(cnsp::trimmed_average(std::vector<int>{5, 5, 9, 9}) == doctest::Approx(7.0));
}

TEST_CASE("trimmed_average agrees with the sort-and-drop oracle") {
    cnsp::SplitMix64 rng(0x5157a1ed5157a1edULL);
    for (int i = 0; i < 2000; ++i) {
        const std::vector<int> values = random_window(rng);
        const double got = cnsp::trimmed_average(values);
        const double want = sorted_trim_oracle(values);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("trimmed_average is invariant to the magnitude of the extremes") {
    cnsp::SplitMix64 rng(2024);
    for (int i = 0; i < 500; ++i) {
        std::vector<int> values = random_window(rng, 4, 32);
        // Force unique extremes so the replacement stays the unique extreme.
        auto minmax = std::minmax_element(values.begin(), values.end());
        *minmax.first = -5000;
        *minmax.second = 5000;
        const double base = cnsp::trimmed_average(values);

        std::vector<int> larger = values;
        *std::max_element(larger.begin(), larger.end()) = 90000;
        std::vector<int> smaller = values;
        *std::min_element(smaller.begin(), smaller.end()) = -90000;

        CHECK(cnsp::trimmed_average(larger) == doctest::Approx(base).epsilon(1e-12));
        CHECK(cnsp::trimmed_average(smaller) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("trimmed_average rejects windows shorter than 3") {
    CHECK_THROWS_AS(cnsp::trimmed_average(std::vector<int>{}), cnsp::ArgumentError);
    CHECK_THROWS_AS(cnsp::trimmed_average(std::vector<int>{1}), cnsp::ArgumentError);
    CHECK_THROWS_AS(cnsp::trimmed_average(std::vector<int>{1, 2}), cnsp::ArgumentError);
}

TEST_CASE("window_stream groups samples and discards the partial tail") {
    std::vector<cnsp::EmgSample> samples;
    for (std::size_t i = 0; i < 10; ++i)
        samples.push_back(cnsp::EmgSample{i + 1, i * 10, static_cast<int>(i)});

    const cnsp::WindowingResult result = cnsp::window_stream(samples, 3);
    REQUIRE(result.windows.size() == 3);
    CHECK(result.discarded_samples == 1);
    for (std::size_t w = 0; w < result.windows.size(); ++w) {
        CHECK(result.windows[w].window_id == w);
        CHECK(result.windows[w].samples.size() == 3);
    }
    // Even 10 ms spacing: [0,30), [30,60), [60,90) tile the stream.
    CHECK(result.windows[0].start_ms == 0);
    CHECK(result.windows[0].end_ms == 30);
    CHECK(result.windows[1].start_ms == 30);
    CHECK(result.windows[1].end_ms == 60);
    CHECK(result.windows[2].start_ms == 60);
    CHECK(result.windows[2].end_ms == 90);
}

TEST_CASE("window_stream on an empty stream yields nothing") {
    const cnsp::WindowingResult result = cnsp::window_stream({}, 8);
    CHECK(result.windows.empty());
    CHECK(result.discarded_samples == 0);
}

TEST_CASE("window_stream rejects window lengths below 3") {
    CHECK_THROWS_AS(cnsp::window_stream({}, 2), cnsp::ConfigError);
}

TEST_CASE("window end_ms advances even for zero-spread timestamps") {
    std::vector<cnsp::EmgSample> samples;
    for (std::size_t i = 0; i < 3; ++i) samples.push_back(cnsp::EmgSample{i + 1, 100, 5});
    const cnsp::WindowingResult result = cnsp::window_stream(samples, 3);
    REQUIRE(result.windows.size() == 1);
    CHECK(result.windows[0].start_ms == 100);
    CHECK(result.windows[0].end_ms == 101);
}

TEST_CASE("filter_signal width 1 is the identity") {
    const std::vector<double> values{1.0, 7.0, -2.0, 4.0};
    CHECK(cnsp::filter_signal(values, 1) == values);
}

TEST_CASE("filter_signal averages over a shrinking edge window") {
    const std::vector<double> values{0.0, 3.0, 0.0};
    const std::vector<double> got = cnsp::filter_signal(values, 3);
    REQUIRE(got.size() == 3);
    CHECK(got[0] == doctest::Approx(1.5)); // (0+3)/2
    CHECK(got[1] == doctest::Approx(1.0)); // (0+3+0)/3
    CHECK(got[2] == doctest::Approx(1.5)); // (3+0)/2
}

TEST_CASE("filter_signal rejects even widths") {
    CHECK_THROWS_AS(cnsp::filter_signal(std::vector<double>{1.0}, 2), cnsp::ConfigError);
    CHECK_THROWS_AS(cnsp::filter_signal(std::vector<double>{1.0}, 0), cnsp::ConfigError);
}

TEST_CASE("amplify scales every sample") {
    const std::vector<double> got = cnsp::amplify(std::vector<double>{1.0, -2.0, 0.5}, 2.0);
    CHECK(got == std::vector<double>{2.0, -4.0, 1.0});
    CHECK_THROWS_AS(cnsp::amplify(std::vector<double>{1.0}, 0.0), cnsp::ConfigError);
}

TEST_CASE("extract_features computes the average on raw samples only") {
    const cnsp::Window window = make_window({10, 20, 30});
    cnsp::SignalConfig config;
    config.sample_count = 3;
    config.gain = 2.0;

    const cnsp::WindowFeatures f = cnsp::extract_features(window, config);
    CHECK(f.min_value == 10);
    CHECK(f.max_value == 30);
    CHECK(f.sum == 60);
    CHECK(f.average_value == doctest::Approx(20.0)); // trimmed mean of the raw adc
    CHECK(f.mean_emg == doctest::Approx(40.0));      // mean of 2x-amplified signal
    CHECK(f.peak_emg == doctest::Approx(60.0));
}

TEST_CASE("extract_features applies the filter before amplification") {
    const cnsp::Window window = make_window({0, 3, 0});
    cnsp::SignalConfig config;
    config.sample_count = 3;
    config.filter_window = 3;
    config.gain = 10.0;

    const cnsp::WindowFeatures f = cnsp::extract_features(window, config);
    // Filtered signal is (1.5, 1, 1.5); amplified (15, 10, 15).
    CHECK(f.mean_emg == doctest::Approx(40.0 / 3.0));
    CHECK(f.peak_emg == doctest::Approx(15.0));
    // The raw trimmed average ignores conditioning entirely.
    CHECK(f.average_value == doctest::Approx(0.0));
}

TEST_CASE("extract_features validates its config") {
    const cnsp::Window window = make_window({1, 2, 3});
    cnsp::SignalConfig config;
    config.filter_window = 4;
    CHECK_THROWS_AS(cnsp::extract_features(window, config), cnsp::ConfigError);
}
