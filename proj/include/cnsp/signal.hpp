#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cnsp {

// One raw EMG reading. adc is a 10-bit count in [0, 1023]; seq strictly
// increases within a stream.
struct EmgSample {
    std::uint64_t seq = 0;
    std::uint64_t t_ms = 0;
    int adc = 0;

    bool operator==(const EmgSample&) const = default;
};

// A fixed-size analysis window of consecutive samples. The time span
// [start_ms, end_ms) is half-open; end_ms sits one nominal sample period
// past the last sample so adjacent windows tile the stream.
struct Window {
    std::size_t window_id = 0;
    std::uint64_t start_ms = 0;
    std::uint64_t end_ms = 0;
    std::vector<EmgSample> samples;
};

// Per-window statistics. average_value is the extreme-trimmed mean of the
// raw samples; mean_emg / peak_emg are computed on the filtered-then-
// amplified signal.
struct WindowFeatures {
    std::size_t window_id = 0;
    int min_value = 0;
    int max_value = 0;
    std::int64_t sum = 0;
    double average_value = 0.0;
    double mean_emg = 0.0;
    double peak_emg = 0.0;
};

struct SignalConfig {
    std::size_t sample_count = 32; // window length, >= 3
    std::size_t filter_window = 1; // odd moving-average width, 1 = off
    double gain = 1.0;             // amplification multiplier, > 0

    void validate() const; // throws ConfigError
};

struct WindowingResult {
    std::vector<Window> windows;
    std::size_t discarded_samples = 0; // trailing partial group
};

// Groups a sample stream into consecutive non-overlapping windows of
// exactly sample_count samples. Samples must already be ordered by seq.
// A trailing partial group is discarded and counted.
WindowingResult window_stream(std::span<const EmgSample> samples, std::size_t sample_count);

// Extreme-trimmed mean: (sum - min - max) / (n - 2). Exactly one instance
// of the minimum and one of the maximum are subtracted, also under ties.
// Requires n >= 3.
double trimmed_average(std::span<const int> values);
double trimmed_average(const Window& window);

// Centered moving average of odd width filter_window; at the edges the
// window shrinks to the available neighbors. Width 1 is the identity.
std::vector<double> filter_signal(std::span<const double> values, std::size_t filter_window);

// Element-wise multiplication by gain (> 0).
std::vector<double> amplify(std::span<const double> values, double gain);

// Full per-window feature pass: trimmed average on the raw samples first,
// then mean/peak of the filtered-and-amplified signal.
WindowFeatures extract_features(const Window& window, const SignalConfig& config);

} // namespace cnsp
