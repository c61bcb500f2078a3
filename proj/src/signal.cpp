#include "cnsp/signal.hpp"

#include "cnsp/errors.hpp"

#include <algorithm>
#include <string>

namespace cnsp {

void SignalConfig::validate() const {
    if (sample_count < 3) {
        throw ConfigError("sample_count must be >= 3, got " + std::to_string(sample_count));
    }
    if (filter_window < 1 || filter_window % 2 == 0) {
        throw ConfigError("filter_window must be odd and >= 1, got " + std::to_string(filter_window));
    }
    if (!(gain > 0.0)) {
        throw ConfigError("gain must be > 0");
    }
}

WindowingResult window_stream(std::span<const EmgSample> samples, std::size_t sample_count) {
    if (sample_count < 3) {
        throw ConfigError("sample_count must be >= 3, got " + std::to_string(sample_count));
    }
    WindowingResult result;
    const std::size_t full = samples.size() / sample_count;
    result.windows.reserve(full);
    for (std::size_t w = 0; w < full; ++w) {
        Window win;
        win.window_id = w;
        auto chunk = samples.subspan(w * sample_count, sample_count);
        win.samples.assign(chunk.begin(), chunk.end());
        win.start_ms = win.samples.front().t_ms;
        const std::uint64_t last = win.samples.back().t_ms;
        // Nominal period from the spacing inside the window; keeps adjacent
        // windows contiguous when the stream is evenly sampled.
        const std::uint64_t period = (last - win.start_ms) / (sample_count - 1);
        win.end_ms = last + (period > 0 ? period : 1);
        result.windows.push_back(std::move(win));
    }
    result.discarded_samples = samples.size() - full * sample_count;
    return result;
}

double trimmed_average(std::span<const int> values) {
    const std::size_t n = values.size();
    if (n < 3) {
        throw ArgumentError("trimmed_average needs at least 3 samples, got " + std::to_string(n));
    }
    std::int64_t sum = 0;
    int min_value = values[0];
    int max_value = values[0];
    for (int v : values) {
        sum += v;
        min_value = std::min(min_value, v);
        max_value = std::max(max_value, v);
    }
    const std::int64_t adjusted = sum - min_value - max_value;
    return static_cast<double>(adjusted) / static_cast<double>(n - 2);
}

double trimmed_average(const Window& window) {
    std::vector<int> adc;
    adc.reserve(window.samples.size());
    for (const EmgSample& s : window.samples) adc.push_back(s.adc);
    return trimmed_average(adc);
}

std::vector<double> filter_signal(std::span<const double> values, std::size_t filter_window) {
    if (filter_window < 1 || filter_window % 2 == 0) {
        throw ConfigError("filter_window must be odd and >= 1, got " + std::to_string(filter_window));
    }
    if (filter_window == 1) {
        return {values.begin(), values.end()};
    }
    const std::size_t n = values.size();
    const std::size_t half = filter_window / 2;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        double acc = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) acc += values[j];
        out[i] = acc / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::vector<double> amplify(std::span<const double> values, double gain) {
    if (!(gain > 0.0)) {
        throw ConfigError("gain must be > 0");
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(v * gain);
    return out;
}

WindowFeatures extract_features(const Window& window, const SignalConfig& config) {
    config.validate();
    const std::size_t n = window.samples.size();
    if (n < 3) {
        throw ArgumentError("window must hold at least 3 samples, got " + std::to_string(n));
    }

    WindowFeatures f;
    f.window_id = window.window_id;
    f.min_value = window.samples[0].adc;
    f.max_value = window.samples[0].adc;
    std::vector<double> raw;
    raw.reserve(n);
    for (const EmgSample& s : window.samples) {
        f.min_value = std::min(f.min_value, s.adc);
        f.max_value = std::max(f.max_value, s.adc);
        f.sum += s.adc;
        raw.push_back(static_cast<double>(s.adc));
    }
    f.average_value =
        static_cast<double>(f.sum - f.min_value - f.max_value) / static_cast<double>(n - 2);

    const std::vector<double> amplified = amplify(filter_signal(raw, config.filter_window), config.gain);
    double acc = 0.0;
    double peak = amplified[0];
    for (double v : amplified) {
        acc += v;
        peak = std::max(peak, v);
    }
    f.mean_emg = acc / static_cast<double>(n);
    f.peak_emg = peak;
    return f;
}

} // namespace cnsp
