#include "cnsp/synth.hpp"

#include "cnsp/errors.hpp"
#include "cnsp/prng.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

namespace cnsp {

namespace {

constexpr std::uint64_t kImuPeriodMs = 100;
constexpr std::uint64_t kButtonDelayMs = 150; // press lag after an episode starts
constexpr int kImuAccelLimit = 2000;

int clamp_adc(long long value) {
    return static_cast<int>(std::clamp(value, 0LL, 1023LL));
}

int button_level(int intensity_adc) {
    if (intensity_adc < 300) return 1;
    if (intensity_adc < 600) return 2;
    return 3;
}

} // namespace

void SynthConfig::validate() const {
    if (duration_ms == 0) throw ConfigError("duration_ms must be > 0");
    if (emg_rate_hz == 0) throw ConfigError("emg_rate_hz must be > 0");
    if (baseline_adc < 0 || baseline_adc > 1023) {
        throw ConfigError("baseline_adc must lie in [0, 1023]");
    }
    if (noise_amp < 0) throw ConfigError("noise_amp must be >= 0");
    if (spike_adc < 0) throw ConfigError("spike_adc must be >= 0");
    if (!(spike_prob >= 0.0 && spike_prob <= 1.0)) {
        throw ConfigError("spike_prob must lie in [0, 1]");
    }
    if (!(button_compliance >= 0.0 && button_compliance <= 1.0)) {
        throw ConfigError("button_compliance must lie in [0, 1]");
    }
    std::vector<Episode> sorted = episodes;
    std::sort(sorted.begin(), sorted.end(),
              [](const Episode& a, const Episode& b) { return a.start_ms < b.start_ms; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Episode& e = sorted[i];
        if (e.start_ms >= e.end_ms) {
            throw ConfigError("episode span must have start_ms < end_ms");
        }
        if (e.end_ms > duration_ms) {
            throw ConfigError("episode span must lie inside [0, duration_ms)");
        }
        if (i > 0 && sorted[i - 1].end_ms > e.start_ms) {
            throw ConfigError("episodes must not overlap");
        }
    }
}

SynthResult generate_stream(const SynthConfig& config, std::size_t sample_count) {
    config.validate();
    if (sample_count < 3) {
        throw ConfigError("sample_count must be >= 3, got " + std::to_string(sample_count));
    }

    // Independent substreams keep the EMG byte stream invariant under
    // changes to the IMU/button schedules.
    SplitMix64 emg_rng(config.seed);
    SplitMix64 imu_rng(config.seed + 1);
    SplitMix64 btn_rng(config.seed + 2);

    const std::uint64_t period_ms = std::max<std::uint64_t>(1, 1000 / config.emg_rate_hz);

    const auto episode_at = [&](std::uint64_t t) -> const Episode* {
        for (const Episode& e : config.episodes) {
            if (t >= e.start_ms && t < e.end_ms) return &e;
        }
        return nullptr;
    };

    struct Event {
        std::uint64_t t_ms;
        int priority; // EMG < IMU < BTN at equal timestamps
        Frame frame;
    };
    std::vector<Event> events;

    // EMG: baseline + episode intensity + uniform noise + occasional spike.
    std::size_t emg_count = 0;
    for (std::uint64_t t = 0; t < config.duration_ms; t += period_ms) {
        const int noise =
            static_cast<int>(emg_rng.next_range(-config.noise_amp, config.noise_amp));
        const bool spike = emg_rng.next_unit() < config.spike_prob;
        const Episode* episode = episode_at(t);
        long long value = config.baseline_adc + noise;
        if (episode != nullptr) value += episode->intensity_adc;
        if (spike) value += config.spike_adc;
        events.push_back({t, 0, EmgFrame{0, t, clamp_adc(value)}});
        ++emg_count;
    }

    // IMU: slowly drifting accelerometer around gravity, gyro magnitude
    // elevated inside episodes. Placeholder kinematics by design.
    std::int32_t ax = 0, ay = 0, az = 1000;
    for (std::uint64_t t = 0; t < config.duration_ms; t += kImuPeriodMs) {
        ax = std::clamp<std::int32_t>(
            ax + static_cast<std::int32_t>(imu_rng.next_range(-20, 20)), -kImuAccelLimit, kImuAccelLimit);
        ay = std::clamp<std::int32_t>(
            ay + static_cast<std::int32_t>(imu_rng.next_range(-20, 20)), -kImuAccelLimit, kImuAccelLimit);
        az = std::clamp<std::int32_t>(1000 + static_cast<std::int32_t>(imu_rng.next_range(-10, 10)),
                                      -kImuAccelLimit, kImuAccelLimit);
        const Episode* episode = episode_at(t);
        const std::int32_t gyro_base = episode != nullptr ? episode->intensity_adc / 2 : 0;
        const auto gyro = [&]() {
            return gyro_base + static_cast<std::int32_t>(imu_rng.next_range(-40, 40));
        };
        ImuFrame imu;
        imu.t_ms = t;
        imu.ax = ax;
        imu.ay = ay;
        imu.az = az;
        imu.gx = gyro();
        imu.gy = gyro();
        imu.gz = gyro();
        events.push_back({t, 1, imu});
    }

    // Buttons: one compliance draw per episode, pressed shortly after the
    // episode starts, level scaled from intensity.
    for (const Episode& episode : config.episodes) {
        const bool pressed = btn_rng.next_unit() < config.button_compliance;
        if (!pressed) continue;
        const std::uint64_t t = std::min(episode.start_ms + kButtonDelayMs, episode.end_ms - 1);
        events.push_back({t, 2, ButtonFrame{0, t, button_level(episode.intensity_adc)}});
    }

    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        return a.t_ms != b.t_ms ? a.t_ms < b.t_ms : a.priority < b.priority;
    });

    SynthResult result;
    result.frames.reserve(events.size());
    std::uint64_t seq = 0;
    for (Event& ev : events) {
        std::visit([&](auto& f) { f.seq = seq; }, ev.frame);
        ++seq;
        result.frames.push_back(std::move(ev.frame));
    }

    // Window-level labels over the full windows the EMG stream yields.
    const std::size_t window_count = emg_count / sample_count;
    const std::uint64_t window_span = period_ms * sample_count;
    result.truth.labels.assign(window_count, 0);
    result.truth.episode_ids.assign(window_count, {});
    for (std::size_t w = 0; w < window_count; ++w) {
        const std::uint64_t wstart = static_cast<std::uint64_t>(w) * window_span;
        const std::uint64_t wend = wstart + window_span;
        for (std::size_t e = 0; e < config.episodes.size(); ++e) {
            const Episode& ep = config.episodes[e];
            const std::uint64_t lo = std::max(wstart, ep.start_ms);
            const std::uint64_t hi = std::min(wend, ep.end_ms);
            if (hi <= lo) continue;
            result.truth.episode_ids[w].push_back(e);
            if ((hi - lo) * 2 >= window_span) {
                result.truth.labels[w] = 1;
            }
        }
    }
    return result;
}

void write_truth_csv(std::ostream& out, const GroundTruth& truth) {
    out << "window_id,label\n";
    for (std::size_t w = 0; w < truth.labels.size(); ++w) {
        out << w << ',' << truth.labels[w] << '\n';
    }
}

std::vector<int> read_truth_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ArgumentError("truth CSV: missing header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "window_id,label") {
        throw ArgumentError("truth CSV: header must be window_id,label");
    }
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        const std::string id_text = line.substr(0, comma);
        const std::string label_text = comma == std::string::npos ? "" : line.substr(comma + 1);
        if (id_text != std::to_string(labels.size()) || (label_text != "0" && label_text != "1")) {
            throw ArgumentError("truth CSV line " + std::to_string(line_no) +
                                ": expected consecutive `window_id,label` rows");
        }
        labels.push_back(label_text == "1" ? 1 : 0);
    }
    return labels;
}

void write_frames(std::ostream& out, std::span<const Frame> frames) {
    for (const Frame& frame : frames) {
        out << serialize_frame(frame) << '\n';
    }
}

} // namespace cnsp
