#pragma once

#include "cnsp/frame.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cnsp {

// A scripted pain episode: adc counts added to the baseline over
// [start_ms, end_ms).
struct Episode {
    std::uint64_t start_ms = 0;
    std::uint64_t end_ms = 0;
    int intensity_adc = 0;
};

// Deterministic synthetic patient/device session. All randomness comes
// from splitmix64 substreams of `seed`, integer arithmetic only, so the
// serialized stream is byte-identical across runs and platforms.
struct SynthConfig {
    std::uint64_t seed = 1;
    std::uint64_t duration_ms = 10000;
    std::uint64_t emg_rate_hz = 100;
    int baseline_adc = 120;
    int noise_amp = 15;              // uniform noise in [-noise_amp, +noise_amp]
    std::vector<Episode> episodes;   // non-overlapping, inside [0, duration_ms)
    double spike_prob = 0.01;        // per EMG sample
    int spike_adc = 1000;
    double button_compliance = 0.9;  // chance a button press follows an episode start

    void validate() const; // throws ConfigError
};

// Per-window binary pain labels: 1 when a single episode covers at least
// half of the window span. episode_ids lists every episode overlapping the
// window at all.
struct GroundTruth {
    std::vector<int> labels;
    std::vector<std::vector<std::size_t>> episode_ids;
};

struct SynthResult {
    std::vector<Frame> frames; // time-ordered, globally increasing seq
    GroundTruth truth;
};

// Generates the EMG/IMU/button frame stream plus window-level ground
// truth. sample_count fixes the window geometry the labels refer to.
SynthResult generate_stream(const SynthConfig& config, std::size_t sample_count = 32);

// Ground-truth CSV: header `window_id,label`.
void write_truth_csv(std::ostream& out, const GroundTruth& truth);
std::vector<int> read_truth_csv(std::istream& in); // labels by window_id

// One frame per LF-terminated line in canonical form.
void write_frames(std::ostream& out, std::span<const Frame> frames);

} // namespace cnsp
