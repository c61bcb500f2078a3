#pragma once

#include "cnsp/roughset.hpp"
#include "cnsp/signal.hpp"
#include "cnsp/synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace cnsp {

// Pain interval boundaries in ADC counts, half-open upward: a trimmed
// average below t_low is no pain, below t_mod low, below t_high moderate,
// otherwise high.
struct PainThresholds {
    double t_low = 200.0;
    double t_mod = 400.0;
    double t_high = 700.0;

    void validate() const; // throws ConfigError unless t_low < t_mod < t_high
};

// Every knob of a batch run in one place, loaded from a flat `key = value`
// file so parameter sets travel with their results.
struct RunConfig {
    SignalConfig signal;
    int bins = 5;
    double alpha = 0.5;
    double beta = 0.5;
    double theta = 0.5;
    DependenceMode dependence_mode = DependenceMode::single;
    PainThresholds thresholds;
    SynthConfig synth;

    void validate() const;
};

// Parses `key = value` lines ('#' comments, blank lines allowed). Keys are
// the flat field names: sample_count, filter_window, gain, bins, alpha,
// beta, theta, dependence_mode, t_low, t_mod, t_high, seed, duration_ms,
// emg_rate_hz, baseline_adc, noise_amp, spike_prob, spike_adc,
// button_compliance, episodes. Episodes are semicolon-separated
// `start:end:intensity` triplets. Unknown keys and invalid values raise
// ConfigError with <name>:<line> diagnostics.
RunConfig parse_run_config(std::istream& in, const std::string& name);
RunConfig load_run_config(const std::filesystem::path& path); // IoError if unreadable

} // namespace cnsp
