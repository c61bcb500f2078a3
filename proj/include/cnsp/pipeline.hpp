#pragma once

#include "cnsp/config.hpp"
#include "cnsp/frame.hpp"
#include "cnsp/roughset.hpp"
#include "cnsp/signal.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cnsp {

enum class PainLevel { none, low, moderate, high };

std::string_view to_string(PainLevel level);

// One window's verdict: the trimmed average that placed it in a pain
// interval, the weighted rough-set score, and whether it passed screening.
struct PainAssessment {
    std::size_t window_id = 0;
    double average_value = 0.0;
    double score = 0.0;
    PainLevel level = PainLevel::none;
    bool screened = false;
};

// Simulated actuation event, one per window: massage intensity 0..3 and a
// heat flag (on from moderate pain upward). Wire form:
// CMD,<t_ms>,<intensity>,<heat 0|1>.
struct TherapyCommand {
    std::uint64_t t_ms = 0;
    int massage_intensity = 0;
    bool heat_on = false;

    bool operator==(const TherapyCommand&) const = default;
};

// Hysteresis state: intensity rises immediately with the assessed level
// but drops only after two consecutive lower-level windows, so commands
// do not flap on an alternating input.
struct TherapyState {
    int intensity = 0;
    int lower_streak = 0;
};

// Maps the assessed level through the hysteresis state and advances it.
TherapyCommand therapy_decide(PainLevel level, std::uint64_t t_ms, TherapyState& state);

// Interval lookup on the trimmed average; boundaries are inclusive upward
// (average == t_mod reads as moderate).
PainLevel assess_pain(const WindowFeatures& features, const PainThresholds& thresholds);

// Window label 1 when any button press lands inside [start_ms, end_ms).
// Used as the target set X when no ground truth is supplied.
std::vector<int> align_button_labels(std::span<const ButtonFrame> buttons,
                                     std::span<const Window> windows);

// Builds the decision table over the per-window features (trimmed average,
// mean and peak of the conditioned signal, plus the mean absolute gyro
// magnitude when IMU data is present): each attribute is normalized onto
// [0, 1] and discretized into `bins` codes; X gathers the label-1 windows.
struct InformationSystemBuild {
    InformationSystem system;
    TargetSet target;
    std::vector<std::string> warnings; // constant attribute columns
};

InformationSystemBuild build_information_system(std::span<const WindowFeatures> features,
                                                const std::optional<std::vector<double>>& gyro_abs_mean,
                                                std::span<const int> labels, int bins);

struct EpisodeSpan {
    std::size_t start_window = 0;
    std::size_t end_window = 0; // inclusive
    std::uint64_t start_ms = 0;
    std::uint64_t end_ms = 0;
};

// Everything one session produces, reported in window order; counts stay
// consistent with the stream statistics.
struct SessionReport {
    std::vector<PainAssessment> assessments;
    std::vector<TherapyCommand> commands;
    AttributeWeights weights;
    StreamStats stream_stats;
    std::uint64_t samples_dropped_out_of_order = 0;
    std::size_t samples_discarded = 0; // trailing partial window
    std::size_t window_count = 0;
    std::vector<EpisodeSpan> episodes; // maximal runs of pain-level windows
    std::optional<double> recall;      // vs ground truth, when supplied
    std::optional<double> precision;
    std::vector<std::string> warnings;
};

// Full batch pass over a frame stream: parse, window, extract features,
// build the information system, weight and screen, assess pain levels,
// and derive therapy commands. The target set X comes from ground-truth
// labels when given, otherwise from button presses. Deterministic in its
// inputs.
SessionReport run_session(const RunConfig& config, std::span<const std::string> lines,
                          const std::optional<std::vector<int>>& truth_labels = std::nullopt);

// JSON Lines: one assessment object per line, then one summary object
// carrying stream statistics, episode spans, and warnings.
void write_report_jsonl(std::ostream& out, const SessionReport& report);

// CSV table `attribute,rho,gamma,omega,omega_norm`.
void write_weights_csv(std::ostream& out, const AttributeWeights& weights);

// `CMD,<t_ms>,<intensity>,<heat 0|1>` lines.
void write_commands(std::ostream& out, std::span<const TherapyCommand> commands);

} // namespace cnsp
