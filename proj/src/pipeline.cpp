#include "cnsp/pipeline.hpp"

#include "cnsp/errors.hpp"
#include "cnsp/numfmt.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <utility>

namespace cnsp {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kGyroAttribute = "gyro_mean";

// Mean |gyro| magnitude of the IMU frames inside each window's
// [start_ms, end_ms); a window without IMU coverage reads 0.0.
std::vector<double> gyro_window_means(std::span<const ImuFrame> imu,
                                      std::span<const Window> windows) {
    std::vector<double> means(windows.size(), 0.0);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        double total = 0.0;
        std::size_t hits = 0;
        for (const ImuFrame& frame : imu) {
            if (frame.t_ms < windows[i].start_ms || frame.t_ms >= windows[i].end_ms) continue;
            const double gx = frame.gx;
            const double gy = frame.gy;
            const double gz = frame.gz;
            total += std::sqrt(gx * gx + gy * gy + gz * gz);
            ++hits;
        }
        if (hits > 0) means[i] = total / static_cast<double>(hits);
    }
    return means;
}

} // namespace

std::string_view to_string(PainLevel level) {
    switch (level) {
    case PainLevel::none: return "none";
    case PainLevel::low: return "low";
    case PainLevel::moderate: return "moderate";
    case PainLevel::high: return "high";
    }
    return "none";
}

PainLevel assess_pain(const WindowFeatures& features, const PainThresholds& thresholds) {
    if (features.average_value >= thresholds.t_high) return PainLevel::high;
    if (features.average_value >= thresholds.t_mod) return PainLevel::moderate;
    if (features.average_value >= thresholds.t_low) return PainLevel::low;
    return PainLevel::none;
}

TherapyCommand therapy_decide(PainLevel level, std::uint64_t t_ms, TherapyState& state) {
    const int target = static_cast<int>(level);
    if (target >= state.intensity) {
        state.intensity = target;
        state.lower_streak = 0;
    } else if (++state.lower_streak >= 2) {
        state.intensity = target;
        state.lower_streak = 0;
    }
    return TherapyCommand{t_ms, state.intensity, state.intensity >= 2};
}

std::vector<int> align_button_labels(std::span<const ButtonFrame> buttons,
                                     std::span<const Window> windows) {
    std::vector<int> labels(windows.size(), 0);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        for (const ButtonFrame& button : buttons) {
            if (button.t_ms >= windows[i].start_ms && button.t_ms < windows[i].end_ms) {
                labels[i] = 1;
                break;
            }
        }
    }
    return labels;
}

InformationSystemBuild build_information_system(std::span<const WindowFeatures> features,
                                                const std::optional<std::vector<double>>& gyro_abs_mean,
                                                std::span<const int> labels, int bins) {
    if (labels.size() != features.size())
        throw ArgumentError("label count does not match window count");
    if (gyro_abs_mean && gyro_abs_mean->size() != features.size())
        throw ArgumentError("gyro aggregate count does not match window count");

    InformationSystemBuild build;
    InformationSystem& system = build.system;

    system.objects.reserve(features.size());
    for (const WindowFeatures& f : features) system.objects.push_back("w" + std::to_string(f.window_id));

    std::vector<std::pair<std::string, std::vector<double>>> columns;
    columns.reserve(4);
    auto column_of = [&](const char* name, auto getter) {
        std::vector<double> values(features.size());
        for (std::size_t i = 0; i < features.size(); ++i) values[i] = getter(features[i]);
        columns.emplace_back(name, std::move(values));
    };
    column_of("average_value", [](const WindowFeatures& f) { return f.average_value; });
    column_of("mean_emg", [](const WindowFeatures& f) { return f.mean_emg; });
    column_of("peak_emg", [](const WindowFeatures& f) { return f.peak_emg; });
    if (gyro_abs_mean) columns.emplace_back(std::string(kGyroAttribute), *gyro_abs_mean);

    const std::size_t attr_count = columns.size();
    system.attributes.reserve(attr_count);
    system.codes.assign(features.size() * attr_count, 0);
    system.raw.assign(features.size() * attr_count, 0.0);

    for (std::size_t a = 0; a < attr_count; ++a) {
        system.attributes.push_back(columns[a].first);
        NormalizeResult normalized = normalize_attribute(columns[a].second);
        if (normalized.constant)
            build.warnings.push_back("attribute " + columns[a].first + " is constant");
        std::vector<int> codes = discretize(normalized.values, bins);
        for (std::size_t i = 0; i < features.size(); ++i) {
            system.raw[i * attr_count + a] = normalized.values[i];
            system.codes[i * attr_count + a] = codes[i];
        }
    }

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != 0) members.push_back(i);
    build.target = TargetSet::from_indices(features.size(), members);

    system.validate();
    return build;
}

SessionReport run_session(const RunConfig& config, std::span<const std::string> lines,
                          const std::optional<std::vector<int>>& truth_labels) {
    config.validate();

    ParsedStream parsed = parse_stream(lines);

    SessionReport report;
    report.stream_stats = parsed.stats;

    // Windowing needs samples ordered by seq; a frame whose seq does not
    // advance past the last accepted one is dropped, not reordered.
    std::vector<EmgSample> samples;
    std::vector<ImuFrame> imu;
    std::vector<ButtonFrame> buttons;
    std::uint64_t last_emg_seq = 0;
    bool have_emg = false;
    for (const Frame& frame : parsed.frames) {
        if (const auto* e = std::get_if<EmgFrame>(&frame)) {
            if (have_emg && e->seq <= last_emg_seq) {
                ++report.samples_dropped_out_of_order;
                continue;
            }
            have_emg = true;
            last_emg_seq = e->seq;
            samples.push_back(EmgSample{e->seq, e->t_ms, e->adc});
        } else if (const auto* m = std::get_if<ImuFrame>(&frame)) {
            imu.push_back(*m);
        } else if (const auto* b = std::get_if<ButtonFrame>(&frame)) {
            buttons.push_back(*b);
        }
    }

    WindowingResult windowing = window_stream(samples, config.signal.sample_count);
    report.samples_discarded = windowing.discarded_samples;
    report.window_count = windowing.windows.size();
    if (windowing.windows.empty()) {
        // A vacuous run is not an error: report the stream statistics and
        // stop before any per-window stage.
        if (truth_labels && !truth_labels->empty())
            throw ArgumentError("ground truth covers " + std::to_string(truth_labels->size()) +
                                " windows, stream has 0");
        if (truth_labels) {
            report.recall = 1.0;
            report.precision = 1.0;
        }
        return report;
    }

    std::vector<WindowFeatures> features;
    features.reserve(windowing.windows.size());
    for (const Window& window : windowing.windows)
        features.push_back(extract_features(window, config.signal));

    std::optional<std::vector<double>> gyro;
    if (!imu.empty()) gyro = gyro_window_means(imu, windowing.windows);

    std::vector<int> labels;
    if (truth_labels) {
        if (truth_labels->size() != windowing.windows.size())
            throw ArgumentError("ground truth covers " + std::to_string(truth_labels->size()) +
                                " windows, stream has " +
                                std::to_string(windowing.windows.size()));
        labels = *truth_labels;
    } else {
        labels = align_button_labels(buttons, windowing.windows);
    }

    InformationSystemBuild build =
        build_information_system(features, gyro, labels, config.bins);
    report.warnings = std::move(build.warnings);

    report.weights = attribute_weights(build.system, build.target, config.alpha, config.beta,
                                       config.dependence_mode);
    if (report.weights.uniform_fallback)
        report.warnings.push_back("all attribute weights are zero; screening uses uniform weights");

    ScreenResult screening = screen(build.system, report.weights, config.theta);
    std::vector<bool> screened_mask(features.size(), false);
    for (std::size_t idx : screening.selected) screened_mask[idx] = true;

    report.assessments.reserve(features.size());
    report.commands.reserve(features.size());
    TherapyState state;
    for (std::size_t i = 0; i < features.size(); ++i) {
        PainAssessment assessment;
        assessment.window_id = features[i].window_id;
        assessment.average_value = features[i].average_value;
        assessment.score = screening.scores[i];
        assessment.level = assess_pain(features[i], config.thresholds);
        assessment.screened = screened_mask[i];
        report.assessments.push_back(assessment);
        report.commands.push_back(
            therapy_decide(assessment.level, windowing.windows[i].end_ms, state));
    }

    for (std::size_t i = 0; i < report.assessments.size(); ++i) {
        if (report.assessments[i].level == PainLevel::none) continue;
        if (!report.episodes.empty() && report.episodes.back().end_window + 1 == i) {
            report.episodes.back().end_window = i;
            report.episodes.back().end_ms = windowing.windows[i].end_ms;
        } else {
            report.episodes.push_back(EpisodeSpan{i, i, windowing.windows[i].start_ms,
                                                  windowing.windows[i].end_ms});
        }
    }

    if (truth_labels) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < features.size(); ++i) {
            const bool predicted = report.assessments[i].level != PainLevel::none;
            const bool actual = labels[i] != 0;
            if (predicted && actual) ++tp;
            else if (predicted && !actual) ++fp;
            else if (!predicted && actual) ++fn;
        }
        report.recall = (tp + fn) == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
        report.precision = (tp + fp) == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    }

    return report;
}

void write_report_jsonl(std::ostream& out, const SessionReport& report) {
    for (const PainAssessment& a : report.assessments) {
        ordered_json line;
        line["type"] = "assessment";
        line["window_id"] = a.window_id;
        line["average_value"] = a.average_value;
        line["score"] = a.score;
        line["level"] = to_string(a.level);
        line["screened"] = a.screened;
        out << line.dump() << '\n';
    }

    ordered_json summary;
    summary["type"] = "summary";
    summary["windows"] = report.window_count;
    summary["frames_ok"] = report.stream_stats.frames_ok;
    summary["frames_malformed"] = report.stream_stats.frames_malformed;
    summary["frames_out_of_order"] = report.stream_stats.frames_out_of_order;
    summary["samples_dropped_out_of_order"] = report.samples_dropped_out_of_order;
    summary["samples_discarded"] = report.samples_discarded;

    ordered_json weights;
    weights["attributes"] = report.weights.attributes;
    weights["rho"] = report.weights.rho;
    weights["gamma"] = report.weights.gamma;
    weights["omega"] = report.weights.omega;
    weights["omega_norm"] = report.weights.omega_norm;
    weights["alpha"] = report.weights.alpha;
    weights["beta"] = report.weights.beta;
    summary["weights"] = std::move(weights);

    ordered_json episodes = ordered_json::array();
    for (const EpisodeSpan& span : report.episodes) {
        ordered_json e;
        e["start_window"] = span.start_window;
        e["end_window"] = span.end_window;
        e["start_ms"] = span.start_ms;
        e["end_ms"] = span.end_ms;
        episodes.push_back(std::move(e));
    }
    summary["episodes"] = std::move(episodes);

    if (report.recall) summary["recall"] = *report.recall;
    if (report.precision) summary["precision"] = *report.precision;
    summary["warnings"] = report.warnings;

    out << summary.dump() << '\n';
}

void write_weights_csv(std::ostream& out, const AttributeWeights& weights) {
    out << "attribute,rho,gamma,omega,omega_norm\n";
    for (std::size_t a = 0; a < weights.attributes.size(); ++a) {
        out << weights.attributes[a] << ',' << format_double(weights.rho[a]) << ','
            << format_double(weights.gamma[a]) << ',' << format_double(weights.omega[a]) << ','
            << format_double(weights.omega_norm[a]) << '\n';
    }
}

void write_commands(std::ostream& out, std::span<const TherapyCommand> commands) {
    for (const TherapyCommand& command : commands) {
        out << "CMD," << command.t_ms << ',' << command.massage_intensity << ','
            << (command.heat_on ? 1 : 0) << '\n';
    }
}

} // namespace cnsp
