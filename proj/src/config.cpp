#include "cnsp/config.hpp"

#include "cnsp/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cnsp {

void PainThresholds::validate() const {
    if (!(t_low < t_mod && t_mod < t_high)) {
        throw ConfigError("pain thresholds must satisfy t_low < t_mod < t_high");
    }
}

void RunConfig::validate() const {
    signal.validate();
    if (bins < 2) throw ConfigError("bins must be >= 2");
    if (alpha < 0.0 || beta < 0.0 || std::abs(alpha + beta - 1.0) > 1e-12) {
        throw ConfigError("alpha and beta must be non-negative with alpha + beta = 1");
    }
    if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in [0, 1]");
    thresholds.validate();
    synth.validate();
}

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t");
    return text.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& name, std::size_t line_no, const std::string& message) {
    throw ConfigError(name + ":" + std::to_string(line_no) + ": " + message);
}

template <typename T>
T parse_number(const std::string& name, std::size_t line_no, const std::string& key,
               const std::string& text) {
    std::istringstream stream(text);
    T value{};
    stream >> value;
    if (stream.fail() || !(stream >> std::ws).eof()) {
        fail(name, line_no, "bad value for " + key + ": '" + text + "'");
    }
    return value;
}

std::vector<Episode> parse_episodes(const std::string& name, std::size_t line_no,
                                    const std::string& text) {
    std::vector<Episode> episodes;
    std::stringstream list(text);
    std::string item;
    while (std::getline(list, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        Episode episode;
        char c1 = 0, c2 = 0;
        std::istringstream triple(item);
        triple >> episode.start_ms >> c1 >> episode.end_ms >> c2 >> episode.intensity_adc;
        if (triple.fail() || c1 != ':' || c2 != ':' || !(triple >> std::ws).eof()) {
            fail(name, line_no, "bad episode '" + item + "', expected start:end:intensity");
        }
        episodes.push_back(episode);
    }
    return episodes;
}

} // namespace

RunConfig parse_run_config(std::istream& in, const std::string& name) {
    RunConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(name, line_no, "expected `key = value`");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            fail(name, line_no, "expected `key = value`");
        }

        if (key == "sample_count") {
            config.signal.sample_count = parse_number<std::size_t>(name, line_no, key, value);
        } else if (key == "filter_window") {
            config.signal.filter_window = parse_number<std::size_t>(name, line_no, key, value);
        } else if (key == "gain") {
            config.signal.gain = parse_number<double>(name, line_no, key, value);
        } else if (key == "bins") {
            config.bins = parse_number<int>(name, line_no, key, value);
        } else if (key == "alpha") {
            config.alpha = parse_number<double>(name, line_no, key, value);
        } else if (key == "beta") {
            config.beta = parse_number<double>(name, line_no, key, value);
        } else if (key == "theta") {
            config.theta = parse_number<double>(name, line_no, key, value);
        } else if (key == "dependence_mode") {
            try {
                config.dependence_mode = dependence_mode_from_string(value);
            } catch (const ConfigError& e) {
                fail(name, line_no, e.what());
            }
        } else if (key == "t_low") {
            config.thresholds.t_low = parse_number<double>(name, line_no, key, value);
        } else if (key == "t_mod") {
            config.thresholds.t_mod = parse_number<double>(name, line_no, key, value);
        } else if (key == "t_high") {
            config.thresholds.t_high = parse_number<double>(name, line_no, key, value);
        } else if (key == "seed") {
            config.synth.seed = parse_number<std::uint64_t>(name, line_no, key, value);
        } else if (key == "duration_ms") {
            config.synth.duration_ms = parse_number<std::uint64_t>(name, line_no, key, value);
        } else if (key == "emg_rate_hz") {
            config.synth.emg_rate_hz = parse_number<std::uint64_t>(name, line_no, key, value);
        } else if (key == "baseline_adc") {
            config.synth.baseline_adc = parse_number<int>(name, line_no, key, value);
        } else if (key == "noise_amp") {
            config.synth.noise_amp = parse_number<int>(name, line_no, key, value);
        } else if (key == "spike_prob") {
            config.synth.spike_prob = parse_number<double>(name, line_no, key, value);
        } else if (key == "spike_adc") {
            config.synth.spike_adc = parse_number<int>(name, line_no, key, value);
        } else if (key == "button_compliance") {
            config.synth.button_compliance = parse_number<double>(name, line_no, key, value);
        } else if (key == "episodes") {
            config.synth.episodes = parse_episodes(name, line_no, value);
        } else {
            fail(name, line_no, "unknown key '" + key + "'");
        }
    }
    try {
        config.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(name + ": " + e.what());
    }
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    return parse_run_config(in, path.string());
}

} // namespace cnsp
