#include "cnsp/config.hpp"
#include "cnsp/errors.hpp"
#include "cnsp/pipeline.hpp"
#include "cnsp/roughset.hpp"
#include "cnsp/signal.hpp"
#include "cnsp/stats.hpp"
#include "cnsp/synth.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace py = pybind11;

namespace {

cnsp::InformationSystem make_system(std::vector<std::string> attributes,
                                    const std::vector<std::vector<int>>& codes,
                                    const std::vector<std::vector<double>>& raw) {
    cnsp::InformationSystem system;
    system.attributes = std::move(attributes);
    const std::size_t attr_count = system.attributes.size();
    if (raw.size() != codes.size())
        throw cnsp::ArgumentError("codes and raw must have the same number of rows");
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (codes[i].size() != attr_count || raw[i].size() != attr_count)
            throw cnsp::ArgumentError("row " + std::to_string(i) + " does not match attribute count");
        system.objects.push_back("x" + std::to_string(i));
        system.codes.insert(system.codes.end(), codes[i].begin(), codes[i].end());
        system.raw.insert(system.raw.end(), raw[i].begin(), raw[i].end());
    }
    system.validate();
    return system;
}

cnsp::TargetSet make_target(std::size_t universe, const std::vector<int>& labels) {
    if (labels.size() != universe) throw cnsp::ArgumentError("label count does not match row count");
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != 0) members.push_back(i);
    return cnsp::TargetSet::from_indices(universe, members);
}

py::dict weights_dict(const cnsp::AttributeWeights& weights) {
    py::dict out;
    out["attributes"] = weights.attributes;
    out["rho"] = weights.rho;
    out["gamma"] = weights.gamma;
    out["omega"] = weights.omega;
    out["omega_norm"] = weights.omega_norm;
    out["uniform_fallback"] = weights.uniform_fallback;
    return out;
}

py::dict test_dict(const cnsp::TestResult& result) {
    py::dict out;
    out["test"] = result.test;
    out["statistic"] = result.statistic;
    out["df1"] = result.df1;
    out["df2"] = result.df2;
    out["p_value"] = result.p_value;
    return out;
}

py::dict frame_dict(const cnsp::Frame& frame) {
    py::dict out;
    if (const auto* e = std::get_if<cnsp::EmgFrame>(&frame)) {
        out["type"] = "EMG";
        out["seq"] = e->seq;
        out["t_ms"] = e->t_ms;
        out["adc"] = e->adc;
    } else if (const auto* m = std::get_if<cnsp::ImuFrame>(&frame)) {
        out["type"] = "IMU";
        out["seq"] = m->seq;
        out["t_ms"] = m->t_ms;
        out["ax"] = m->ax;
        out["ay"] = m->ay;
        out["az"] = m->az;
        out["gx"] = m->gx;
        out["gy"] = m->gy;
        out["gz"] = m->gz;
    } else if (const auto* b = std::get_if<cnsp::ButtonFrame>(&frame)) {
        out["type"] = "BTN";
        out["seq"] = b->seq;
        out["t_ms"] = b->t_ms;
        out["level"] = b->level;
    }
    return out;
}

cnsp::Frame frame_from_dict(const py::dict& d) {
    const std::string type = d["type"].cast<std::string>();
    if (type == "EMG") {
        cnsp::EmgFrame f;
        f.seq = d["seq"].cast<std::uint64_t>();
        f.t_ms = d["t_ms"].cast<std::uint64_t>();
        f.adc = d["adc"].cast<int>();
        return f;
    }
    if (type == "IMU") {
        cnsp::ImuFrame f;
        f.seq = d["seq"].cast<std::uint64_t>();
        f.t_ms = d["t_ms"].cast<std::uint64_t>();
        f.ax = d["ax"].cast<std::int32_t>();
        f.ay = d["ay"].cast<std::int32_t>();
        f.az = d["az"].cast<std::int32_t>();
        f.gx = d["gx"].cast<std::int32_t>();
        f.gy = d["gy"].cast<std::int32_t>();
        f.gz = d["gz"].cast<std::int32_t>();
        return f;
    }
    if (type == "BTN") {
        cnsp::ButtonFrame f;
        f.seq = d["seq"].cast<std::uint64_t>();
        f.t_ms = d["t_ms"].cast<std::uint64_t>();
        f.level = d["level"].cast<int>();
        return f;
    }
    throw cnsp::ArgumentError("unknown frame type: " + type);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "CNSP sensor-stream analytics core";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const cnsp::ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const cnsp::ArgumentError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const cnsp::DegenerateDataError& e) {
            PyErr_SetString(PyExc_ArithmeticError, e.what());
        } catch (const cnsp::IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        }
    });

    m.def(
        "trimmed_average",
        [](const std::vector<int>& values) { return cnsp::trimmed_average(values); },
        py::arg("values"),
        "Extreme-trimmed mean (sum - min - max) / (n - 2); requires n >= 3.");

    m.def(
        "window_features",
        [](const std::vector<int>& adc, std::size_t filter_window, double gain) {
            cnsp::Window window;
            window.samples.reserve(adc.size());
            for (std::size_t i = 0; i < adc.size(); ++i)
                window.samples.push_back(cnsp::EmgSample{i + 1, i * 10, adc[i]});
            window.start_ms = 0;
            window.end_ms = adc.size() * 10;
            cnsp::SignalConfig config;
            config.sample_count = adc.size();
            config.filter_window = filter_window;
            config.gain = gain;
            config.validate();
            cnsp::WindowFeatures features = cnsp::extract_features(window, config);
            py::dict out;
            out["min_value"] = features.min_value;
            out["max_value"] = features.max_value;
            out["average_value"] = features.average_value;
            out["mean_emg"] = features.mean_emg;
            out["peak_emg"] = features.peak_emg;
            return out;
        },
        py::arg("adc"), py::arg("filter_window") = 1, py::arg("gain") = 1.0,
        "Per-window features of one ADC sample window.");

    m.def(
        "parse_line",
        [](const std::string& line) {
            cnsp::ParseResult result = cnsp::parse_line(line);
            if (const auto* error = std::get_if<cnsp::ParseError>(&result))
                throw py::value_error(std::string(cnsp::to_string(error->kind)) + ": " +
                                      error->message);
            return frame_dict(std::get<cnsp::Frame>(result));
        },
        py::arg("line"), "Decode one wire line; raises ValueError on malformed input.");

    m.def(
        "serialize_frame",
        [](const py::dict& frame) { return cnsp::serialize_frame(frame_from_dict(frame)); },
        py::arg("frame"), "Encode a frame dict back to its canonical wire line.");

    m.def(
        "attribute_weights",
        [](std::vector<std::string> attributes, const std::vector<std::vector<int>>& codes,
           const std::vector<std::vector<double>>& raw, const std::vector<int>& labels,
           double alpha, double beta, const std::string& mode) {
            cnsp::InformationSystem system = make_system(std::move(attributes), codes, raw);
            cnsp::TargetSet target = make_target(system.object_count(), labels);
            return weights_dict(cnsp::attribute_weights(system, target, alpha, beta,
                                                        cnsp::dependence_mode_from_string(mode)));
        },
        py::arg("attributes"), py::arg("codes"), py::arg("raw"), py::arg("labels"),
        py::arg("alpha") = 0.5, py::arg("beta") = 0.5, py::arg("mode") = "single",
        "Rough-set dependence/importance weights over a decision table.");

    m.def(
        "screen_table",
        [](std::vector<std::string> attributes, const std::vector<std::vector<int>>& codes,
           const std::vector<std::vector<double>>& raw, const std::vector<int>& labels,
           double alpha, double beta, double theta, const std::string& mode) {
            cnsp::InformationSystem system = make_system(std::move(attributes), codes, raw);
            cnsp::TargetSet target = make_target(system.object_count(), labels);
            cnsp::AttributeWeights weights = cnsp::attribute_weights(
                system, target, alpha, beta, cnsp::dependence_mode_from_string(mode));
            cnsp::ScreenResult result = cnsp::screen(system, weights, theta);
            py::dict out;
            out["weights"] = weights_dict(weights);
            out["selected"] = result.selected;
            out["scores"] = result.scores;
            return out;
        },
        py::arg("attributes"), py::arg("codes"), py::arg("raw"), py::arg("labels"),
        py::arg("alpha") = 0.5, py::arg("beta") = 0.5, py::arg("theta") = 0.5,
        py::arg("mode") = "single", "Weight a decision table and screen objects by theta.");

    m.def(
        "t_test",
        [](const std::vector<double>& g1, const std::vector<double>& g2) {
            return test_dict(cnsp::t_test(g1, g2));
        },
        py::arg("g1"), py::arg("g2"), "Pooled two-sample t-test with two-sided p-value.");

    m.def(
        "anova_oneway",
        [](const std::vector<std::vector<double>>& groups) {
            cnsp::GroupSamples samples;
            for (std::size_t i = 0; i < groups.size(); ++i)
                samples.groups.push_back({"g" + std::to_string(i + 1), groups[i]});
            return test_dict(cnsp::anova_oneway(samples));
        },
        py::arg("groups"), "One-way fixed-effects ANOVA over two or more groups.");

    m.def(
        "simulate_lines",
        [](const std::string& config_text, std::size_t sample_count) {
            std::istringstream in(config_text);
            cnsp::RunConfig config = cnsp::parse_run_config(in, "<config>");
            cnsp::SynthResult result = cnsp::generate_stream(config.synth, sample_count);
            std::vector<std::string> lines;
            lines.reserve(result.frames.size());
            for (const cnsp::Frame& frame : result.frames)
                lines.push_back(cnsp::serialize_frame(frame));
            return py::make_tuple(lines, result.truth.labels);
        },
        py::arg("config_text") = "", py::arg("sample_count") = 32,
        "Deterministic synthetic session: (wire lines, window ground-truth labels).");

    m.def(
        "run_session_jsonl",
        [](const std::string& config_text, const std::vector<std::string>& lines,
           const std::optional<std::vector<int>>& truth) {
            std::istringstream in(config_text);
            cnsp::RunConfig config = cnsp::parse_run_config(in, "<config>");
            cnsp::SessionReport report = cnsp::run_session(config, lines, truth);
            std::ostringstream out;
            cnsp::write_report_jsonl(out, report);
            return out.str();
        },
        py::arg("config_text"), py::arg("lines"), py::arg("truth") = py::none(),
        "Full pipeline over wire lines; returns the JSON Lines session report.");
}
