#include "doctest.h"

#include "cnsp/config.hpp"
#include "cnsp/errors.hpp"
#include "cnsp/roughset.hpp"

#include <sstream>
#include <string>

namespace {

cnsp::RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return cnsp::parse_run_config(in, "test.conf");
}

std::string error_message(const std::string& text) {
    try {
        parse(text);
    } catch (const cnsp::ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("an empty config yields the documented defaults") {
    const cnsp::RunConfig config = parse("");
    CHECK(config.signal.sample_count == 32);
    CHECK(config.signal.filter_window == 1);
    CHECK(config.signal.gain == doctest::Approx(1.0));
    CHECK(config.bins == 5);
    CHECK(config.alpha == doctest::Approx(0.5));
    CHECK(config.beta == doctest::Approx(0.5));
    CHECK(config.theta == doctest::Approx(0.5));
    CHECK(config.dependence_mode == cnsp::DependenceMode::single);
    CHECK(config.thresholds.t_low == doctest::Approx(200.0));
    CHECK(config.thresholds.t_mod == doctest::Approx(400.0));
    CHECK(config.thresholds.t_high == doctest::Approx(700.0));
    CHECK(config.synth.seed == 1);
    CHECK(config.synth.duration_ms == 10000);
    CHECK(config.synth.emg_rate_hz == 100);
    CHECK(config.synth.baseline_adc == 120);
    CHECK(config.synth.noise_amp == 15);
    CHECK(config.synth.spike_prob == doctest::Approx(0.01));
    CHECK(config.synth.spike_adc == 1000);
    CHECK(config.synth.button_compliance == doctest::Approx(0.9));
    CHECK(config.synth.episodes.empty());
}

TEST_CASE("every key is assignable") {
    const cnsp::RunConfig config = parse(
        "# full configuration\n"
        "sample_count = 16\n"
        "filter_window = 3\n"
        "gain = 2.5\n"
        "bins = 4\n"
        "alpha = 0.25\n"
        "beta = 0.75\n"
        "theta = 0.6\n"
        "dependence_mode = full\n"
        "t_low = 150\n"
        "t_mod = 300\n"
        "t_high = 600\n"
        "seed = 12345\n"
        "duration_ms = 20000\n"
        "emg_rate_hz = 200\n"
        "baseline_adc = 100\n"
        "noise_amp = 10\n"
        "spike_prob = 0.05\n"
        "spike_adc = 900\n"
        "button_compliance = 0.5\n"
        "episodes = 1000:2000:300;5000:8000:450\n");

    CHECK(config.signal.sample_count == 16);
    CHECK(config.signal.filter_window == 3);
    CHECK(config.signal.gain == doctest::Approx(2.5));
    CHECK(config.bins == 4);
    CHECK(config.alpha == doctest::Approx(0.25));
    CHECK(config.beta == doctest::Approx(0.75));
    CHECK(config.theta == doctest::Approx(0.6));
    CHECK(config.dependence_mode == cnsp::DependenceMode::full);
    CHECK(config.thresholds.t_low == doctest::Approx(150.0));
    CHECK(config.synth.seed == 12345);
    CHECK(config.synth.duration_ms == 20000);
    CHECK(config.synth.emg_rate_hz == 200);
    REQUIRE(config.synth.episodes.size() == 2);
    CHECK(config.synth.episodes[0].start_ms == 1000);
    CHECK(config.synth.episodes[0].end_ms == 2000);
    CHECK(config.synth.episodes[0].intensity_adc == 300);
    CHECK(config.synth.episodes[1].start_ms == 5000);
    CHECK(config.synth.episodes[1].end_ms == 8000);
    CHECK(config.synth.episodes[1].intensity_adc == 450);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
    const cnsp::RunConfig config = parse(
        "\n"
        "   # leading comment\n"
        "  bins=3\n"
        "theta   =   0.75   \n"
        "\n");
    CHECK(config.bins == 3);
    CHECK(config.theta == doctest::Approx(0.75));
}

TEST_CASE("unknown keys are rejected with file and line") {
    const std::string message = error_message("bins = 3\nbogus_key = 1\n");
    CHECK(message.find("test.conf:2") != std::string::npos);
    CHECK(message.find("bogus_key") != std::string::npos);
}

TEST_CASE("bad values are rejected with file and line") {
    CHECK(error_message("bins = soon\n").find("test.conf:1") != std::string::npos);
    CHECK(error_message("alpha = \n").find("test.conf:1") != std::string::npos);
    CHECK(error_message("episodes = 10:5:100\n") != "");
    CHECK(error_message("episodes = 1:2\n") != "");
    CHECK(error_message("no_equals_sign\n").find("test.conf:1") != std::string::npos);
}

TEST_CASE("cross-field validation runs after parsing") {
    CHECK_THROWS_AS(parse("alpha = 0.9\nbeta = 0.9\n"), cnsp::ConfigError);
    CHECK_THROWS_AS(parse("theta = 1.5\n"), cnsp::ConfigError);
    CHECK_THROWS_AS(parse("t_low = 500\nt_mod = 400\n"), cnsp::ConfigError);
    CHECK_THROWS_AS(parse("sample_count = 2\n"), cnsp::ConfigError);
    CHECK_THROWS_AS(parse("filter_window = 2\n"), cnsp::ConfigError);
    CHECK_THROWS_AS(parse("episodes = 0:500:100;400:800:100\n"), cnsp::ConfigError);
    CHECK_THROWS_AS(parse("bins = 1\n"), cnsp::ConfigError);
}

TEST_CASE("load_run_config raises IoError for a missing file") {
    CHECK_THROWS_AS(cnsp::load_run_config("/nonexistent/path/cnsp.conf"), cnsp::IoError);
}
