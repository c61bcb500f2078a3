#include "cnsp/config.hpp"
#include "cnsp/errors.hpp"
#include "cnsp/numfmt.hpp"
#include "cnsp/pipeline.hpp"
#include "cnsp/roughset.hpp"
#include "cnsp/stats.hpp"
#include "cnsp/synth.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cnsp::IoError("cannot read " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cnsp::IoError("cannot write " + path.string());
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw cnsp::IoError("write failed on " + path.string());
}

cnsp::RunConfig load_config_or_default(const std::string& config_path) {
    if (config_path.empty()) return cnsp::RunConfig{};
    return cnsp::load_run_config(config_path);
}

int cmd_simulate(const std::string& config_path, const std::string& out_prefix,
                 const std::optional<std::uint64_t>& seed) {
    cnsp::RunConfig config = load_config_or_default(config_path);
    if (seed) config.synth.seed = *seed;
    config.validate();

    cnsp::SynthResult result = cnsp::generate_stream(config.synth, config.signal.sample_count);

    const std::filesystem::path stream_path = out_prefix + ".stream.txt";
    std::ofstream stream_out = open_output(stream_path);
    cnsp::write_frames(stream_out, result.frames);
    finish_output(stream_out, stream_path);

    const std::filesystem::path truth_path = out_prefix + ".truth.csv";
    std::ofstream truth_out = open_output(truth_path);
    cnsp::write_truth_csv(truth_out, result.truth);
    finish_output(truth_out, truth_path);
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& input_path,
            const std::string& out_prefix, const std::string& truth_path) {
    cnsp::RunConfig config = load_config_or_default(config_path);
    config.validate();

    std::vector<std::string> lines = read_lines(input_path);

    std::optional<std::vector<int>> truth;
    if (!truth_path.empty()) {
        std::ifstream truth_in(truth_path, std::ios::binary);
        if (!truth_in) throw cnsp::IoError("cannot read " + truth_path);
        truth = cnsp::read_truth_csv(truth_in);
    }

    cnsp::SessionReport report = cnsp::run_session(config, lines, truth);

    const std::filesystem::path report_path = out_prefix + ".report.jsonl";
    std::ofstream report_out = open_output(report_path);
    cnsp::write_report_jsonl(report_out, report);
    finish_output(report_out, report_path);

    const std::filesystem::path weights_path = out_prefix + ".weights.csv";
    std::ofstream weights_out = open_output(weights_path);
    cnsp::write_weights_csv(weights_out, report.weights);
    finish_output(weights_out, weights_path);

    const std::filesystem::path commands_path = out_prefix + ".commands.txt";
    std::ofstream commands_out = open_output(commands_path);
    cnsp::write_commands(commands_out, report.commands);
    finish_output(commands_out, commands_path);
    return 0;
}

int cmd_screen(const std::string& config_path, const std::string& input_path,
               const std::string& out_prefix) {
    cnsp::RunConfig config = load_config_or_default(config_path);
    config.validate();

    std::ifstream in(input_path, std::ios::binary);
    if (!in) throw cnsp::IoError("cannot read " + input_path);
    cnsp::DecisionTable table = cnsp::read_decision_csv(in);

    cnsp::AttributeWeights weights = cnsp::attribute_weights(
        table.system, table.target, config.alpha, config.beta, config.dependence_mode);
    cnsp::ScreenResult result = cnsp::screen(table.system, weights, config.theta);

    const std::filesystem::path weights_path = out_prefix + ".weights.csv";
    std::ofstream weights_out = open_output(weights_path);
    cnsp::write_weights_csv(weights_out, weights);
    finish_output(weights_out, weights_path);

    const std::filesystem::path selected_path = out_prefix + ".selected.csv";
    std::ofstream selected_out = open_output(selected_path);
    selected_out << "object,score\n";
    for (std::size_t idx : result.selected)
        selected_out << table.system.objects[idx] << ',' << cnsp::format_double(result.scores[idx])
                     << '\n';
    finish_output(selected_out, selected_path);
    return 0;
}

int cmd_stats(const std::string& input_path, const std::string& test_name) {
    std::ifstream in(input_path, std::ios::binary);
    if (!in) throw cnsp::IoError("cannot read " + input_path);
    cnsp::GroupSamples samples = cnsp::read_groups_csv(in);

    if (test_name == "ttest") {
        if (samples.groups.size() != 2)
            throw cnsp::ArgumentError("ttest needs exactly 2 groups, got " +
                                      std::to_string(samples.groups.size()));
        cnsp::TestResult result = cnsp::t_test(samples.groups[0].values, samples.groups[1].values);
        std::cout << "ttest,t=" << cnsp::format_double(result.statistic)
                  << ",df=" << cnsp::format_double(result.df1)
                  << ",p=" << cnsp::format_double(result.p_value) << '\n';
    } else {
        cnsp::TestResult result = cnsp::anova_oneway(samples);
        std::cout << "anova,F=" << cnsp::format_double(result.statistic)
                  << ",df1=" << cnsp::format_double(result.df1)
                  << ",df2=" << cnsp::format_double(result.df2)
                  << ",p=" << cnsp::format_double(result.p_value) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CNSP sensor-stream analytics: synthesis, pain-detection pipeline, "
                 "rough-set screening, group statistics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string input_path;
    std::string output_prefix;
    std::string truth_path;
    std::string test_name;
    std::uint64_t seed_value = 0;

    CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic frame stream and its ground truth");
    simulate->add_option("--config", config_path, "Run configuration file (key = value)");
    simulate->add_option("--output", output_prefix, "Output prefix (<prefix>.stream.txt, <prefix>.truth.csv)")
        ->required();
    CLI::Option* seed_opt = simulate->add_option("--seed", seed_value, "Override the configured seed");

    CLI::App* run = app.add_subcommand("run", "Run the full pipeline over a frame stream file");
    run->add_option("--config", config_path, "Run configuration file (key = value)");
    run->add_option("--input", input_path, "Frame stream file, one frame per line")->required();
    run->add_option("--output", output_prefix,
                    "Output prefix (<prefix>.report.jsonl, <prefix>.weights.csv, <prefix>.commands.txt)")
        ->required();
    run->add_option("--truth", truth_path, "Ground-truth CSV window_id,label (optional)");

    CLI::App* screen = app.add_subcommand("screen", "Weight and screen a decision-table CSV");
    screen->add_option("--config", config_path, "Run configuration file (key = value)");
    screen->add_option("--input", input_path, "Decision-table CSV object,<attrs>,label")->required();
    screen->add_option("--output", output_prefix, "Output prefix (<prefix>.weights.csv, <prefix>.selected.csv)")
        ->required();

    CLI::App* stats = app.add_subcommand("stats", "Compare sample groups from a group,value CSV");
    stats->add_option("--input", input_path, "Groups CSV group,value")->required();
    stats->add_option("--test", test_name, "Test to run")
        ->required()
        ->check(CLI::IsMember({"ttest", "anova"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*simulate) {
            std::optional<std::uint64_t> seed;
            if (seed_opt->count() > 0) seed = seed_value;
            return cmd_simulate(config_path, output_prefix, seed);
        }
        if (*run) return cmd_run(config_path, input_path, output_prefix, truth_path);
        if (*screen) return cmd_screen(config_path, input_path, output_prefix);
        if (*stats) return cmd_stats(input_path, test_name);
    } catch (const cnsp::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const cnsp::DegenerateDataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const cnsp::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cnsp::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
