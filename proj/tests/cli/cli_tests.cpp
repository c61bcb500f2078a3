#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const fs::path kScratch = fs::path("cli_scratch");

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

CliResult run_cli(const std::string& args) {
    const fs::path out_path = kScratch / "stdout.txt";
    const fs::path err_path = kScratch / "stderr.txt";
    const std::string command = std::string("\"") + CNSP_CLI_PATH + "\" " + args + " > " +
                                out_path.string() + " 2> " + err_path.string();
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

struct ScratchDir {
    ScratchDir() {
        fs::remove_all(kScratch);
        fs::create_directories(kScratch);
    }
} const scratch_dir;

std::string p(const char* name) { return (kScratch / name).string(); }

} // namespace

TEST_CASE("simulate writes a stream and truth file and is reproducible") {
    write_file(kScratch / "sim.conf", "seed = 11\nduration_ms = 4000\nepisodes = 1000:2000:400\n");

    const CliResult first =
        run_cli("simulate --config " + p("sim.conf") + " --output " + p("a"));
    REQUIRE(first.exit_code == 0);
    const std::string stream = read_file(kScratch / "a.stream.txt");
    const std::string truth = read_file(kScratch / "a.truth.csv");
    CHECK(!stream.empty());
    CHECK(truth.rfind("window_id,label\n", 0) == 0);

    const CliResult second =
        run_cli("simulate --config " + p("sim.conf") + " --output " + p("b"));
    REQUIRE(second.exit_code == 0);
    CHECK(read_file(kScratch / "b.stream.txt") == stream);
    CHECK(read_file(kScratch / "b.truth.csv") == truth);

    // The --seed flag overrides the configured seed.
    const CliResult reseeded =
        run_cli("simulate --config " + p("sim.conf") + " --seed 12 --output " + p("c"));
    REQUIRE(reseeded.exit_code == 0);
    CHECK(read_file(kScratch / "c.stream.txt") != stream);
}

TEST_CASE("simulate rejects an invalid config with exit 2") {
    write_file(kScratch / "bad.conf", "episodes = 0:500:100;400:800:100\n");
    const CliResult result =
        run_cli("simulate --config " + p("bad.conf") + " --output " + p("bad"));
    CHECK(result.exit_code == 2);
    CHECK(!result.err.empty());

    write_file(kScratch / "junk.conf", "bogus = 1\n");
    CHECK(run_cli("simulate --config " + p("junk.conf") + " --output " + p("bad")).exit_code == 2);
}

TEST_CASE("run over an empty input exits 0 with an empty report") {
    write_file(kScratch / "empty.txt", "");
    const CliResult result =
        run_cli("run --input " + p("empty.txt") + " --output " + p("empty"));
    REQUIRE(result.exit_code == 0);
    const std::string report = read_file(kScratch / "empty.report.jsonl");
    CHECK(report.find("\"type\":\"summary\"") != std::string::npos);
    CHECK(report.find("\"windows\":0") != std::string::npos);
    CHECK(read_file(kScratch / "empty.commands.txt").empty());
}

TEST_CASE("run propagates I/O and config failures as exit codes") {
    CHECK(run_cli("run --input " + p("missing.txt") + " --output " + p("x")).exit_code == 1);

    write_file(kScratch / "some.txt", "EMG,1,0,5\n");
    write_file(kScratch / "badrun.conf", "theta = 3\n");
    CHECK(run_cli("run --config " + p("badrun.conf") + " --input " + p("some.txt") +
                  " --output " + p("x"))
              .exit_code == 2);
}

TEST_CASE("run counts malformed lines instead of failing") {
    std::string stream;
    for (int i = 0; i < 96; ++i)
        stream += "EMG," + std::to_string(i + 1) + ',' + std::to_string(i * 10) + ",250\n";
    stream += "not a frame\n###\nEMG,bad,0,1\n";
    write_file(kScratch / "noisy.txt", stream);

    const CliResult result =
        run_cli("run --input " + p("noisy.txt") + " --output " + p("noisy"));
    REQUIRE(result.exit_code == 0);
    const std::string report = read_file(kScratch / "noisy.report.jsonl");
    CHECK(report.find("\"frames_malformed\":3") != std::string::npos);
    CHECK(report.find("\"windows\":3") != std::string::npos);
}

TEST_CASE("simulate then run closes the loop with ground truth") {
    write_file(kScratch / "e2e.conf",
               "seed = 7\nduration_ms = 20000\nepisodes = 3000:6000:500;12000:16000:800\n");
    REQUIRE(run_cli("simulate --config " + p("e2e.conf") + " --output " + p("sess")).exit_code == 0);

    const CliResult run1 = run_cli("run --config " + p("e2e.conf") + " --input " +
                                   p("sess.stream.txt") + " --output " + p("rep1") + " --truth " +
                                   p("sess.truth.csv"));
    REQUIRE(run1.exit_code == 0);
    const std::string report = read_file(kScratch / "rep1.report.jsonl");
    CHECK(report.find("\"recall\":") != std::string::npos);
    CHECK(report.find("\"precision\":") != std::string::npos);
    CHECK(!read_file(kScratch / "rep1.commands.txt").empty());
    CHECK(read_file(kScratch / "rep1.weights.csv").rfind("attribute,rho,gamma,omega,omega_norm\n", 0) ==
          0);

    const CliResult run2 = run_cli("run --config " + p("e2e.conf") + " --input " +
                                   p("sess.stream.txt") + " --output " + p("rep2") + " --truth " +
                                   p("sess.truth.csv"));
    REQUIRE(run2.exit_code == 0);
    CHECK(read_file(kScratch / "rep2.report.jsonl") == report);
    CHECK(read_file(kScratch / "rep2.weights.csv") == read_file(kScratch / "rep1.weights.csv"));
    CHECK(read_file(kScratch / "rep2.commands.txt") == read_file(kScratch / "rep1.commands.txt"));
}

TEST_CASE("stats runs both tests with the documented exit codes") {
    write_file(kScratch / "two.csv", "group,value\na,1\na,2\na,3\na,4\nb,2\nb,3\nb,4\nb,5\n");
    const CliResult ttest = run_cli("stats --input " + p("two.csv") + " --test ttest");
    REQUIRE(ttest.exit_code == 0);
    CHECK(ttest.out.rfind("ttest,t=-1.09", 0) == 0);
    CHECK(ttest.out.find("df=6") != std::string::npos);
    CHECK(ttest.out.find("p=0.315") != std::string::npos);

    write_file(kScratch / "three.csv",
               "group,value\na,1\na,2\na,3\na,4\nb,2\nb,3\nb,4\nb,5\nc,3\nc,4\nc,5\nc,6\n");
    const CliResult anova = run_cli("stats --input " + p("three.csv") + " --test anova");
    REQUIRE(anova.exit_code == 0);
    CHECK(anova.out.rfind("anova,F=2.4,df1=2,df2=9,p=0.146", 0) == 0);

    write_file(kScratch / "one.csv", "group,value\na,1\na,2\n");
    CHECK(run_cli("stats --input " + p("one.csv") + " --test anova").exit_code == 2);

    write_file(kScratch / "same.csv", "group,value\na,1\na,2\na,3\nb,1\nb,2\nb,3\n");
    const CliResult same = run_cli("stats --input " + p("same.csv") + " --test ttest");
    REQUIRE(same.exit_code == 0);
    CHECK(same.out.find("t=0,") != std::string::npos);
    CHECK(same.out.find("p=1") != std::string::npos);

    write_file(kScratch / "flat.csv", "group,value\na,5\na,5\nb,7\nb,7\n");
    CHECK(run_cli("stats --input " + p("flat.csv") + " --test ttest").exit_code == 3);

    CHECK(run_cli("stats --input " + p("two.csv") + " --test chi2").exit_code == 2);
    CHECK(run_cli("stats --input " + p("nothere.csv") + " --test ttest").exit_code == 1);
}

TEST_CASE("screen weights a decision table and writes the selected set") {
    write_file(kScratch / "table.csv", "object,a,b,label\nx0,0,0,1\nx1,0,1,0\nx2,1,0,0\nx3,1,1,0\n");
    const CliResult result =
        run_cli("screen --input " + p("table.csv") + " --output " + p("scr"));
    REQUIRE(result.exit_code == 0);
    CHECK(read_file(kScratch / "scr.weights.csv") ==
          "attribute,rho,gamma,omega,omega_norm\na,0,0.25,0.125,0.5\nb,0,0.25,0.125,0.5\n");
    CHECK(read_file(kScratch / "scr.selected.csv") == "object,score\nx1,0.5\nx2,0.5\nx3,1\n");
}

TEST_CASE("argument errors surface as exit 2 and help as exit 0") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("run --output only").exit_code == 2); // missing required --input
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("simulate --help").exit_code == 0);
}
