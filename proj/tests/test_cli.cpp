#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "setreg/problem_io.hpp"

namespace fs = std::filesystem;

namespace {

std::string dataPath(const std::string& name) { return std::string(SETREG_DATA_DIR) + "/" + name; }

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult runCli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "setreg_cli_test_out.txt";
    const std::string cmd =
        std::string(SETREG_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.output = buf.str();
    return r;
}

double fieldValue(const std::string& report, const std::string& key) {
    const auto pos = report.find(key + ": ");
    REQUIRE(pos != std::string::npos);
    return std::stod(report.substr(pos + key.size() + 2));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("constants on the golden cases") {
    const auto r1 = runCli("constants " + dataPath("case1.json"));
    CHECK(r1.exit_code == 0);
    CHECK(std::abs(fieldValue(r1.output, "c_hat")) <= 1e-9);
    CHECK(std::abs(fieldValue(r1.output, "nu_hat") - 0.70710678118654752) <= 1e-9);
    CHECK(r1.output.find("UniformlyRegular") != std::string::npos);

    const auto r2 = runCli("constants " + dataPath("case2.json"));
    CHECK(r2.exit_code == 0);
    CHECK(std::abs(fieldValue(r2.output, "c_hat") + 0.70710678118654752) <= 1e-9);
}

TEST_CASE("solve emits a rate summary and a well-formed CSV") {
    const fs::path csv = fs::temp_directory_path() / "setreg_cli_trace.csv";
    const auto r = runCli("--output " + csv.string() + " solve " + dataPath("two_lines_45.json") +
                          " --method alternating");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(fieldValue(r.output, "per_cycle_rate") - 0.5) <= 0.02);

    std::ifstream in(csv);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "k,displacement,distance_to_limit");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        // 17 significant digits means full-precision decimal fields.
        CHECK(std::count(line.begin(), line.end(), ',') == 2);
    }
    CHECK(rows >= 10);
}

TEST_CASE("method arity and start-index validation") {
    const auto arity = runCli("solve " + dataPath("three_halfspaces.json") +
                              " --method alternating");
    CHECK(arity.exit_code == 1);
    const auto badIdx = runCli("solve " + dataPath("case1.json") +
                               " --method cyclic --start-index 9");
    CHECK(badIdx.exit_code == 1);
}

TEST_CASE("verify passes on golden files and fails cleanly on bad input") {
    for (const char* name :
         {"case1.json", "case2.json", "opposite.json", "equality_case.json"}) {
        const auto r = runCli("verify " + dataPath(std::string(name)));
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("ALL CHECKS PASSED") != std::string::npos);
        CHECK(r.output.find("FAIL") == std::string::npos);
    }

    const fs::path bad = fs::temp_directory_path() / "setreg_bad_problem.json";
    std::ofstream(bad) << R"({"schema": 1, "dimension": 2,
        "sets": [{"type": "half-space", "normal": [0,1], "offset": -1}],
        "reference_point": [0,0]})";
    const auto r = runCli("verify " + bad.string());
    CHECK(r.exit_code == 1);
}

TEST_CASE("solver non-convergence maps to exit code 3") {
    const setreg::ProblemFile pf = setreg::load_problem(dataPath("two_lines_30.json"));
    setreg::ProblemFile slow = pf;
    slow.max_iterations = 5;
    const fs::path path = fs::temp_directory_path() / "setreg_slow_problem.json";
    setreg::save_problem(slow, path.string());
    const auto r = runCli("solve " + path.string() + " --method alternating");
    CHECK(r.exit_code == 3);
}

}  // TEST_SUITE
