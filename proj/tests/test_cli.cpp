// End-to-end checks of the command-line binary (path injected by CMake).

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pucc/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = PUCC_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "pucc_cli_out.txt";
    const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "pucc_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen-contest emits the expected instance file") {
    TempDir tmp;
    REQUIRE(run("gen-contest 5 --out " + tmp.file("c5.txt")).exit_code == 0);
    REQUIRE(slurp(tmp.file("c5.txt")) == "# contest-5\n5\n1\n2\n3\n4\n5\n");
    REQUIRE(run("gen-contest 1").exit_code == 2);
}

TEST_CASE("solve writes a verifiable solution and prints the radius") {
    TempDir tmp;
    REQUIRE(run("gen-contest 5 --out " + tmp.file("c5.txt")).exit_code == 0);
    const RunResult r = run("solve " + tmp.file("c5.txt") + " --time-limit 20 --seed 1 --target " +
                            "9.0014877 --out " + tmp.file("c5.sol") + " --history " +
                            tmp.file("c5.history.csv"));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("best R") != std::string::npos);

    REQUIRE(run("verify " + tmp.file("c5.txt") + " " + tmp.file("c5.sol")).exit_code == 0);

    const std::string history = slurp(tmp.file("c5.history.csv"));
    REQUIRE(history.rfind("radius,outcome,elapsed_s\n", 0) == 0);
    REQUIRE(history.find("accepted") != std::string::npos);
}

TEST_CASE("solve on a missing file exits with 2") {
    const RunResult r = run("solve /nonexistent/instance.txt");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.output.find("error") != std::string::npos);
}

TEST_CASE("two identical solve runs produce byte-identical files") {
    TempDir tmp;
    REQUIRE(run("gen-contest 5 --out " + tmp.file("c5.txt")).exit_code == 0);
    const std::string base = "solve " + tmp.file("c5.txt") + " --time-limit 3 --seed 42 ";
    REQUIRE(run(base + "--out " + tmp.file("a.sol") + " --history " + tmp.file("a.h.csv") +
                " --trace " + tmp.file("a.t.csv"))
                .exit_code == 0);
    REQUIRE(run(base + "--out " + tmp.file("b.sol") + " --history " + tmp.file("b.h.csv") +
                " --trace " + tmp.file("b.t.csv"))
                .exit_code == 0);
    REQUIRE(slurp(tmp.file("a.sol")) == slurp(tmp.file("b.sol")));
    REQUIRE(slurp(tmp.file("a.h.csv")) == slurp(tmp.file("b.h.csv")));
    REQUIRE(slurp(tmp.file("a.t.csv")) == slurp(tmp.file("b.t.csv")));
    REQUIRE(!slurp(tmp.file("a.t.csv")).empty());
}

TEST_CASE("verify rejects a tampered solution with exit 1") {
    TempDir tmp;
    std::ofstream(tmp.file("two.txt")) << "2\n1\n2\n";
    std::ofstream(tmp.file("good.sol")) << "3\n-2 0\n1 0\n";
    std::ofstream(tmp.file("bad.sol")) << "3\n-1.9999 0\n1 0\n";
    REQUIRE(run("verify " + tmp.file("two.txt") + " " + tmp.file("good.sol")).exit_code == 0);
    const RunResult r = run("verify " + tmp.file("two.txt") + " " + tmp.file("bad.sol"));
    REQUIRE(r.exit_code == 1);
    REQUIRE(r.output.find("INFEASIBLE") != std::string::npos);
}

TEST_CASE("decide strategies and exit codes") {
    TempDir tmp;
    REQUIRE(run("gen-contest 5 --out " + tmp.file("c5.txt")).exit_code == 0);

    // feasible radius, iterated tabu search
    REQUIRE(run("decide " + tmp.file("c5.txt") +
                " --radius 9.00139775 --time-limit 30 --seed 1 --out " + tmp.file("c5.sol"))
                .exit_code == 0);
    REQUIRE(run("verify " + tmp.file("c5.txt") + " " + tmp.file("c5.sol")).exit_code == 0);

    // loose radius: even the baselines find it
    REQUIRE(run("decide " + tmp.file("c5.txt") +
                " --radius 12 --time-limit 10 --seed 1 --strategy mts")
                .exit_code == 0);
    REQUIRE(run("decide " + tmp.file("c5.txt") +
                " --radius 12 --time-limit 10 --seed 1 --strategy sd")
                .exit_code == 0);

    // container smaller than the largest disk
    REQUIRE(run("decide " + tmp.file("c5.txt") + " --radius 1 --time-limit 1").exit_code == 2);

    // genuinely infeasible but valid radius: exit 1 after the budget
    REQUIRE(run("decide " + tmp.file("c5.txt") + " --radius 8 --time-limit 1 --seed 1")
                .exit_code == 1);
}

TEST_CASE("render emits an SVG with one circle per disk plus the container") {
    TempDir tmp;
    std::ofstream(tmp.file("two.txt")) << "2\n1\n2\n";
    std::ofstream(tmp.file("two.sol")) << "3\n-2 0\n1 0\n";
    REQUIRE(run("render " + tmp.file("two.txt") + " " + tmp.file("two.sol") + " --out " +
                tmp.file("two.svg"))
                .exit_code == 0);
    const std::string svg = slurp(tmp.file("two.svg"));
    std::size_t circles = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
        ++circles;
        pos += 7;
    }
    REQUIRE(circles == 3);
}

TEST_CASE("bench sweeps instances x seeds into a results CSV") {
    TempDir tmp;
    fs::create_directories(tmp.file("set"));
    REQUIRE(run("gen-contest 5 --out " + tmp.file("set/contest-5.txt")).exit_code == 0);
    std::ofstream(tmp.file("set/two.txt")) << "2\n1\n2\n";
    std::ofstream(tmp.file("targets.txt")) << "contest-5 9.00139774\ntwo 3.0\n";

    const RunResult r = run("bench " + tmp.file("set") +
                            " --time-limit 20 --seed 1 --repeats 2 --jobs 2 --targets " +
                            tmp.file("targets.txt") + " --stop-at-target --out " +
                            tmp.file("results.csv"));
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp(tmp.file("results.csv"));
    REQUIRE(csv.rfind("instance,seed,strategy,best_R,time_to_best_s,feasible,hit\n", 0) == 0);
    std::size_t lines = 0, pos = 0;
    while ((pos = csv.find('\n', pos)) != std::string::npos) {
        ++lines;
        ++pos;
    }
    REQUIRE(lines == 5);  // header + 2 instances x 2 seeds
    REQUIRE(csv.find("contest-5,1,its,") != std::string::npos);
    REQUIRE(csv.find("two,2,its,") != std::string::npos);
    REQUIRE(csv.find(",1,1\n") != std::string::npos);  // feasible + hit columns

    // empty directory
    fs::create_directories(tmp.file("empty"));
    REQUIRE(run("bench " + tmp.file("empty")).exit_code == 2);
}
