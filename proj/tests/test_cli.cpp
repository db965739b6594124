#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

namespace {

std::string cli() {
    const char* p = std::getenv("CRSEIG_CLI");
    REQUIRE_MESSAGE(p != nullptr, "CRSEIG_CLI must point at the bench binary");
    return p;
}

int run_cmd(const std::string& args) {
    std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

struct TempDir {
    std::string path;
    explicit TempDir(const std::string& name) : path("/tmp/crseig_cli_" + name) {
        std::system(("rm -rf " + path).c_str());
    }
    ~TempDir() { std::system(("rm -rf " + path).c_str()); }
};

}  // namespace

TEST_CASE("run converges and writes the summary and history") {
    TempDir dir("run");
    int ec = run_cmd("run --problem lap1d:100 --solver crs --nev 3 --m 15 --dim-max 30 --out " +
                     dir.path);
    CHECK(ec == 0);
    std::vector<std::string> summary = read_lines(dir.path + "/summary.csv");
    REQUIRE(summary.size() == 2);
    CHECK(summary[0] == "solver,problem,nev,it,mv,time_s,converged");
    CHECK(summary[1].substr(0, 14) == "crs,lap1d:100,");
    CHECK(summary[1].back() == '1');
    std::vector<std::string> history = read_lines(dir.path + "/history_crs.csv");
    REQUIRE(history.size() >= 2);
    CHECK(history[0] == "eigenpair_index,outer_iter,rel_residual");
}

TEST_CASE("run without an output directory writes no files") {
    TempDir dir("noout");
    std::system(("mkdir -p " + dir.path).c_str());
    std::string cmd = "cd " + dir.path + " && " + cli() +
                      " run --problem lap1d:50 --solver cd --nev 2 --m 10 --dim-max 20 "
                      ">/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    std::ifstream leaked(dir.path + "/summary.csv");
    CHECK_FALSE(leaked.good());
}

TEST_CASE("invalid problems and flags exit with a usage error") {
    CHECK(run_cmd("run --problem lap1d:0 --solver cd") == 1);
    CHECK(run_cmd("run --problem cube:3 --solver cd") == 1);
    CHECK(run_cmd("run --problem lap1d:20 --solver qr") == 1);
    CHECK(run_cmd("run --problem lap1d:20 --solver cd --frobnicate") == 1);
    CHECK(run_cmd("run --solver cd") == 1);
    CHECK(run_cmd("run --problem lap1d:20 --solver cd --nev 0") == 1);
    CHECK(run_cmd("") == 1);
}

TEST_CASE("compare runs each requested solver and verifies agreement") {
    TempDir dir("cmp");
    int ec = run_cmd(
        "compare --problem lap1d:60 --solver cd --solver crs --solver oracle "
        "--nev 2 --m 10 --dim-max 20 --out " +
        dir.path);
    CHECK(ec == 0);
    std::vector<std::string> summary = read_lines(dir.path + "/summary.csv");
    REQUIRE(summary.size() == 4);
    CHECK(summary[1].substr(0, 3) == "cd,");
    CHECK(summary[2].substr(0, 4) == "crs,");
    CHECK(summary[3].substr(0, 7) == "oracle,");
    // Per-solver history files accompany the summary.
    CHECK(read_lines(dir.path + "/history_cd.csv").size() >= 2);
    CHECK(read_lines(dir.path + "/history_crs.csv").size() >= 2);
}

TEST_CASE("compare requires at least two solvers") {
    CHECK(run_cmd("compare --problem lap1d:30 --solver cd") == 1);
}

TEST_CASE("sweep-inner writes one row per cap") {
    TempDir dir("sweep");
    int ec = run_cmd(
        "sweep-inner --problem lap1d:60 --inner-iters 3,8 --nev 2 --m 10 --dim-max 20 --out " +
        dir.path);
    CHECK(ec == 0);
    std::vector<std::string> rows = read_lines(dir.path + "/sweep.csv");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "inner_iters,it,mv,time_s");
    CHECK(rows[1].substr(0, 2) == "3,");
    CHECK(rows[2].substr(0, 2) == "8,");
}

TEST_CASE("an unconverged run exits with the partial-convergence code") {
    TempDir dir("partial");
    int ec = run_cmd("run --problem lap1d:200 --solver cd --nev 3 --m 10 --dim-max 20 --it-max 2 --out " +
                     dir.path);
    CHECK(ec == 2);
    std::vector<std::string> summary = read_lines(dir.path + "/summary.csv");
    REQUIRE(summary.size() == 2);
    CHECK(summary[1].back() == '0');
}
