// Copyright 2026 The Uncollapse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "test_support.h"
#include "uncollapse/cli.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace uncollapse;
using namespace uncollapse::cli;
using namespace uncollapse::testing;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Table = std::vector<std::vector<std::string>>;

Table parse_csv(const std::string &text) {
    Table rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

double num(const std::string &s) { return std::stod(s); }

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("uncollapse_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path &p, const std::string &text) { std::ofstream(p, std::ios::binary) << text; }

int run_cli(const std::string &args) {
    std::string cmd = std::string("\"") + UNCOLLAPSE_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

SweepSpec ideal_spec() {
    SweepSpec spec;
    spec.experiment.decoherence_enabled = false;
    return spec;
}

}  // namespace

TEST_CASE("config defaults and overrides") {
    auto spec = parse_config(json::object());
    CHECK(spec.p_grid.size() == 20);
    CHECK(spec.p_grid.back() == doctest::Approx(0.95));
    CHECK(spec.experiment.device.t1 == 450.0);
    CHECK(spec.mode == Mode::Exact);

    auto j = json::parse(R"({
        "initial": {"theta0_rad": 1.0, "phi0_rad": 0.5},
        "p_grid": [0.0, 0.5],
        "device": {"t1_ns": 500, "t2_echo_ns": 300, "visibility": 0.9},
        "timing": {"idle_ns": 0},
        "dephasing": "ramsey",
        "strength_bias": {"mode": "additive", "value": 0.01},
        "mode": "mc", "shots": 10, "seed": 7, "chi_p": [0.2]
    })");
    spec = parse_config(j);
    CHECK(spec.experiment.initial.theta0 == 1.0);
    CHECK(spec.experiment.device.t2_echo == 300.0);
    CHECK(spec.experiment.device.visibility == 0.9);
    CHECK(spec.experiment.timing.idle_ns == 0.0);
    CHECK(spec.experiment.dephasing == DephasingTime::Ramsey);
    CHECK(spec.experiment.strength_bias == StrengthBias::Additive);
    CHECK(spec.mode == Mode::MonteCarlo);
    CHECK(spec.shots == 10);

    Overrides o;
    o.mode = Mode::Exact;
    o.seed = 99;
    o.pi_fraction = 0.9;
    o.no_decoherence = true;
    apply_overrides(spec, o);
    CHECK(spec.mode == Mode::Exact);
    CHECK(spec.seed == 99);
    CHECK(spec.experiment.pi_fraction == 0.9);
    CHECK_FALSE(spec.experiment.decoherence_enabled);
}

TEST_CASE("bad configs raise ConfigError") {
    CHECK_THROWS_AS(parse_config(json::parse(R"({"t1": 450})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"device": {"t1": 450}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"mode": "fast"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"p_grid": "all"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"shots": 0})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse("[1, 2]")), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("collapse csv") {
    auto spec = ideal_spec();
    auto table = parse_csv(collapse_csv(spec));
    REQUIRE(table.size() == 21);
    CHECK(table[0] == std::vector<std::string>{"p", "P_X", "P_Y", "P_Z", "P_B", "X", "Y", "Z", "theta"});
    // p = 0: the equatorial input itself.
    CHECK(num(table[1][5]) == doctest::Approx(1.0));
    CHECK(num(table[1][8]) == doctest::Approx(kPi / 2));
    for (std::size_t r = 1; r < table.size(); ++r) {
        double p = num(table[r][0]);
        CHECK(std::abs(num(table[r][4]) - p / 2) < 1e-11);
        CHECK(std::abs(num(table[r][8]) - theory_polar_angle(SequenceKind::Collapse, kPi / 2, p)) < 1e-10);
    }
}

TEST_CASE("uncollapse csv without decoherence") {
    auto spec = ideal_spec();
    auto table = parse_csv(uncollapse_csv(spec));
    REQUIRE(table.size() == 21);
    CHECK(table[0].back() == "p_success");
    for (std::size_t r = 1; r < table.size(); ++r) {
        double p = num(table[r][0]);
        CHECK(std::abs(num(table[r][5]) - num(table[1][5])) < 1e-10);
        CHECK(std::abs(num(table[r][6]) - num(table[1][6])) < 1e-10);
        CHECK(std::abs(num(table[r][7]) - num(table[1][7])) < 1e-10);
        CHECK(std::abs(num(table[r][9]) - (1 - p)) < 1e-11);
    }

    spec.experiment.pi_fraction = 0.9;
    auto wrong = parse_csv(uncollapse_csv(spec));
    double spread = 0;
    for (std::size_t r = 1; r < wrong.size(); ++r) spread = std::max(spread, std::abs(num(wrong[r][7]) - num(wrong[1][7])));
    CHECK(spread > 1e-3);
}

TEST_CASE("qpt outputs") {
    auto spec = ideal_spec();
    spec.p_grid = {0.0, 0.47, 0.9};
    auto out = qpt_outputs(spec);
    auto table = parse_csv(out.csv);
    REQUIRE(table.size() == 4);
    CHECK(table[0] == std::vector<std::string>{"p", "fidelity", "min_eigenvalue"});
    for (std::size_t r = 1; r < table.size(); ++r) CHECK(std::abs(num(table[r][1]) - 1) < 1e-10);

    REQUIRE(out.chi_files.size() == 1);
    CHECK(out.chi_files[0].first == "_chi_p0.47.json");
    auto doc = json::parse(out.chi_files[0].second);
    CHECK(doc["basis"] == json({"I", "X", "Y", "Z"}));
    CHECK(doc["real"][1][1].get<double>() == doctest::Approx(1.0));
    CHECK(doc["imag"].size() == 4);
    CHECK(doc["p"].get<double>() == 0.47);
}

TEST_CASE("monte carlo csv is reproducible") {
    auto spec = parse_config(json::parse(R"({"mode": "mc", "shots": 2000, "seed": 5, "p_grid": [0.1, 0.6]})"));
    CHECK(uncollapse_csv(spec) == uncollapse_csv(spec));
    auto again = spec;
    again.workers = 1;
    CHECK(collapse_csv(spec) == collapse_csv(again));
}

TEST_CASE("command-line binary") {
    TempDir dir;
    auto out = dir.path / "un.csv";
    REQUIRE(run_cli("uncollapse --out \"" + out.string() + "\"") == kExitOk);
    auto text = slurp(out);
    CHECK(text.rfind("p,P_X,P_Y,P_Z,P_B,X,Y,Z,theta,p_success\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.back() == '\n');

    auto cfg = dir.path / "cfg.json";
    write_file(cfg, R"({"p_grid": [0.2, 0.4], "chi_p": [0.4]})");
    auto q = dir.path / "q.csv";
    CHECK(run_cli("qpt --config \"" + cfg.string() + "\" --out \"" + q.string() + "\" --no-decoherence") == kExitOk);
    CHECK(fs::exists(dir.path / "q_chi_p0.4.json"));

    auto mc = dir.path / "mc.csv";
    CHECK(run_cli("collapse --mode mc --shots 500 --seed 3 --config \"" + cfg.string() + "\" --out \"" +
                  mc.string() + "\"") == kExitOk);
    auto first = slurp(mc);
    CHECK(run_cli("collapse --mode mc --shots 500 --seed 3 --config \"" + cfg.string() + "\" --out \"" +
                  mc.string() + "\"") == kExitOk);
    CHECK(slurp(mc) == first);

    auto bad = dir.path / "bad.json";
    write_file(bad, R"({"p_grid": [0.5, 0.2]})");
    CHECK(run_cli("collapse --config \"" + bad.string() + "\" --out \"" + out.string() + "\"") == kExitBadConfig);
    write_file(bad, R"({"bogus": 1})");
    CHECK(run_cli("collapse --config \"" + bad.string() + "\" --out \"" + out.string() + "\"") == kExitBadConfig);
    write_file(bad, "{not json");
    CHECK(run_cli("collapse --config \"" + bad.string() + "\" --out \"" + out.string() + "\"") == kExitBadConfig);
    CHECK(run_cli("collapse --mode fast --out \"" + out.string() + "\"") == kExitBadConfig);
    CHECK(run_cli("collapse") == kExitBadConfig);

    // |1> at p -> 1: every shot lands in the background.
    write_file(bad, R"({"initial": {"theta0_rad": 3.141592653589793, "phi0_rad": 0}, "p_grid": [0.0, 0.999999999999999]})");
    CHECK(run_cli("collapse --no-decoherence --config \"" + bad.string() + "\" --out \"" + out.string() + "\"") ==
          kExitNumeric);
}
