// Copyright 2026 The fsqd Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "fsqd/cli.hpp"
#include "fsqd/errors.hpp"
#include "fsqd/io.hpp"

using namespace fsqd;
using namespace fsqd::cli;
using Catch::Matchers::ContainsSubstring;

namespace {

const std::filesystem::path kData = FSQD_TEST_DATA;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "fsqd");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Fresh scratch directory, removed on scope exit.
struct Scratch {
    Scratch() {
        static int counter = 0;
        dir = std::filesystem::temp_directory_path() /
              ("fsqd_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(dir);
    }
    ~Scratch() { std::filesystem::remove_all(dir); }
    std::filesystem::path operator/(const std::string &name) const { return dir / name; }
    std::filesystem::path dir;
};

double summary_value(const std::string &summary, const std::string &label) {
    const auto pos = summary.find(label);
    REQUIRE(pos != std::string::npos);
    return std::stod(summary.substr(pos + label.size()));
}

io::RunConfig config_into(const std::string &name, const Scratch &scratch, const std::string &out) {
    auto cfg = io::load_run_config(kData / name);
    cfg.output.path = scratch / out;
    return cfg;
}

} // namespace

TEST_CASE("evolve on an eigenstate", "[cli]") {
    Scratch scratch;
    const auto outcome = cmd_evolve(config_into("eigenstate.config.json", scratch, "e.report.csv"));
    CHECK(outcome.exit_code == kExitOk);
    CHECK(summary_value(outcome.summary, "v_d = delta_H/hbar = ") == 0.0);
    CHECK_THAT(outcome.summary, ContainsSubstring("horizon pi*hbar/(2 delta_H) = inf"));
    REQUIRE(outcome.artifacts.size() == 2);
    CHECK(std::filesystem::exists(scratch / "e.report.csv"));
    CHECK(std::filesystem::exists(scratch / "e.trajectory.csv"));

    const auto csv = io::read_file(scratch / "e.report.csv");
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == io::kReportCsvHeader);
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        const auto first = line.find(',');
        CHECK(line.substr(first + 1, 2) == "1,");
    }
    CHECK(rows == 65);
}

TEST_CASE("evolve on the geodesic and three-level cases", "[cli]") {
    Scratch scratch;
    const auto geo = cmd_evolve(config_into("geodesic.config.json", scratch, "g.report.csv"));
    CHECK(geo.exit_code == kExitOk);
    CHECK(summary_value(geo.summary, "max in-domain |measured - predicted| = ") <= 1e-6);
    CHECK(summary_value(geo.summary, "delta_H = ") == Catch::Approx(0.5).margin(1e-15));
    CHECK_THAT(geo.summary, ContainsSubstring("Mandelstam-Tamm violations (tol 1e-09): 0"));

    const auto three = cmd_evolve(config_into("three_level.config.json", scratch, "t.report.json"));
    CHECK(three.exit_code == kExitOk);
    CHECK(summary_value(three.summary, "max in-domain |measured - predicted| = ") > 1e-3);
    const auto report = io::parse_report(io::read_file(scratch / "t.report.json"));
    for (std::size_t k = 1; k + 1 < report.size(); ++k) {
        CHECK(*report.predicted_abs[k] < report.amplitude_abs[k]);
    }
    CHECK(std::filesystem::exists(scratch / "t.trajectory.json"));
}

TEST_CASE("evolve on time-dependent schedules", "[cli]") {
    Scratch scratch;
    const auto pw = cmd_evolve(config_into("piecewise.config.json", scratch, "p.report.json"));
    CHECK(pw.exit_code == kExitOk);
    CHECK_THAT(pw.summary, ContainsSubstring("midpoint_magnus"));
    CHECK_THAT(pw.summary, ContainsSubstring("Mandelstam-Tamm check skipped"));

    const auto sw = cmd_evolve(config_into("sweep.config.json", scratch, "s.report.csv"));
    CHECK(sw.exit_code == kExitOk);
    CHECK_THAT(sw.summary, ContainsSubstring("schedule=sampled"));
}

TEST_CASE("fs-distance", "[cli]") {
    const auto e1 = (kData / "e1.state.json").string();
    const auto e2 = (kData / "e2.state.json").string();
    const auto plus = (kData / "plus.state.json").string();
    CHECK(cmd_fs_distance(e1, e1).summary == "0.000000000000\n");
    CHECK(cmd_fs_distance(e1, e2).summary == "1.570796326795\n");
    CHECK(cmd_fs_distance(e1, plus).summary == "0.785398163397\n");

    const auto r = invoke({"fs-distance", "--state-a", e1, "--state-b", plus});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "0.785398163397\n");

    const auto three = (kData / "three_level.state.json").string();
    const auto mismatch = invoke({"fs-distance", "--state-a", e1, "--state-b", three});
    CHECK(mismatch.code == kExitUsage);
    CHECK_THAT(mismatch.err, ContainsSubstring("2") && ContainsSubstring("3"));
}

TEST_CASE("mt-campaign", "[cli]") {
    SECTION("eigenstate trial") {
        CampaignOptions o;
        o.dim_lo = o.dim_hi = 2;
        o.trials = 1;
        o.mode = TrialMode::Eigenstate;
        const auto r = run_mt_campaign(o);
        CHECK(r.violations == 0);
        // |A_t| = 1 and the bound is 1 up to rounding at every grid point.
        CHECK(std::abs(r.min_slack) <= 1e-15);
        CHECK(r.max_abs_slack <= 1e-15);
    }
    SECTION("default random campaign") {
        const auto r = run_mt_campaign(CampaignOptions{});
        CHECK(r.violations == 0);
        CHECK(r.min_slack >= -1e-9);
        CHECK(r.min_interior_slack > 0.0);
    }
    SECTION("geodesic trials reach equality") {
        CampaignOptions o;
        o.trials = 100;
        o.mode = TrialMode::Geodesic;
        const auto r = run_mt_campaign(o);
        CHECK(r.violations == 0);
        CHECK(r.max_abs_slack <= 1e-9);
        CHECK(std::abs(r.min_interior_slack) <= 1e-9);
    }
    SECTION("command line") {
        const auto r = invoke({"mt-campaign", "--dims", "2..4", "--trials", "50", "--seed", "9"});
        CHECK(r.code == kExitOk);
        CHECK_THAT(r.out, ContainsSubstring("violations: 0"));
    }
    SECTION("tolerance must be positive") {
        CampaignOptions o;
        o.tol = -0.5;
        CHECK_THROWS_AS(cmd_mt_campaign(o), InputError);
        CHECK(invoke({"mt-campaign", "--tol", "0"}).code == kExitUsage);
    }
}

TEST_CASE("mt-campaign per-trial output is deterministic", "[cli]") {
    Scratch scratch;
    for (const std::string name : {"a.csv", "b.csv"}) {
        const auto r = invoke({"mt-campaign", "--trials", "40", "--seed", "5", "--format", "csv",
                               "--out", (scratch / name).string()});
        REQUIRE(r.code == kExitOk);
    }
    const auto a = io::read_file(scratch / "a.csv");
    CHECK(a == io::read_file(scratch / "b.csv"));
    CHECK(a.substr(0, a.find('\n')) == "trial,dim,delta_h,horizon,violations,min_slack");
    CHECK(std::ranges::count(a, '\n') == 41);

    const auto other = invoke({"mt-campaign", "--trials", "40", "--seed", "6", "--out",
                               (scratch / "c.csv").string()});
    REQUIRE(other.code == kExitOk);
    CHECK(a != io::read_file(scratch / "c.csv"));
}

TEST_CASE("decay-rate", "[cli]") {
    Scratch scratch;
    const auto geo = cmd_decay_rate(config_into("decay.config.json", scratch, "d.csv"));
    CHECK(geo.exit_code == kExitOk);
    CHECK(summary_value(geo.summary, "max |w_empirical - w_closed| = ") <= 1e-6);
    const auto csv = io::read_file(scratch / "d.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "t,w_empirical,w_closed");

    const auto still = cmd_decay_rate(config_into("eigenstate.config.json", scratch, "e.csv"));
    CHECK(summary_value(still.summary, "max |w_empirical - w_closed| = ") == 0.0);

    auto three = config_into("three_level.config.json", scratch, "t.json");
    const auto r3 = cmd_decay_rate(three);
    CHECK(summary_value(r3.summary, "max |w_empirical - w_closed| = ") > 1e-3);
    CHECK(io::read_file(scratch / "t.json").front() == '{');
}

TEST_CASE("evolve command line", "[cli]") {
    Scratch scratch;
    const auto cfg = (kData / "geodesic.config.json").string();
    const auto r = invoke({"evolve", "--config", cfg, "--out", (scratch / "g.report.json").string()});
    CHECK(r.code == kExitOk);
    CHECK(io::read_file(scratch / "g.report.json").front() == '{');
    CHECK(std::filesystem::exists(scratch / "g.trajectory.json"));

    const auto csv = invoke({"evolve", "--config", cfg, "--format", "csv", "--out",
                             (scratch / "g2.report.csv").string()});
    CHECK(csv.code == kExitOk);
    CHECK(io::read_file(scratch / "g2.report.csv").starts_with(io::kReportCsvHeader));
}

TEST_CASE("outputs are byte-identical across runs", "[cli]") {
    Scratch scratch;
    for (const std::string config : {"geodesic.config.json", "three_level.config.json",
                                     "piecewise.config.json", "sweep.config.json"}) {
        const auto a = cmd_evolve(config_into(config, scratch, "a.report.csv"));
        const auto b = cmd_evolve(config_into(config, scratch, "b.report.csv"));
        REQUIRE(a.exit_code == kExitOk);
        REQUIRE(b.exit_code == kExitOk);
        CHECK(io::read_file(scratch / "a.report.csv") == io::read_file(scratch / "b.report.csv"));
        CHECK(io::read_file(scratch / "a.trajectory.csv") ==
              io::read_file(scratch / "b.trajectory.csv"));
    }
}

TEST_CASE("exit codes", "[cli]") {
    const auto e1 = (kData / "e1.state.json").string();
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"--help"}).code == kExitOk);
    CHECK(invoke({"teleport"}).code == kExitUsage);
    CHECK(invoke({"fs-distance", "--state-a", e1}).code == kExitUsage);
    CHECK(invoke({"mt-campaign", "--trials", "many"}).code == kExitUsage);
    CHECK(invoke({"mt-campaign", "--dims", "1..3"}).code == kExitUsage);
    CHECK(invoke({"mt-campaign", "--mode", "sideways"}).code == kExitUsage);
    CHECK(invoke({"--simd", "sse9", "fs-distance", "--state-a", e1, "--state-b", e1}).code ==
          kExitUsage);

    const auto missing = invoke({"fs-distance", "--state-a", "/no/such.state.json", "--state-b", e1});
    CHECK(missing.code == kExitUsage);
    CHECK_THAT(missing.err, ContainsSubstring("/no/such.state.json"));

    const auto unnorm = invoke({"fs-distance", "--state-a", (kData / "unnormalized.state.json").string(),
                                "--state-b", e1});
    CHECK(unnorm.code == kExitUsage);
    CHECK_THAT(unnorm.err, ContainsSubstring("1.4142135623730951"));

    Scratch scratch;
    io::write_file(scratch / "bad.config.json",
                   R"({"t_end": 1, "hamiltonian": ")" + (kData / "non_hermitian.ham.json").string() +
                       R"(", "initial_state": ")" + e1 + R"("})");
    const auto herm = invoke({"evolve", "--config", (scratch / "bad.config.json").string()});
    CHECK(herm.code == kExitNumerical);
    CHECK_THAT(herm.err, ContainsSubstring("(1,2)/(2,1)"));

    io::write_file(scratch / "still.config.json",
                   R"({"hamiltonian": ")" + (kData / "qubit.ham.json").string() +
                       R"(", "initial_state": ")" + e1 + R"("})");
    const auto still = invoke({"evolve", "--config", (scratch / "still.config.json").string()});
    CHECK(still.code == kExitUsage);
    CHECK_THAT(still.err, ContainsSubstring("t_end"));
}

TEST_CASE("FSQD_HBAR overrides the configuration", "[cli]") {
    Scratch scratch;
    const auto cfg = (kData / "geodesic.config.json").string();
    const auto out = (scratch / "h.report.csv").string();

    ::setenv("FSQD_HBAR", "2", 1);
    const auto r = invoke({"evolve", "--config", cfg, "--out", out});
    ::setenv("FSQD_HBAR", "-1", 1);
    const auto bad = invoke({"evolve", "--config", cfg, "--out", out});
    ::setenv("FSQD_HBAR", "abc", 1);
    const auto junk = invoke({"evolve", "--config", cfg, "--out", out});
    ::unsetenv("FSQD_HBAR");

    CHECK(r.code == kExitOk);
    CHECK(summary_value(r.out, "v_d = delta_H/hbar = ") == Catch::Approx(0.25).margin(1e-15));
    CHECK_THAT(r.out, ContainsSubstring("hbar=2"));
    CHECK(bad.code == kExitUsage);
    CHECK_THAT(bad.err, ContainsSubstring("FSQD_HBAR"));
    CHECK(junk.code == kExitUsage);
}

TEST_CASE("SIMD backend flag", "[cli]") {
    const auto e1 = (kData / "e1.state.json").string();
    const auto plus = (kData / "plus.state.json").string();
    const auto r = invoke({"--simd", "scalar", "fs-distance", "--state-a", e1, "--state-b", plus});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "0.785398163397\n");
    invoke({"--simd", "auto", "fs-distance", "--state-a", e1, "--state-b", plus});
}

TEST_CASE("helpers", "[cli]") {
    CHECK(trajectory_path("run.report.csv", io::Format::Csv) == "run.trajectory.csv");
    CHECK(trajectory_path("dir/run.report.json", io::Format::Json) == "dir/run.trajectory.json");
    CHECK(trajectory_path("out.csv", io::Format::Csv) == "out.trajectory.csv");

    CHECK(parse_dim_range("2..8") == std::pair<std::size_t, std::size_t>{2, 8});
    CHECK(parse_dim_range("5") == std::pair<std::size_t, std::size_t>{5, 5});
    CHECK_THROWS_AS(parse_dim_range("8..2"), InputError);
    CHECK_THROWS_AS(parse_dim_range("1..4"), InputError);
    CHECK_THROWS_AS(parse_dim_range("two"), InputError);
    CHECK_THROWS_AS(parse_dim_range("2..x"), InputError);
}
