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

/**
 * @file
 * Command implementations behind the `fsqd` executable. Each command returns
 * a CommandOutcome instead of exiting so that it can be driven from tests.
 *
 * Exit codes: 0 success, 1 usage or parse error, 2 numerical contract
 * violation (bound violation found, Hermiticity failure, norm drift).
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsqd/io.hpp"

namespace fsqd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

struct CommandOutcome {
    int exit_code = kExitOk;
    std::string summary;
    std::vector<std::filesystem::path> artifacts;
};

/// Evolves the configured state, writes the survival report to
/// config.output.path and the trajectory next to it.
CommandOutcome cmd_evolve(const io::RunConfig &config);

/// Prints the Fubini-Study distance between two state files.
CommandOutcome cmd_fs_distance(const std::filesystem::path &state_a,
                               const std::filesystem::path &state_b);

enum class TrialMode {
    Random,     // random state and Hamiltonian
    Eigenstate, // initial state forced onto an eigenvector
    Geodesic,   // equal-weight superposition of two eigenvectors
};

struct CampaignOptions {
    std::size_t dim_lo = 2;
    std::size_t dim_hi = 8;
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    std::size_t grid_points = 256;
    TrialMode mode = TrialMode::Random;
    PhysicalConstants constants;
    std::optional<io::OutputSpec> output;
};

struct CampaignResult {
    std::size_t violations = 0;
    /// min over trials and in-domain grid points of |A_t| - cos(t dH / hbar).
    double min_slack = 0.0;
    std::size_t min_slack_trial = 0;
    std::size_t min_slack_index = 0;
    /// Same minimum restricted to t > 0.
    double min_interior_slack = 0.0;
    /// max over trials and in-domain grid points of | |A_t| - cos(t dH / hbar) |.
    double max_abs_slack = 0.0;
};

/// Mandelstam-Tamm check over random (psi0, H) pairs. Trials are seeded
/// independently from (seed, trial index).
CampaignResult run_mt_campaign(const CampaignOptions &options);
CommandOutcome cmd_mt_campaign(const CampaignOptions &options);

/// Writes empirical and closed-form decay rates per time point.
CommandOutcome cmd_decay_rate(const io::RunConfig &config);

/// Path the trajectory is written to for a given report path:
/// "run.report.csv" becomes "run.trajectory.csv".
std::filesystem::path trajectory_path(const std::filesystem::path &report_path, io::Format format);

/// Parses "LO..HI" (or a single "N").
std::pair<std::size_t, std::size_t> parse_dim_range(const std::string &text);

/// Full command-line entry point.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace fsqd::cli
