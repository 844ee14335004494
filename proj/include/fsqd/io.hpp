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
 * File formats: states (.state.json), Hamiltonians (.ham.json), schedules
 * (.sched.json), run configurations, trajectories and survival reports
 * (.report.csv / .report.json).
 *
 * Complex numbers are [re, im] arrays. Doubles are written so that parsing
 * them back reproduces the same bits.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fsqd/dynamics.hpp"
#include "fsqd/survival.hpp"
#include "fsqd/types.hpp"

namespace fsqd::io {

enum class Format { Csv, Json };

Format parse_format(std::string_view name);
std::string_view format_name(Format format);

/// Exact CSV header of a serialized survival report.
inline constexpr std::string_view kReportCsvHeader =
    "t,amp_abs,prob,predicted,predicted_in_domain,mt_bound,w_empirical,w_closed";

StateVector parse_state(std::string_view text);
std::string serialize_state(const StateVector &state);

HermitianOperator parse_hamiltonian(std::string_view text);
std::string serialize_hamiltonian(const HermitianOperator &h);

HamiltonianSchedule parse_schedule(std::string_view text);

std::string serialize_report(const SurvivalReport &report, Format format);
/// Inverse of serialize_report(report, Format::Json).
SurvivalReport parse_report(std::string_view text);

std::string serialize_trajectory(const Trajectory &trajectory, Format format);

struct OutputSpec {
    Format format = Format::Csv;
    std::filesystem::path path;
};

struct RunConfig {
    PhysicalConstants constants;
    std::optional<double> t_end;
    std::size_t steps = 1024;
    HamiltonianSchedule schedule;
    StateVector initial_state;
    OutputSpec output;
    std::optional<std::uint64_t> seed;
};

/// Parses a run configuration. Relative file references resolve against
/// base_dir.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path &base_dir);
RunConfig load_run_config(const std::filesystem::path &path);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view contents);

/// "%.17g"
std::string format_double(double value);

} // namespace fsqd::io
