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
 * Survival amplitude A_t = <psi(0)|psi(t)>, the cosine survival law
 * |A_t| = cos(integral of Delta H / hbar), the Mandelstam-Tamm bound
 * |A_t| >= cos(t Delta H / hbar) and the decay rate w = d(1 - |A_t|^2)/dt.
 *
 * The cosine law is exposed as a prediction next to the measured amplitude,
 * never substituted for it: it is exact along geodesic evolutions only and a
 * strict lower bound otherwise.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fsqd/dynamics.hpp"
#include "fsqd/types.hpp"

namespace fsqd {

inline constexpr double kMtTolerance = 1e-9;
inline constexpr double kMtToleranceStepped = 1e-7;

struct Violation {
    std::size_t index = 0;
    double magnitude = 0.0; // bound - |A_t|
    friend bool operator==(const Violation &, const Violation &) = default;
};

struct PredictedAmplitude {
    /// Trapezoidal integral of Delta H / hbar from t_0 to t_k.
    std::vector<double> integral;
    /// cos(integral), empty where the integral exceeds pi/2.
    std::vector<std::optional<double>> value;
};

struct SurvivalReport {
    std::vector<double> times;
    std::vector<double> amplitude_abs;
    std::vector<double> probability;
    std::vector<std::optional<double>> predicted_abs;
    std::vector<std::optional<double>> mt_bound;
    /// Empty when the grid is too short or not uniform.
    std::vector<std::optional<double>> decay_rate_empirical;
    std::vector<double> decay_rate_closed;
    /// Only populated for constant schedules.
    std::optional<std::vector<Violation>> violations;
    double hbar = 1.0;
    double delta_h0 = 0.0; // Delta H at psi(t_0) under H(t_0)

    std::size_t size() const noexcept { return times.size(); }
    friend bool operator==(const SurvivalReport &, const SurvivalReport &) = default;
};

/// A_k = <psi(t_0)|psi(t_k)>.
std::vector<cplx> survival_amplitude(const Trajectory &trajectory);

/// Cosine-law prediction along the trajectory. Needs at least two samples.
PredictedAmplitude predicted_amplitude(const Trajectory &trajectory,
                                       const HamiltonianSchedule &schedule,
                                       const PhysicalConstants &constants = {});

/// Grid points where |A_t| < cos((t - t_0) Delta H / hbar) - tol, restricted
/// to (t - t_0) Delta H / hbar <= pi/2. Delta H is taken at psi(t_0).
std::vector<Violation> mt_check(const Trajectory &trajectory, const HermitianOperator &h,
                                const PhysicalConstants &constants = {},
                                double tol = kMtTolerance);

/// kMtToleranceStepped for trajectories stepped through a time-dependent
/// schedule, kMtTolerance otherwise.
double default_mt_tolerance(const Trajectory &trajectory);

/// v_d = Delta H / hbar; the same quantity as fs_rate.
double decay_velocity(const StateVector &psi, const HermitianOperator &h,
                      const PhysicalConstants &constants = {});

/// -d(probability)/dt by second-order finite differences on a uniform grid
/// (central inside, one-sided three-point at both ends).
std::vector<double> decay_rate_empirical(std::span<const double> times,
                                         std::span<const double> probability);

/// sin(2 t Delta H / hbar) Delta H / hbar, or sin(2 I) Delta H / hbar when the
/// accumulated integral I is supplied.
double decay_rate_closed(double t, double delta_h, const PhysicalConstants &constants = {},
                         std::optional<double> accumulated_integral = std::nullopt);

SurvivalReport build_survival_report(const Trajectory &trajectory,
                                     const HamiltonianSchedule &schedule,
                                     const PhysicalConstants &constants = {});

} // namespace fsqd
