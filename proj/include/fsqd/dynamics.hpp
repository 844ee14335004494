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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fsqd/types.hpp"

namespace fsqd {

/// Time-dependent Hamiltonian H(t) on [t0, infinity).
///
/// - constant: one operator for all t.
/// - piecewise_constant: breakpoints (t_start, H); H(t) is the operator of the
///   last breakpoint with t_start <= t.
/// - sampled: nodes (t, H); H(t) interpolates linearly between neighbouring
///   nodes and is only defined on [first node, last node].
class HamiltonianSchedule {
  public:
    enum class Kind { Constant, PiecewiseConstant, Sampled };

    struct Node {
        double t;
        HermitianOperator h;
    };

    static HamiltonianSchedule constant(HermitianOperator h);
    static HamiltonianSchedule piecewise_constant(std::vector<Node> breakpoints);
    static HamiltonianSchedule sampled(std::vector<Node> nodes);

    Kind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return nodes_.front().h.dim(); }
    const std::vector<Node> &nodes() const noexcept { return nodes_; }

    /// True when H(t) is the same operator everywhere.
    bool is_constant() const noexcept;

    /// Earliest time at which the schedule is defined.
    double start_time() const noexcept;
    /// Latest time at which the schedule is defined (infinity unless sampled).
    double end_time() const noexcept;

    /// Throws InputError when [t0, t1] is not covered.
    void require_covers(double t0, double t1) const;

    /// H(t). Throws InputError outside the covered range.
    HermitianOperator at(double t) const;

    /// The operator for t >= start when is_constant().
    const HermitianOperator &constant_operator() const;

  private:
    HamiltonianSchedule(Kind kind, std::vector<Node> nodes);

    Kind kind_;
    std::vector<Node> nodes_;
};

std::string to_string(HamiltonianSchedule::Kind kind);

/// Generating schedule and stepper settings of a trajectory.
struct ScheduleDigest {
    std::string schedule_kind; // "constant", "piecewise_constant", "sampled"
    std::string stepper;       // "exact_spectral" or "midpoint_magnus"
    std::size_t steps = 0;
    double t_end = 0.0;
    double hbar = 1.0;
    /// Steps whose state was rescaled after a norm drift below the error limit.
    std::size_t renormalizations = 0;
    double max_norm_drift = 0.0;

    std::string describe() const;
    friend bool operator==(const ScheduleDigest &, const ScheduleDigest &) = default;
};

/// Time-ordered samples (t_k, psi(t_k)). Times ascend strictly and every
/// state is normalized within kNormTolerance.
class Trajectory {
  public:
    Trajectory(std::vector<double> times, std::vector<StateVector> states,
               ScheduleDigest digest = {});

    std::size_t size() const noexcept { return times_.size(); }
    const std::vector<double> &times() const noexcept { return times_; }
    const std::vector<StateVector> &states() const noexcept { return states_; }
    const ScheduleDigest &digest() const noexcept { return digest_; }

  private:
    std::vector<double> times_;
    std::vector<StateVector> states_;
    ScheduleDigest digest_;
};

/// Per-step norm drift above which evolve_schedule refuses to continue.
inline constexpr double kMaxStepDrift = 1e-12;

/// V exp(-i Lambda t / hbar) V^dagger psi0. Returns psi0 unchanged for t == 0.
StateVector evolve_exact(const StateVector &psi0, const HermitianOperator &h, double t,
                         const PhysicalConstants &constants = {});

/// Uniform grid of steps + 1 points on [0, t_end]. Each step applies the
/// exact propagator of H frozen at the step midpoint.
Trajectory evolve_schedule(const StateVector &psi0, const HamiltonianSchedule &schedule,
                           double t_end, std::size_t steps,
                           const PhysicalConstants &constants = {});

/// Uniform grid of steps + 1 points on [0, t_end], each state propagated
/// directly from psi0.
Trajectory sample_trajectory(const StateVector &psi0, const HermitianOperator &h,
                             double t_end, std::size_t steps,
                             const PhysicalConstants &constants = {});

/// k * t_end / steps for k = 0..steps.
std::vector<double> uniform_grid(double t_end, std::size_t steps);

} // namespace fsqd
