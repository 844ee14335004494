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

#include "fsqd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "detail.hpp"
#include "fsqd/errors.hpp"
#include "fsqd/simd/kernels.hpp"

namespace fsqd {

using detail::num;

// ---------------------------------------------------------------------------
// HamiltonianSchedule

HamiltonianSchedule::HamiltonianSchedule(Kind kind, std::vector<Node> nodes)
    : kind_(kind), nodes_(std::move(nodes)) {
    if (nodes_.empty()) {
        throw InputError("schedule needs at least one operator");
    }
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (!std::isfinite(nodes_[k].t)) {
            throw InputError("schedule node " + std::to_string(k) + " has a non-finite time");
        }
        require_same_dim(nodes_.front().h.dim(), nodes_[k].h.dim(), "schedule");
        if (k > 0 && !(nodes_[k].t > nodes_[k - 1].t)) {
            throw InputError("schedule times must be strictly ascending (node " +
                             std::to_string(k) + " at t = " + num(nodes_[k].t) +
                             " follows t = " + num(nodes_[k - 1].t) + ")");
        }
    }
}

HamiltonianSchedule HamiltonianSchedule::constant(HermitianOperator h) {
    return HamiltonianSchedule(Kind::Constant, {Node{0.0, std::move(h)}});
}

HamiltonianSchedule HamiltonianSchedule::piecewise_constant(std::vector<Node> breakpoints) {
    return HamiltonianSchedule(Kind::PiecewiseConstant, std::move(breakpoints));
}

HamiltonianSchedule HamiltonianSchedule::sampled(std::vector<Node> nodes) {
    if (nodes.size() < 2) {
        throw InputError("a sampled schedule needs at least two nodes");
    }
    return HamiltonianSchedule(Kind::Sampled, std::move(nodes));
}

bool HamiltonianSchedule::is_constant() const noexcept {
    return kind_ == Kind::Constant ||
           (kind_ == Kind::PiecewiseConstant && nodes_.size() == 1);
}

double HamiltonianSchedule::start_time() const noexcept {
    return kind_ == Kind::Constant ? -std::numeric_limits<double>::infinity()
                                   : nodes_.front().t;
}

double HamiltonianSchedule::end_time() const noexcept {
    return kind_ == Kind::Sampled ? nodes_.back().t
                                  : std::numeric_limits<double>::infinity();
}

void HamiltonianSchedule::require_covers(double t0, double t1) const {
    if (t0 < start_time() || t1 > end_time()) {
        throw InputError("schedule gap: " + to_string(kind_) + " schedule is defined on [" +
                         num(start_time()) + ", " + num(end_time()) +
                         "] but evolution needs [" + num(t0) + ", " + num(t1) + "]");
    }
}

HermitianOperator HamiltonianSchedule::at(double t) const {
    if (t < start_time() || t > end_time()) {
        throw InputError("schedule gap: H(t) is undefined at t = " + num(t));
    }
    switch (kind_) {
    case Kind::Constant:
        return nodes_.front().h;
    case Kind::PiecewiseConstant: {
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                                         [](double v, const Node &n) { return v < n.t; });
        return std::prev(it)->h;
    }
    case Kind::Sampled: {
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                                   [](double v, const Node &n) { return v < n.t; });
        if (it == nodes_.end()) {
            return nodes_.back().h;
        }
        const Node &hi = *it;
        const Node &lo = *std::prev(it);
        if (t == lo.t) {
            return lo.h;
        }
        return interpolate(lo.h, hi.h, (t - lo.t) / (hi.t - lo.t));
    }
    }
    throw InputError("unknown schedule kind");
}

const HermitianOperator &HamiltonianSchedule::constant_operator() const {
    if (!is_constant()) {
        throw InputError("schedule is not constant");
    }
    return nodes_.front().h;
}

std::string to_string(HamiltonianSchedule::Kind kind) {
    switch (kind) {
    case HamiltonianSchedule::Kind::Constant:
        return "constant";
    case HamiltonianSchedule::Kind::PiecewiseConstant:
        return "piecewise_constant";
    case HamiltonianSchedule::Kind::Sampled:
        return "sampled";
    }
    return "unknown";
}

std::string ScheduleDigest::describe() const {
    std::ostringstream out;
    out << "schedule=" << schedule_kind << " stepper=" << stepper << " steps=" << steps
        << " t_end=" << num(t_end) << " hbar=" << num(hbar)
        << " renormalizations=" << renormalizations
        << " max_norm_drift=" << num(max_norm_drift);
    return out.str();
}

// ---------------------------------------------------------------------------
// Trajectory

Trajectory::Trajectory(std::vector<double> times, std::vector<StateVector> states,
                       ScheduleDigest digest)
    : times_(std::move(times)), states_(std::move(states)), digest_(std::move(digest)) {
    if (times_.empty() || times_.size() != states_.size()) {
        throw InputError("trajectory needs matching, non-empty time and state lists (" +
                         std::to_string(times_.size()) + " times, " +
                         std::to_string(states_.size()) + " states)");
    }
    for (std::size_t k = 0; k < times_.size(); ++k) {
        if (!std::isfinite(times_[k])) {
            throw InputError("trajectory time " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(times_[k] > times_[k - 1])) {
            throw InputError("trajectory times must ascend strictly (index " +
                             std::to_string(k) + ")");
        }
        require_same_dim(states_.front().dim(), states_[k].dim(), "trajectory");
        require_normalized(states_[k], "trajectory state " + std::to_string(k));
    }
}

// ---------------------------------------------------------------------------
// Propagation

namespace {

std::vector<cplx> propagate(std::span<const cplx> psi, const HermitianOperator &h, double t,
                            double hbar) {
    const std::size_t n = psi.size();
    std::vector<cplx> coeffs(n);
    simd::matvec(h.eigenvectors_adjoint(), psi, coeffs);
    // psi + V (exp(-i Lambda t / hbar) - 1) V^dagger psi; the increment
    // exp(-i a) - 1 = -2 sin^2(a/2) - i sin(a).
    std::vector<cplx> increments(n);
    const auto energies = h.eigenvalues();
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = energies[k] * t / hbar;
        const double half = std::sin(0.5 * angle);
        increments[k] = cplx(-2.0 * half * half, -std::sin(angle));
    }
    simd::cmul(coeffs, increments, coeffs);
    std::vector<cplx> delta(n);
    simd::matvec(h.eigenvectors(), coeffs, delta);
    std::vector<cplx> out(psi.begin(), psi.end());
    simd::axpy(cplx(1.0, 0.0), delta, out);
    return out;
}

void require_grid(double t_end, std::size_t steps) {
    if (steps < 1) {
        throw InputError("steps must be at least 1");
    }
    if (!(std::isfinite(t_end) && t_end > 0.0)) {
        throw InputError("t_end must be positive and finite, got " + num(t_end));
    }
}

} // namespace

std::vector<double> uniform_grid(double t_end, std::size_t steps) {
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        grid[k] = t_end * static_cast<double>(k) / static_cast<double>(steps);
    }
    grid.back() = t_end;
    return grid;
}

StateVector evolve_exact(const StateVector &psi0, const HermitianOperator &h, double t,
                         const PhysicalConstants &constants) {
    require_same_dim(psi0.dim(), h.dim(), "evolve_exact");
    require_normalized(psi0, "evolve_exact");
    if (!std::isfinite(t)) {
        throw InputError("evolution time must be finite");
    }
    if (t == 0.0) {
        return psi0;
    }
    return StateVector(propagate(psi0.amplitudes(), h, t, constants.hbar()));
}

Trajectory evolve_schedule(const StateVector &psi0, const HamiltonianSchedule &schedule,
                           double t_end, std::size_t steps,
                           const PhysicalConstants &constants) {
    require_grid(t_end, steps);
    require_same_dim(psi0.dim(), schedule.dim(), "evolve_schedule");
    require_normalized(psi0, "evolve_schedule");
    schedule.require_covers(0.0, t_end);

    ScheduleDigest digest;
    digest.schedule_kind = to_string(schedule.kind());
    digest.stepper = "midpoint_magnus";
    digest.steps = steps;
    digest.t_end = t_end;
    digest.hbar = constants.hbar();

    const auto times = uniform_grid(t_end, steps);
    std::vector<StateVector> states;
    states.reserve(times.size());
    states.push_back(psi0);

    // Drift at or below a few ulps is rounding noise, not worth a rescale.
    constexpr double kNoiseFloor = 4.0 * std::numeric_limits<double>::epsilon();

    std::vector<cplx> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
    for (std::size_t k = 0; k < steps; ++k) {
        const double t_mid = 0.5 * (times[k] + times[k + 1]);
        const HermitianOperator h =
            schedule.is_constant() ? schedule.constant_operator() : schedule.at(t_mid);
        psi = propagate(psi, h, times[k + 1] - times[k], constants.hbar());

        const double norm = std::sqrt(simd::norm2(psi));
        const double drift = std::abs(norm - 1.0);
        digest.max_norm_drift = std::max(digest.max_norm_drift, drift);
        if (drift > kMaxStepDrift) {
            throw NumericalError("norm drift " + num(drift) + " at step " +
                                 std::to_string(k) + " exceeds " + num(kMaxStepDrift));
        }
        if (drift > kNoiseFloor) {
            for (auto &z : psi) {
                z /= norm;
            }
            ++digest.renormalizations;
        }
        states.emplace_back(psi);
    }
    return Trajectory(times, std::move(states), std::move(digest));
}

Trajectory sample_trajectory(const StateVector &psi0, const HermitianOperator &h,
                             double t_end, std::size_t steps,
                             const PhysicalConstants &constants) {
    require_grid(t_end, steps);
    require_same_dim(psi0.dim(), h.dim(), "sample_trajectory");
    require_normalized(psi0, "sample_trajectory");

    ScheduleDigest digest;
    digest.schedule_kind = "constant";
    digest.stepper = "exact_spectral";
    digest.steps = steps;
    digest.t_end = t_end;
    digest.hbar = constants.hbar();

    const auto times = uniform_grid(t_end, steps);
    std::vector<StateVector> states;
    states.reserve(times.size());
    for (double t : times) {
        states.push_back(evolve_exact(psi0, h, t, constants));
        digest.max_norm_drift =
            std::max(digest.max_norm_drift, std::abs(states.back().norm() - 1.0));
    }
    return Trajectory(times, std::move(states), std::move(digest));
}

} // namespace fsqd
