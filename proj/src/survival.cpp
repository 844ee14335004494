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

#include "fsqd/survival.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail.hpp"
#include "fsqd/errors.hpp"
#include "fsqd/geometry.hpp"

namespace fsqd {

using detail::num;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void require_non_empty(const Trajectory &trajectory, const char *context) {
    if (trajectory.size() == 0) {
        throw InputError(std::string(context) + ": empty trajectory");
    }
}

// Running trapezoid of Delta H(t_k) / hbar; one entry per grid point.
std::vector<double> accumulated_rate(const Trajectory &trajectory,
                                     const HamiltonianSchedule &schedule,
                                     const PhysicalConstants &constants,
                                     std::vector<double> *rates_out = nullptr) {
    const auto &times = trajectory.times();
    const auto &states = trajectory.states();
    schedule.require_covers(times.front(), times.back());

    std::vector<double> rates(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        rates[k] = fs_rate(states[k], schedule.at(times[k]), constants);
    }
    std::vector<double> integral(times.size(), 0.0);
    for (std::size_t k = 1; k < times.size(); ++k) {
        integral[k] =
            integral[k - 1] + 0.5 * (rates[k - 1] + rates[k]) * (times[k] - times[k - 1]);
    }
    if (rates_out != nullptr) {
        *rates_out = std::move(rates);
    }
    return integral;
}

std::optional<double> in_domain_cos(double angle) {
    if (angle > kHalfPi) {
        return std::nullopt;
    }
    return std::cos(angle);
}

bool uniform_spacing(std::span<const double> times) {
    if (times.size() < 2) {
        return false;
    }
    const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (std::abs((times[k] - times[k - 1]) - h) > 1e-8 * h) {
            return false;
        }
    }
    return h > 0.0;
}

} // namespace

std::vector<cplx> survival_amplitude(const Trajectory &trajectory) {
    require_non_empty(trajectory, "survival_amplitude");
    const auto &states = trajectory.states();
    std::vector<cplx> out;
    out.reserve(states.size());
    for (const auto &psi : states) {
        out.push_back(inner_product(states.front(), psi));
    }
    return out;
}

PredictedAmplitude predicted_amplitude(const Trajectory &trajectory,
                                       const HamiltonianSchedule &schedule,
                                       const PhysicalConstants &constants) {
    if (trajectory.size() < 2) {
        throw InputError("predicted_amplitude needs at least two trajectory samples, got " +
                         std::to_string(trajectory.size()));
    }
    PredictedAmplitude out;
    out.integral = accumulated_rate(trajectory, schedule, constants);
    out.value.reserve(out.integral.size());
    for (double angle : out.integral) {
        out.value.push_back(in_domain_cos(angle));
    }
    return out;
}

std::vector<Violation> mt_check(const Trajectory &trajectory, const HermitianOperator &h,
                                const PhysicalConstants &constants, double tol) {
    require_non_empty(trajectory, "mt_check");
    if (!(tol > 0.0)) {
        throw InputError("mt_check tolerance must be positive, got " + num(tol));
    }
    const auto &times = trajectory.times();
    const auto amplitudes = survival_amplitude(trajectory);
    const double speed = energy_uncertainty(h, trajectory.states().front()) / constants.hbar();

    std::vector<Violation> violations;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double angle = (times[k] - times.front()) * speed;
        if (angle > kHalfPi) {
            continue;
        }
        const double bound = std::cos(angle);
        const double measured = std::abs(amplitudes[k]);
        if (measured < bound - tol) {
            violations.push_back({k, bound - measured});
        }
    }
    return violations;
}

double default_mt_tolerance(const Trajectory &trajectory) {
    const auto &digest = trajectory.digest();
    const bool stepped_time_dependent =
        digest.stepper == "midpoint_magnus" && digest.schedule_kind != "constant";
    return stepped_time_dependent ? kMtToleranceStepped : kMtTolerance;
}

double decay_velocity(const StateVector &psi, const HermitianOperator &h,
                      const PhysicalConstants &constants) {
    return fs_rate(psi, h, constants);
}

std::vector<double> decay_rate_empirical(std::span<const double> times,
                                         std::span<const double> probability) {
    if (times.size() != probability.size()) {
        throw DimensionError("decay_rate_empirical: " + std::to_string(times.size()) +
                             " times but " + std::to_string(probability.size()) +
                             " probabilities");
    }
    if (times.size() < 3) {
        throw InputError("decay_rate_empirical needs at least 3 grid points, got " +
                         std::to_string(times.size()));
    }
    if (!uniform_spacing(times)) {
        throw InputError("decay_rate_empirical needs a uniform ascending time grid");
    }
    const std::size_t n = times.size();
    const double h = (times.back() - times.front()) / static_cast<double>(n - 1);
    // w = d(1 - p)/dt = -dp/dt
    std::vector<double> w(n);
    w[0] = (3.0 * probability[0] - 4.0 * probability[1] + probability[2]) / (2.0 * h);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        w[k] = (probability[k - 1] - probability[k + 1]) / (2.0 * h);
    }
    w[n - 1] =
        -(3.0 * probability[n - 1] - 4.0 * probability[n - 2] + probability[n - 3]) / (2.0 * h);
    return w;
}

double decay_rate_closed(double t, double delta_h, const PhysicalConstants &constants,
                         std::optional<double> accumulated_integral) {
    if (!(delta_h >= 0.0)) {
        throw InputError("decay_rate_closed: delta_h must be non-negative, got " +
                         num(delta_h));
    }
    const double speed = delta_h / constants.hbar();
    if (accumulated_integral) {
        if (!(*accumulated_integral >= 0.0)) {
            throw InputError("decay_rate_closed: accumulated integral must be non-negative");
        }
        return std::sin(2.0 * *accumulated_integral) * speed;
    }
    return std::sin(2.0 * t * speed) * speed;
}

SurvivalReport build_survival_report(const Trajectory &trajectory,
                                     const HamiltonianSchedule &schedule,
                                     const PhysicalConstants &constants) {
    require_non_empty(trajectory, "build_survival_report");
    const auto &times = trajectory.times();
    const std::size_t n = times.size();

    SurvivalReport report;
    report.times = times;
    report.hbar = constants.hbar();

    const auto amplitudes = survival_amplitude(trajectory);
    report.amplitude_abs.reserve(n);
    report.probability.reserve(n);
    for (const auto &a : amplitudes) {
        const double magnitude = std::abs(a);
        report.amplitude_abs.push_back(magnitude);
        report.probability.push_back(magnitude * magnitude);
    }

    std::vector<double> rates;
    const auto integral = accumulated_rate(trajectory, schedule, constants, &rates);
    report.delta_h0 = rates.front() * constants.hbar();
    const double speed0 = rates.front();

    const bool constant = schedule.is_constant();
    report.predicted_abs.reserve(n);
    report.mt_bound.reserve(n);
    report.decay_rate_closed.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double elapsed = times[k] - times.front();
        report.predicted_abs.push_back(in_domain_cos(integral[k]));
        report.mt_bound.push_back(in_domain_cos(elapsed * speed0));
        report.decay_rate_closed.push_back(
            constant ? decay_rate_closed(elapsed, report.delta_h0, constants)
                     : decay_rate_closed(elapsed, rates[k] * constants.hbar(), constants,
                                         integral[k]));
    }

    if (n >= 3 && uniform_spacing(times)) {
        const auto w = decay_rate_empirical(times, report.probability);
        report.decay_rate_empirical.assign(w.begin(), w.end());
    } else {
        report.decay_rate_empirical.assign(n, std::nullopt);
    }

    if (constant) {
        report.violations = mt_check(trajectory, schedule.constant_operator(), constants,
                                     kMtTolerance);
    }
    return report;
}

} // namespace fsqd
