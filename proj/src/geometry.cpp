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

#include "fsqd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsqd/errors.hpp"
#include "fsqd/simd/kernels.hpp"

namespace fsqd {

namespace {

bool lexicographically_less(std::span<const cplx> a, std::span<const cplx> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) {
            return a[i].real() < b[i].real();
        }
        if (a[i].imag() != b[i].imag()) {
            return a[i].imag() < b[i].imag();
        }
    }
    return false;
}

// The angle comes from the chord between the phase-aligned unit vectors,
// x = 2 asin(|a - u b| / 2) with u = conj(<a|b>)/|<a|b>|. Mathematically this
// is arccos|<a|b>|, but it keeps full absolute precision for nearly
// coincident rays where arccos of an overlap close to 1 does not.
double chord_angle(std::span<const cplx> a, std::span<const cplx> b) {
    const double na = std::sqrt(simd::norm2(a));
    const double nb = std::sqrt(simd::norm2(b));
    std::vector<cplx> ua(a.begin(), a.end());
    std::vector<cplx> ub(b.begin(), b.end());
    for (auto &z : ua) {
        z /= na;
    }
    for (auto &z : ub) {
        z /= nb;
    }
    const cplx overlap = simd::cdot(ua, ub);
    const double magnitude = std::abs(overlap);
    const cplx align = magnitude > 0.0 ? std::conj(overlap) / magnitude : cplx(1.0, 0.0);
    simd::axpy(-align, ub, ua);
    const double chord = std::sqrt(simd::norm2(ua));
    const double angle = 2.0 * std::asin(std::min(1.0, 0.5 * chord));
    return std::clamp(angle, 0.0, std::numbers::pi / 2);
}

} // namespace

double fs_distance(const StateVector &a, const StateVector &b) {
    require_same_dim(a.dim(), b.dim(), "fs_distance");
    // Fixed argument order makes the result exactly symmetric.
    if (lexicographically_less(b.amplitudes(), a.amplitudes())) {
        return chord_angle(b.amplitudes(), a.amplitudes());
    }
    return chord_angle(a.amplitudes(), b.amplitudes());
}

double fs_distance(const Ray &a, const Ray &b) {
    return fs_distance(a.representative(), b.representative());
}

double fs_rate(const StateVector &psi, const HermitianOperator &h,
               const PhysicalConstants &constants) {
    return energy_uncertainty(h, psi) / constants.hbar();
}

PathLengthResult path_length(const Trajectory &trajectory,
                             const HamiltonianSchedule &schedule,
                             const PhysicalConstants &constants) {
    if (trajectory.size() < 2) {
        throw InputError("path_length needs at least two trajectory samples, got " +
                         std::to_string(trajectory.size()));
    }
    const auto &times = trajectory.times();
    const auto &states = trajectory.states();
    schedule.require_covers(times.front(), times.back());

    std::vector<double> rates(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        rates[k] = fs_rate(states[k], schedule.at(times[k]), constants);
    }

    PathLengthResult result;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        result.length += 0.5 * (rates[k] + rates[k + 1]) * (times[k + 1] - times[k]);
    }
    result.endpoint_distance = fs_distance(Ray(states.front()), Ray(states.back()));
    result.deficit = result.length - result.endpoint_distance;
    return result;
}

} // namespace fsqd
