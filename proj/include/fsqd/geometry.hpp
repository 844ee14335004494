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

#include "fsqd/dynamics.hpp"
#include "fsqd/types.hpp"

namespace fsqd {

struct PathLengthResult {
    double length = 0.0;            // accumulated Fubini-Study arc length
    double endpoint_distance = 0.0; // geodesic distance between the end rays
    double deficit = 0.0;           // length - endpoint_distance
};

/// Fubini-Study angle between two rays, in [0, pi/2].
double fs_distance(const Ray &a, const Ray &b);

/// Same distance for arbitrary nonzero representatives.
double fs_distance(const StateVector &a, const StateVector &b);

/// Instantaneous Fubini-Study speed dx/dt = Delta H / hbar.
double fs_rate(const StateVector &psi, const HermitianOperator &h,
               const PhysicalConstants &constants = {});

/// Trapezoidal integral of fs_rate along the trajectory's own grid.
PathLengthResult path_length(const Trajectory &trajectory,
                             const HamiltonianSchedule &schedule,
                             const PhysicalConstants &constants = {});

} // namespace fsqd
