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

// Random states and Hamiltonians for property tests and bound-check
// campaigns. Entries are independent standard Gaussians; Hermitian samples
// are symmetrized as (M + M^dagger) / 2.

#pragma once

#include <cstdint>
#include <random>

#include "fsqd/types.hpp"

namespace fsqd {

/// Independent stream for trial `trial` of a campaign seeded with `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Normalized state with i.i.d. complex Gaussian amplitudes.
StateVector random_state(std::size_t dim, std::mt19937_64 &rng);

HermitianOperator random_hermitian(std::size_t dim, std::mt19937_64 &rng);

/// Uniformly distributed unit complex number.
cplx random_phase(std::mt19937_64 &rng);

} // namespace fsqd
