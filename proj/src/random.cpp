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

#include "fsqd/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fsqd {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

StateVector random_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::vector<cplx> amps(dim);
    for (auto &z : amps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z = cplx(re, im);
    }
    return normalize(StateVector(std::move(amps)));
}

HermitianOperator random_hermitian(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::vector<cplx> m(dim * dim);
    for (auto &z : m) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z = cplx(re, im);
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            const cplx sym = 0.5 * (m[i * dim + j] + std::conj(m[j * dim + i]));
            m[i * dim + j] = sym;
            m[j * dim + i] = std::conj(sym);
        }
    }
    return HermitianOperator::from_matrix(dim, std::move(m));
}

cplx random_phase(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    return std::polar(1.0, angle(rng));
}

} // namespace fsqd
