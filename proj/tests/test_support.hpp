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

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "fsqd/types.hpp"

namespace fsqd::test {

inline const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

inline StateVector state(std::initializer_list<cplx> amps) {
    return StateVector(std::vector<cplx>(amps));
}

inline HermitianOperator diag(std::initializer_list<double> entries) {
    return HermitianOperator::diagonal(std::vector<double>(entries));
}

inline HermitianOperator matrix2(cplx a, cplx b, cplx c, cplx d) {
    return HermitianOperator::from_matrix(2, {a, b, c, d});
}

inline double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace fsqd::test
