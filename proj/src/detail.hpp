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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <span>
#include <string>

namespace fsqd::detail {

/// Shortest %g rendering that still names the value unambiguously.
inline std::string num(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

/// Index of the first amplitude whose magnitude exceeds threshold * max|z|.
inline std::size_t gauge_index(std::span<const std::complex<double>> z,
                               double threshold) {
    double largest = 0.0;
    for (const auto &c : z) {
        largest = std::max(largest, std::abs(c));
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (std::abs(z[i]) > threshold * largest) {
            return i;
        }
    }
    return 0;
}

} // namespace fsqd::detail
