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

// NEON (AArch64) kernels. One complex value per float64x2_t.

#include <arm_neon.h>

#include "raw_kernels.hpp"

namespace fsqd::simd::neon {

namespace {

inline float64x2_t swap_pair(float64x2_t v) { return vextq_f64(v, v, 1); }

// (-im, re), i.e. multiplication by i.
inline float64x2_t times_i(float64x2_t v) {
    const float64x2_t sign = {-1.0, 1.0};
    return vmulq_f64(swap_pair(v), sign);
}

} // namespace

void cdot(const double *a, const double *b, std::size_t n, double *out) {
    float64x2_t re = vdupq_n_f64(0.0);
    float64x2_t im = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t va = vld1q_f64(a + 2 * i);
        const float64x2_t vb = vld1q_f64(b + 2 * i);
        re = vfmaq_f64(re, va, vb);
        im = vfmaq_f64(im, va, swap_pair(vb));
    }
    out[0] = vgetq_lane_f64(re, 0) + vgetq_lane_f64(re, 1);
    out[1] = vgetq_lane_f64(im, 0) - vgetq_lane_f64(im, 1);
}

void dotu(const double *a, const double *b, std::size_t n, double *out) {
    float64x2_t re = vdupq_n_f64(0.0);
    float64x2_t im = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t va = vld1q_f64(a + 2 * i);
        const float64x2_t vb = vld1q_f64(b + 2 * i);
        re = vfmaq_f64(re, va, vb);
        im = vfmaq_f64(im, va, swap_pair(vb));
    }
    out[0] = vgetq_lane_f64(re, 0) - vgetq_lane_f64(re, 1);
    out[1] = vgetq_lane_f64(im, 0) + vgetq_lane_f64(im, 1);
}

double norm2(const double *a, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t v0 = vld1q_f64(a + 2 * i);
        const float64x2_t v1 = vld1q_f64(a + 2 * i + 2);
        acc0 = vfmaq_f64(acc0, v0, v0);
        acc1 = vfmaq_f64(acc1, v1, v1);
    }
    if (i < n) {
        const float64x2_t v = vld1q_f64(a + 2 * i);
        acc0 = vfmaq_f64(acc0, v, v);
    }
    return vaddvq_f64(vaddq_f64(acc0, acc1));
}

void axpy(double alpha_re, double alpha_im, const double *x, double *y,
          std::size_t n) {
    const float64x2_t ar = vdupq_n_f64(alpha_re);
    const float64x2_t ai = vdupq_n_f64(alpha_im);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t vx = vld1q_f64(x + 2 * i);
        float64x2_t vy = vld1q_f64(y + 2 * i);
        vy = vfmaq_f64(vy, ar, vx);
        vy = vfmaq_f64(vy, ai, times_i(vx));
        vst1q_f64(y + 2 * i, vy);
    }
}

void cmul(const double *x, const double *p, double *z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t vx = vld1q_f64(x + 2 * i);
        const float64x2_t pr = vdupq_n_f64(p[2 * i]);
        const float64x2_t pi = vdupq_n_f64(p[2 * i + 1]);
        vst1q_f64(z + 2 * i, vfmaq_f64(vmulq_f64(pr, vx), pi, times_i(vx)));
    }
}

void matvec(const double *m, const double *x, double *y, std::size_t n) {
    for (std::size_t row = 0; row < n; ++row) {
        dotu(m + 2 * row * n, x, n, y + 2 * row);
    }
}

} // namespace fsqd::simd::neon
