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

// AVX2 + FMA kernels. Two complex values per 256-bit register; an odd tail
// element falls back to scalar arithmetic. Compiled with -mavx2 -mfma and
// only called after a runtime CPU check.

#include <immintrin.h>

#include "raw_kernels.hpp"

namespace fsqd::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// lane0 - lane1 + lane2 - lane3
inline double halt(__m256d v) {
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    return hsum(_mm256_mul_pd(v, sign));
}

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

} // namespace

void cdot(const double *a, const double *b, std::size_t n, double *out) {
    __m256d re0 = _mm256_setzero_pd();
    __m256d im0 = _mm256_setzero_pd();
    __m256d re1 = _mm256_setzero_pd();
    __m256d im1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va0 = _mm256_loadu_pd(a + 2 * i);
        const __m256d vb0 = _mm256_loadu_pd(b + 2 * i);
        const __m256d va1 = _mm256_loadu_pd(a + 2 * i + 4);
        const __m256d vb1 = _mm256_loadu_pd(b + 2 * i + 4);
        re0 = _mm256_fmadd_pd(va0, vb0, re0);
        im0 = _mm256_fmadd_pd(va0, swap_pairs(vb0), im0);
        re1 = _mm256_fmadd_pd(va1, vb1, re1);
        im1 = _mm256_fmadd_pd(va1, swap_pairs(vb1), im1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(a + 2 * i);
        const __m256d vb = _mm256_loadu_pd(b + 2 * i);
        re0 = _mm256_fmadd_pd(va, vb, re0);
        im0 = _mm256_fmadd_pd(va, swap_pairs(vb), im0);
    }
    double re = hsum(_mm256_add_pd(re0, re1));
    double im = halt(_mm256_add_pd(im0, im1));
    if (i < n) {
        re += a[2 * i] * b[2 * i] + a[2 * i + 1] * b[2 * i + 1];
        im += a[2 * i] * b[2 * i + 1] - a[2 * i + 1] * b[2 * i];
    }
    out[0] = re;
    out[1] = im;
}

void dotu(const double *a, const double *b, std::size_t n, double *out) {
    __m256d re0 = _mm256_setzero_pd();
    __m256d im0 = _mm256_setzero_pd();
    __m256d re1 = _mm256_setzero_pd();
    __m256d im1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va0 = _mm256_loadu_pd(a + 2 * i);
        const __m256d vb0 = _mm256_loadu_pd(b + 2 * i);
        const __m256d va1 = _mm256_loadu_pd(a + 2 * i + 4);
        const __m256d vb1 = _mm256_loadu_pd(b + 2 * i + 4);
        re0 = _mm256_fmadd_pd(va0, vb0, re0);
        im0 = _mm256_fmadd_pd(va0, swap_pairs(vb0), im0);
        re1 = _mm256_fmadd_pd(va1, vb1, re1);
        im1 = _mm256_fmadd_pd(va1, swap_pairs(vb1), im1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(a + 2 * i);
        const __m256d vb = _mm256_loadu_pd(b + 2 * i);
        re0 = _mm256_fmadd_pd(va, vb, re0);
        im0 = _mm256_fmadd_pd(va, swap_pairs(vb), im0);
    }
    double re = halt(_mm256_add_pd(re0, re1));
    double im = hsum(_mm256_add_pd(im0, im1));
    if (i < n) {
        re += a[2 * i] * b[2 * i] - a[2 * i + 1] * b[2 * i + 1];
        im += a[2 * i] * b[2 * i + 1] + a[2 * i + 1] * b[2 * i];
    }
    out[0] = re;
    out[1] = im;
}

double norm2(const double *a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    const std::size_t len = 2 * n;
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        const __m256d v0 = _mm256_loadu_pd(a + i);
        const __m256d v1 = _mm256_loadu_pd(a + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 4 <= len; i += 4) {
        const __m256d v = _mm256_loadu_pd(a + i);
        acc0 = _mm256_fmadd_pd(v, v, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; ++i) {
        acc += a[i] * a[i];
    }
    return acc;
}

void axpy(double alpha_re, double alpha_im, const double *x, double *y,
          std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha_re);
    const __m256d ai = _mm256_set1_pd(alpha_im);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(x + 2 * i);
        const __m256d vy = _mm256_loadu_pd(y + 2 * i);
        const __m256d t = _mm256_mul_pd(ai, swap_pairs(vx));
        const __m256d prod = _mm256_fmaddsub_pd(ar, vx, t);
        _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(vy, prod));
    }
    if (i < n) {
        const double xr = x[2 * i];
        const double xi = x[2 * i + 1];
        y[2 * i] += alpha_re * xr - alpha_im * xi;
        y[2 * i + 1] += alpha_re * xi + alpha_im * xr;
    }
}

void cmul(const double *x, const double *p, double *z, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(x + 2 * i);
        const __m256d vp = _mm256_loadu_pd(p + 2 * i);
        const __m256d pr = _mm256_movedup_pd(vp);
        const __m256d pi = _mm256_permute_pd(vp, 0b1111);
        const __m256d t = _mm256_mul_pd(pi, swap_pairs(vx));
        _mm256_storeu_pd(z + 2 * i, _mm256_fmaddsub_pd(pr, vx, t));
    }
    if (i < n) {
        const double xr = x[2 * i];
        const double xi = x[2 * i + 1];
        const double pr = p[2 * i];
        const double pi = p[2 * i + 1];
        z[2 * i] = xr * pr - xi * pi;
        z[2 * i + 1] = xr * pi + xi * pr;
    }
}

void matvec(const double *m, const double *x, double *y, std::size_t n) {
    for (std::size_t row = 0; row < n; ++row) {
        dotu(m + 2 * row * n, x, n, y + 2 * row);
    }
}

} // namespace fsqd::simd::avx2
