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

// Reference kernels. Plain loops over interleaved (re, im) pairs.

#include "raw_kernels.hpp"

namespace fsqd::simd::scalar {

void cdot(const double *a, const double *b, std::size_t n, double *out) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[2 * i];
        const double ai = a[2 * i + 1];
        const double br = b[2 * i];
        const double bi = b[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    out[0] = re;
    out[1] = im;
}

void dotu(const double *a, const double *b, std::size_t n, double *out) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[2 * i];
        const double ai = a[2 * i + 1];
        const double br = b[2 * i];
        const double bi = b[2 * i + 1];
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    out[0] = re;
    out[1] = im;
}

double norm2(const double *a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        acc += a[i] * a[i];
    }
    return acc;
}

void axpy(double alpha_re, double alpha_im, const double *x, double *y,
          std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i];
        const double xi = x[2 * i + 1];
        y[2 * i] += alpha_re * xr - alpha_im * xi;
        y[2 * i + 1] += alpha_re * xi + alpha_im * xr;
    }
}

void cmul(const double *x, const double *p, double *z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
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

} // namespace fsqd::simd::scalar
