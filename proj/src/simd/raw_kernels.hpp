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

// Raw per-backend kernel entry points. Kept free of library headers so the
// intrinsic translation units only see <cstddef> and their intrinsics header.

#pragma once

#include <cstddef>

#define FSQD_DECLARE_KERNELS(ns)                                                     \
    namespace ns {                                                                   \
    void cdot(const double *a, const double *b, std::size_t n, double *out);         \
    void dotu(const double *a, const double *b, std::size_t n, double *out);         \
    double norm2(const double *a, std::size_t n);                                    \
    void axpy(double alpha_re, double alpha_im, const double *x, double *y,          \
              std::size_t n);                                                        \
    void cmul(const double *x, const double *p, double *z, std::size_t n);           \
    void matvec(const double *m, const double *x, double *y, std::size_t n);         \
    }

namespace fsqd::simd {

FSQD_DECLARE_KERNELS(scalar)

#if defined(FSQD_HAVE_AVX2)
FSQD_DECLARE_KERNELS(avx2)
#endif

#if defined(FSQD_HAVE_NEON)
FSQD_DECLARE_KERNELS(neon)
#endif

} // namespace fsqd::simd

#undef FSQD_DECLARE_KERNELS
