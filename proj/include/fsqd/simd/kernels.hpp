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

/**
 * @file
 * Complex double-precision vector kernels with runtime backend selection.
 *
 * Every kernel operates on interleaved (re, im) storage, which is the
 * layout of std::complex<double> arrays. Each backend exports the same
 * table of function pointers; the scalar table is the reference that the
 * vectorized tables are equivalence-tested against.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace fsqd::simd {

enum class Backend { Scalar, Avx2, Neon };

/// Raw kernel signatures. `n` always counts complex elements.
struct KernelTable {
    std::string_view name;
    Backend backend;

    /// sum_i conj(a_i) * b_i, written to out[0] (re) and out[1] (im).
    void (*cdot)(const double *a, const double *b, std::size_t n, double *out);
    /// sum_i a_i * b_i (no conjugation).
    void (*dotu)(const double *a, const double *b, std::size_t n, double *out);
    /// sum_i |a_i|^2
    double (*norm2)(const double *a, std::size_t n);
    /// y_i += alpha * x_i
    void (*axpy)(double alpha_re, double alpha_im, const double *x, double *y,
                 std::size_t n);
    /// z_i = x_i * p_i
    void (*cmul)(const double *x, const double *p, double *z, std::size_t n);
    /// y = M x for a row-major n x n matrix M.
    void (*matvec)(const double *m, const double *x, double *y, std::size_t n);
};

const KernelTable &scalar_kernels();

/// Returns nullptr when the backend was not compiled in or the CPU lacks
/// the instruction set.
const KernelTable *backend_kernels(Backend backend);

/// Backends usable on this machine, scalar first.
std::vector<Backend> available_backends();

/// Kernel table used by the library. Chosen on first use from the FSQD_SIMD
/// environment variable (scalar | avx2 | neon | auto), defaulting to the
/// widest supported backend.
const KernelTable &active();

/// Overrides the active backend. Throws std::invalid_argument when the
/// backend is unavailable.
void select_backend(Backend backend);

Backend parse_backend(std::string_view name);
std::string_view backend_name(Backend backend);

// Span wrappers over the active table.

using cplx = std::complex<double>;

std::complex<double> cdot(std::span<const cplx> a, std::span<const cplx> b);
std::complex<double> dotu(std::span<const cplx> a, std::span<const cplx> b);
double norm2(std::span<const cplx> a);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void cmul(std::span<const cplx> x, std::span<const cplx> p, std::span<cplx> z);
void matvec(std::span<const cplx> m, std::span<const cplx> x, std::span<cplx> y);

} // namespace fsqd::simd
