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

#include "fsqd/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "raw_kernels.hpp"

namespace fsqd::simd {

namespace {

constexpr KernelTable kScalar{"scalar",     Backend::Scalar, scalar::cdot,
                              scalar::dotu, scalar::norm2,   scalar::axpy,
                              scalar::cmul, scalar::matvec};

#if defined(FSQD_HAVE_AVX2)
constexpr KernelTable kAvx2{"avx2",     Backend::Avx2, avx2::cdot,
                            avx2::dotu, avx2::norm2,   avx2::axpy,
                            avx2::cmul, avx2::matvec};
#endif

#if defined(FSQD_HAVE_NEON)
constexpr KernelTable kNeon{"neon",     Backend::Neon, neon::cdot,
                            neon::dotu, neon::norm2,   neon::axpy,
                            neon::cmul, neon::matvec};
#endif

bool cpu_has_avx2() {
#if defined(FSQD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable *widest() {
    for (auto backend : {Backend::Avx2, Backend::Neon}) {
        if (const auto *table = backend_kernels(backend)) {
            return table;
        }
    }
    return &kScalar;
}

const KernelTable *initial_table() {
    const char *env = std::getenv("FSQD_SIMD");
    if (env == nullptr || std::string_view(env).empty() ||
        std::string_view(env) == "auto") {
        return widest();
    }
    const auto *table = backend_kernels(parse_backend(env));
    if (table == nullptr) {
        throw std::invalid_argument(std::string("FSQD_SIMD backend '") + env +
                                    "' is not available on this machine");
    }
    return table;
}

std::atomic<const KernelTable *> &active_slot() {
    static std::atomic<const KernelTable *> slot{initial_table()};
    return slot;
}

inline const double *raw(std::span<const cplx> s) {
    return reinterpret_cast<const double *>(s.data());
}
inline double *raw(std::span<cplx> s) { return reinterpret_cast<double *>(s.data()); }

void require(bool ok, const char *what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

} // namespace

const KernelTable &scalar_kernels() { return kScalar; }

const KernelTable *backend_kernels(Backend backend) {
    switch (backend) {
    case Backend::Scalar:
        return &kScalar;
    case Backend::Avx2:
#if defined(FSQD_HAVE_AVX2)
        return cpu_has_avx2() ? &kAvx2 : nullptr;
#else
        return nullptr;
#endif
    case Backend::Neon:
#if defined(FSQD_HAVE_NEON)
        return &kNeon;
#else
        return nullptr;
#endif
    }
    return nullptr;
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    for (auto backend : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
        if (backend_kernels(backend) != nullptr) {
            out.push_back(backend);
        }
    }
    return out;
}

const KernelTable &active() { return *active_slot().load(std::memory_order_acquire); }

void select_backend(Backend backend) {
    const auto *table = backend_kernels(backend);
    if (table == nullptr) {
        throw std::invalid_argument(std::string("SIMD backend '") +
                                    std::string(backend_name(backend)) +
                                    "' is not available on this machine");
    }
    active_slot().store(table, std::memory_order_release);
}

Backend parse_backend(std::string_view name) {
    if (name == "scalar") {
        return Backend::Scalar;
    }
    if (name == "avx2") {
        return Backend::Avx2;
    }
    if (name == "neon") {
        return Backend::Neon;
    }
    throw std::invalid_argument("unknown SIMD backend '" + std::string(name) +
                                "' (expected scalar, avx2 or neon)");
}

std::string_view backend_name(Backend backend) {
    switch (backend) {
    case Backend::Scalar:
        return "scalar";
    case Backend::Avx2:
        return "avx2";
    case Backend::Neon:
        return "neon";
    }
    return "unknown";
}

cplx cdot(std::span<const cplx> a, std::span<const cplx> b) {
    require(a.size() == b.size(), "cdot: length mismatch");
    double out[2];
    active().cdot(raw(a), raw(b), a.size(), out);
    return {out[0], out[1]};
}

cplx dotu(std::span<const cplx> a, std::span<const cplx> b) {
    require(a.size() == b.size(), "dotu: length mismatch");
    double out[2];
    active().dotu(raw(a), raw(b), a.size(), out);
    return {out[0], out[1]};
}

double norm2(std::span<const cplx> a) { return active().norm2(raw(a), a.size()); }

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    require(x.size() == y.size(), "axpy: length mismatch");
    active().axpy(alpha.real(), alpha.imag(), raw(x), raw(y), x.size());
}

void cmul(std::span<const cplx> x, std::span<const cplx> p, std::span<cplx> z) {
    require(x.size() == p.size() && x.size() == z.size(), "cmul: length mismatch");
    active().cmul(raw(x), raw(p), raw(z), x.size());
}

void matvec(std::span<const cplx> m, std::span<const cplx> x, std::span<cplx> y) {
    require(x.size() == y.size() && m.size() == x.size() * x.size(),
            "matvec: shape mismatch");
    active().matvec(raw(m), raw(x), raw(y), x.size());
}

} // namespace fsqd::simd
