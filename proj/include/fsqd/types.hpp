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
 * Value types for pure states and Hermitian operators: StateVector, Ray,
 * HermitianOperator and PhysicalConstants, plus the elementary operations
 * on them (inner product, normalization, moments, spectral decomposition).
 */

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace fsqd {

using cplx = std::complex<double>;

/// |<psi|psi> - 1| accepted at API boundaries.
inline constexpr double kNormTolerance = 1e-9;
/// Relative Hermiticity tolerance, scaled by max(1, max |M_ij|).
inline constexpr double kHermiticityTolerance = 1e-10;
/// Amplitudes below this fraction of the largest one are skipped when
/// choosing the gauge component.
inline constexpr double kGaugeThreshold = 1e-12;

/**
 * Complex amplitude vector z_1..z_N in the coordinate basis.
 *
 * Construction rejects N < 2 and the zero vector. Normalization is not
 * enforced here; operations that need a unit vector check it against
 * kNormTolerance and callers opt into rescaling through normalize().
 */
class StateVector {
  public:
    explicit StateVector(std::vector<cplx> amplitudes);

    /// Basis state e_index (zero-based).
    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
    const cplx &operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;
    bool is_normalized(double tol = kNormTolerance) const;

    /// alpha * this; alpha must be nonzero.
    StateVector scaled(cplx alpha) const;

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    std::vector<cplx> amplitudes_;
};

/// sum_i conj(a_i) b_i. Throws DimensionError on mismatch.
cplx inner_product(const StateVector &a, const StateVector &b);

/// Unit vector parallel to v.
StateVector normalize(const StateVector &v);

/// Throws NormalizationError when |<v|v> - 1| > kNormTolerance.
void require_normalized(const StateVector &v, std::string_view context);

/// Throws DimensionError naming both dimensions.
void require_same_dim(std::size_t a, std::size_t b, std::string_view context);

/**
 * Projective class [z] of a state. The representative is normalized and
 * gauge-fixed: its first non-negligible amplitude is real and positive.
 */
class Ray {
  public:
    explicit Ray(const StateVector &v);

    const StateVector &representative() const noexcept { return representative_; }
    std::size_t dim() const noexcept { return representative_.dim(); }
    std::size_t gauge_index() const noexcept { return gauge_index_; }

  private:
    StateVector representative_;
    std::size_t gauge_index_;
};

/// Componentwise comparison of gauge-fixed representatives.
bool rays_equal(const Ray &a, const Ray &b, double tol = 1e-12);

class PhysicalConstants {
  public:
    PhysicalConstants() = default;
    /// Throws InputError unless hbar is finite and positive.
    explicit PhysicalConstants(double hbar);

    double hbar() const noexcept { return hbar_; }

  private:
    double hbar_ = 1.0;
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;       // ascending
    std::vector<StateVector> eigenvectors; // orthonormal, gauge-fixed
};

/**
 * Dense N x N Hermitian matrix with its eigendecomposition.
 *
 * Instances are immutable and share their storage, so copies are cheap
 * and safe to hand across threads. The spectrum is computed once at
 * construction.
 */
class HermitianOperator {
  public:
    /// Validates ||M - M^dagger||_max against kHermiticityTolerance and stores
    /// (M + M^dagger)/2. Throws HermiticityError on failure.
    static HermitianOperator from_matrix(std::size_t dim, std::vector<cplx> row_major);
    static HermitianOperator diagonal(std::span<const double> entries);
    static HermitianOperator identity(std::size_t dim);
    static HermitianOperator zero(std::size_t dim);

    std::size_t dim() const noexcept;
    cplx operator()(std::size_t row, std::size_t col) const;
    std::span<const cplx> matrix() const noexcept;
    double max_abs() const noexcept;

    std::span<const double> eigenvalues() const noexcept;
    /// Row-major V with eigenvectors as columns.
    std::span<const cplx> eigenvectors() const noexcept;
    /// Row-major V^dagger.
    std::span<const cplx> eigenvectors_adjoint() const noexcept;
    StateVector eigenvector(std::size_t k) const;

    /// H x
    std::vector<cplx> apply(std::span<const cplx> x) const;

    HermitianOperator scaled(double factor) const;
    /// H + shift * I
    HermitianOperator shifted(double shift) const;

  private:
    struct Data;
    explicit HermitianOperator(std::shared_ptr<const Data> data);
    std::shared_ptr<const Data> data_;
};

/// (1 - weight) a + weight b
HermitianOperator interpolate(const HermitianOperator &a, const HermitianOperator &b,
                              double weight);

SpectralDecomposition spectral_decomposition(const HermitianOperator &h);

/// <psi|H|psi> for normalized psi.
double expectation(const HermitianOperator &h, const StateVector &psi);

/// Standard deviation of H in psi, sqrt(<H^2> - <H>^2), evaluated as the
/// residual norm ||(H - <H>) psi|| so eigenstates give exactly-small values.
double energy_uncertainty(const HermitianOperator &h, const StateVector &psi);

} // namespace fsqd
