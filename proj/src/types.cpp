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

#include "fsqd/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "detail.hpp"
#include "fsqd/errors.hpp"
#include "fsqd/simd/kernels.hpp"

namespace fsqd {

using detail::num;

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<cplx> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw DimensionError("state dimension must be at least 2, got " +
                             std::to_string(amplitudes_.size()));
    }
    bool nonzero = false;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        const auto &z = amplitudes_[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InputError("amplitude " + std::to_string(i) + " is not finite");
        }
        nonzero = nonzero || z != cplx{};
    }
    if (!nonzero) {
        throw InputError("the zero vector is not a valid state");
    }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionError("basis index " + std::to_string(index) +
                             " out of range for dimension " + std::to_string(dim));
    }
    std::vector<cplx> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm() const { return std::sqrt(simd::norm2(amplitudes_)); }

bool StateVector::is_normalized(double tol) const {
    return std::abs(simd::norm2(amplitudes_) - 1.0) <= tol;
}

StateVector StateVector::scaled(cplx alpha) const {
    if (alpha == cplx{}) {
        throw InputError("cannot scale a state by zero");
    }
    std::vector<cplx> out(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), out.begin(),
                   [alpha](cplx z) { return alpha * z; });
    return StateVector(std::move(out));
}

void require_same_dim(std::size_t a, std::size_t b, std::string_view context) {
    if (a != b) {
        throw DimensionError(std::string(context) + ": dimension mismatch (" +
                             std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    require_same_dim(a.dim(), b.dim(), "inner_product");
    // <a|a> exactly real.
    if (&a == &b || std::ranges::equal(a.amplitudes(), b.amplitudes())) {
        return {simd::norm2(a.amplitudes()), 0.0};
    }
    return simd::cdot(a.amplitudes(), b.amplitudes());
}

StateVector normalize(const StateVector &v) {
    const double n = v.norm();
    std::vector<cplx> out(v.amplitudes().begin(), v.amplitudes().end());
    for (auto &z : out) {
        z /= n;
    }
    return StateVector(std::move(out));
}

void require_normalized(const StateVector &v, std::string_view context) {
    const double n2 = simd::norm2(v.amplitudes());
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        throw NormalizationError(std::string(context) + ": state is not normalized (norm " +
                                 num(std::sqrt(n2)) + ", <psi|psi> deviates from 1 by " +
                                 num(std::abs(n2 - 1.0)) + ")");
    }
}

// ---------------------------------------------------------------------------
// Ray

namespace {

StateVector gauge_fixed(const StateVector &v, std::size_t &index) {
    const StateVector unit = normalize(v);
    index = detail::gauge_index(unit.amplitudes(), kGaugeThreshold);
    const cplx g = unit[index];
    const cplx phase = std::conj(g) / std::abs(g);
    std::vector<cplx> out(unit.dim());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = unit[i] * phase;
    }
    out[index] = cplx(std::abs(g), 0.0);
    return StateVector(std::move(out));
}

} // namespace

Ray::Ray(const StateVector &v) : representative_(gauge_fixed(v, gauge_index_)) {}

bool rays_equal(const Ray &a, const Ray &b, double tol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    const auto za = a.representative().amplitudes();
    const auto zb = b.representative().amplitudes();
    for (std::size_t i = 0; i < za.size(); ++i) {
        if (std::abs(za[i] - zb[i]) > tol) {
            return false;
        }
    }
    return true;
}

PhysicalConstants::PhysicalConstants(double hbar) : hbar_(hbar) {
    if (!(std::isfinite(hbar) && hbar > 0.0)) {
        throw InputError("hbar must be a positive finite number, got " + num(hbar));
    }
}

// ---------------------------------------------------------------------------
// HermitianOperator

struct HermitianOperator::Data {
    std::size_t dim = 0;
    std::vector<cplx> matrix;
    double max_abs = 0.0;
    std::vector<double> eigenvalues;
    std::vector<cplx> v;  // row-major, eigenvectors in columns
    std::vector<cplx> vh; // row-major adjoint
};

namespace {

using RowMajorMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

} // namespace

HermitianOperator::HermitianOperator(std::shared_ptr<const Data> data)
    : data_(std::move(data)) {}

HermitianOperator HermitianOperator::from_matrix(std::size_t dim, std::vector<cplx> m) {
    if (dim < 2) {
        throw DimensionError("operator dimension must be at least 2, got " +
                             std::to_string(dim));
    }
    if (m.size() != dim * dim) {
        throw DimensionError("operator storage holds " + std::to_string(m.size()) +
                             " entries, expected " + std::to_string(dim * dim));
    }

    double max_abs = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (!std::isfinite(m[k].real()) || !std::isfinite(m[k].imag())) {
            throw InputError("matrix entry (" + std::to_string(k / dim + 1) + "," +
                             std::to_string(k % dim + 1) + ") is not finite");
        }
        max_abs = std::max(max_abs, std::abs(m[k]));
    }

    double worst = 0.0;
    std::size_t worst_row = 0;
    std::size_t worst_col = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            const double dev = std::abs(m[i * dim + j] - std::conj(m[j * dim + i]));
            if (dev > worst) {
                worst = dev;
                worst_row = i;
                worst_col = j;
            }
        }
    }
    if (worst > kHermiticityTolerance * std::max(1.0, max_abs)) {
        throw HermiticityError(
            "matrix is not Hermitian: max |M(i,j) - conj(M(j,i))| = " + num(worst) +
                " at (" + std::to_string(worst_row + 1) + "," +
                std::to_string(worst_col + 1) + ")/(" + std::to_string(worst_col + 1) +
                "," + std::to_string(worst_row + 1) + ")",
            worst, worst_row, worst_col);
    }

    for (std::size_t i = 0; i < dim; ++i) {
        m[i * dim + i] = cplx(m[i * dim + i].real(), 0.0);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cplx sym = 0.5 * (m[i * dim + j] + std::conj(m[j * dim + i]));
            m[i * dim + j] = sym;
            m[j * dim + i] = std::conj(sym);
        }
    }

    auto data = std::make_shared<Data>();
    data->dim = dim;
    data->max_abs = 0.0;
    for (const auto &z : m) {
        data->max_abs = std::max(data->max_abs, std::abs(z));
    }

    const Eigen::Map<const RowMajorMatrix> mapped(m.data(), static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mapped);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    const auto &values = solver.eigenvalues();
    const auto &vectors = solver.eigenvectors();

    data->eigenvalues.assign(values.data(), values.data() + dim);
    data->v.resize(dim * dim);
    data->vh.resize(dim * dim);
    std::vector<cplx> column(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t i = 0; i < dim; ++i) {
            column[i] = vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        }
        const std::size_t g = detail::gauge_index(column, kGaugeThreshold);
        const cplx phase = std::conj(column[g]) / std::abs(column[g]);
        for (std::size_t i = 0; i < dim; ++i) {
            const cplx z = i == g ? cplx(std::abs(column[g]), 0.0) : column[i] * phase;
            data->v[i * dim + k] = z;
            data->vh[k * dim + i] = std::conj(z);
        }
    }
    data->matrix = std::move(m);
    return HermitianOperator(std::move(data));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> entries) {
    const std::size_t n = entries.size();
    std::vector<cplx> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = entries[i];
    }
    return from_matrix(n, std::move(m));
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
    return diagonal(std::vector<double>(dim, 1.0));
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
    return diagonal(std::vector<double>(dim, 0.0));
}

std::size_t HermitianOperator::dim() const noexcept { return data_->dim; }

cplx HermitianOperator::operator()(std::size_t row, std::size_t col) const {
    return data_->matrix.at(row * data_->dim + col);
}

std::span<const cplx> HermitianOperator::matrix() const noexcept { return data_->matrix; }
double HermitianOperator::max_abs() const noexcept { return data_->max_abs; }

std::span<const double> HermitianOperator::eigenvalues() const noexcept {
    return data_->eigenvalues;
}
std::span<const cplx> HermitianOperator::eigenvectors() const noexcept { return data_->v; }
std::span<const cplx> HermitianOperator::eigenvectors_adjoint() const noexcept {
    return data_->vh;
}

StateVector HermitianOperator::eigenvector(std::size_t k) const {
    const std::size_t n = data_->dim;
    if (k >= n) {
        throw DimensionError("eigenvector index " + std::to_string(k) +
                             " out of range for dimension " + std::to_string(n));
    }
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = data_->v[i * n + k];
    }
    return StateVector(std::move(out));
}

std::vector<cplx> HermitianOperator::apply(std::span<const cplx> x) const {
    require_same_dim(data_->dim, x.size(), "HermitianOperator::apply");
    std::vector<cplx> y(x.size());
    simd::matvec(data_->matrix, x, y);
    return y;
}

HermitianOperator HermitianOperator::scaled(double factor) const {
    std::vector<cplx> m(data_->matrix);
    for (auto &z : m) {
        z *= factor;
    }
    return from_matrix(data_->dim, std::move(m));
}

HermitianOperator HermitianOperator::shifted(double shift) const {
    std::vector<cplx> m(data_->matrix);
    for (std::size_t i = 0; i < data_->dim; ++i) {
        m[i * data_->dim + i] += shift;
    }
    return from_matrix(data_->dim, std::move(m));
}

HermitianOperator interpolate(const HermitianOperator &a, const HermitianOperator &b,
                              double weight) {
    require_same_dim(a.dim(), b.dim(), "interpolate");
    const auto ma = a.matrix();
    const auto mb = b.matrix();
    std::vector<cplx> m(ma.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
        m[k] = (1.0 - weight) * ma[k] + weight * mb[k];
    }
    return HermitianOperator::from_matrix(a.dim(), std::move(m));
}

SpectralDecomposition spectral_decomposition(const HermitianOperator &h) {
    SpectralDecomposition out;
    out.eigenvalues.assign(h.eigenvalues().begin(), h.eigenvalues().end());
    out.eigenvectors.reserve(h.dim());
    for (std::size_t k = 0; k < h.dim(); ++k) {
        out.eigenvectors.push_back(h.eigenvector(k));
    }
    return out;
}

double expectation(const HermitianOperator &h, const StateVector &psi) {
    require_same_dim(h.dim(), psi.dim(), "expectation");
    require_normalized(psi, "expectation");
    const auto h_psi = h.apply(psi.amplitudes());
    const cplx value = simd::cdot(psi.amplitudes(), h_psi);
    double scale = 1.0;
    for (double e : h.eigenvalues()) {
        scale = std::max(scale, std::abs(e));
    }
    if (std::abs(value.imag()) > 1e-12 * scale) {
        throw NumericalError("expectation value has imaginary residue " +
                             num(value.imag()));
    }
    return value.real();
}

double energy_uncertainty(const HermitianOperator &h, const StateVector &psi) {
    require_same_dim(h.dim(), psi.dim(), "energy_uncertainty");
    require_normalized(psi, "energy_uncertainty");
    auto residual = h.apply(psi.amplitudes());
    const double mean = simd::cdot(psi.amplitudes(), residual).real();
    simd::axpy(cplx(-mean, 0.0), psi.amplitudes(), residual);
    return std::sqrt(std::max(0.0, simd::norm2(residual)));
}

} // namespace fsqd
