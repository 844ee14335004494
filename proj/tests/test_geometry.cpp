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

#include <catch_amalgamated.hpp>

#include <numbers>

#include "fsqd/dynamics.hpp"
#include "fsqd/errors.hpp"
#include "fsqd/geometry.hpp"
#include "fsqd/random.hpp"

#include "oracle.hpp"
#include "test_support.hpp"

using namespace fsqd;
using namespace fsqd::test;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

// Random unitary V from the eigenvectors of a random Hermitian matrix.
std::vector<cplx> random_unitary(std::size_t n, std::mt19937_64 &rng) {
    const auto h = random_hermitian(n, rng);
    const auto v = h.eigenvectors();
    return {v.begin(), v.end()};
}

StateVector apply(const std::vector<cplx> &u, const StateVector &psi) {
    const std::size_t n = psi.dim();
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            out[i] += u[i * n + k] * psi[k];
        }
    }
    return StateVector(std::move(out));
}

} // namespace

TEST_CASE("fs_distance examples", "[geometry]") {
    const auto e1 = state({1, 0});
    const auto e2 = state({0, 1});
    const auto plus = state({kInvSqrt2, kInvSqrt2});
    CHECK(fs_distance(Ray(e1), Ray(e1)) == 0.0);
    CHECK(fs_distance(Ray(e1), Ray(e2)) == kPi / 2);
    const double want = static_cast<double>(oracle::fs_distance(e1.amplitudes(), plus.amplitudes()));
    CHECK_THAT(want, WithinAbs(kPi / 4, 1e-15));
    CHECK_THAT(fs_distance(Ray(e1), Ray(plus)), WithinAbs(want, 1e-15));
}

TEST_CASE("fs_distance accepts unnormalized representatives", "[geometry]") {
    CHECK_THAT(fs_distance(state({3, 0}), state({cplx(0, 2), cplx(0, 2)})), WithinAbs(kPi / 4, 1e-15));
    CHECK(fs_distance(state({1, 1}), state({cplx(0, 5), cplx(0, 5)})) == 0.0);
    CHECK_THROWS_AS(fs_distance(state({1, 0}), state({1, 0, 0})), DimensionError);
}

TEST_CASE("fs_distance agrees with the long double oracle", "[geometry][oracle]") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 15;
        const auto a = random_state(n, rng);
        const auto b = random_state(n, rng);
        const double want = static_cast<double>(oracle::fs_distance(a.amplitudes(), b.amplitudes()));
        CHECK_THAT(fs_distance(a, b), WithinAbs(want, 1e-13));
    }
}

TEST_CASE("fs_distance is a metric on rays", "[geometry][property]") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 15;
        const auto a = random_state(n, rng);
        const auto b = random_state(n, rng);
        const auto c = random_state(n, rng);
        const double ab = fs_distance(a, b);
        CHECK(ab == fs_distance(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= kPi / 2);
        CHECK(ab <= fs_distance(a, c) + fs_distance(c, b) + 1e-9);
        CHECK(fs_distance(a, a.scaled(random_phase(rng) * 3.0)) < 1e-9);
        CHECK_THAT(fs_distance(a.scaled(random_phase(rng) * 0.2), b), WithinAbs(ab, 1e-12));
    }
}

TEST_CASE("identity of indiscernibles", "[geometry][property]") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_state(2 + trial % 7, rng);
        const auto alpha = random_phase(rng);
        const auto b = a.scaled(alpha);
        CHECK(fs_distance(a, b) < 1e-9);
        CHECK(rays_equal(Ray(a), Ray(b)));

        auto shifted = std::vector<cplx>(a.amplitudes().begin(), a.amplitudes().end());
        shifted[0] += 1e-6;
        const auto c = StateVector(std::move(shifted));
        CHECK(fs_distance(a, c) > 1e-9);
        CHECK_FALSE(rays_equal(Ray(a), Ray(c)));
    }
}

TEST_CASE("fs_distance resolves nearly identical rays", "[geometry]") {
    // Rotation by a small angle eps in the (e1, e2) plane has distance eps.
    for (double eps : {1e-4, 1e-6, 1e-8, 1e-10}) {
        const auto a = state({1, 0, 0});
        const auto b = state({std::cos(eps), std::sin(eps) * cplx(0, 1), 0});
        CHECK_THAT(fs_distance(a, b), WithinRel(eps, 1e-6));
    }
}

TEST_CASE("fs_distance is unitarily invariant", "[geometry][property]") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 15;
        const auto u = random_unitary(n, rng);
        const auto a = random_state(n, rng);
        const auto b = random_state(n, rng);
        CHECK_THAT(fs_distance(apply(u, a), apply(u, b)), WithinAbs(fs_distance(a, b), 1e-10));
    }
}

TEST_CASE("fs_rate examples", "[geometry]") {
    const auto h = diag({0, 1});
    CHECK(fs_rate(state({1, 0}), h) == 0.0);
    const auto plus = state({kInvSqrt2, kInvSqrt2});
    CHECK_THAT(fs_rate(plus, h), WithinAbs(0.5, 1e-15));
    CHECK_THAT(fs_rate(plus, h.scaled(2.0)), WithinAbs(2 * fs_rate(plus, h), 1e-15));
    CHECK_THAT(fs_rate(plus, h, PhysicalConstants(4.0)), WithinAbs(0.125, 1e-15));
}

TEST_CASE("finite-difference distance converges to fs_rate", "[geometry][property]") {
    std::mt19937_64 rng(71);
    const std::array<double, 3> deltas{1e-3, 1e-4, 1e-5};
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const auto h = random_hermitian(n, rng);
        const auto psi = random_state(n, rng);
        const double rate = fs_rate(psi, h);
        std::array<double, 3> err{};
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            const double d = deltas[i];
            err[i] = std::abs(fs_distance(psi, evolve_exact(psi, h, d)) / d - rate);
        }
        INFO("trial " << trial << " errors " << err[0] << " " << err[1] << " " << err[2]);
        const double slope = std::log10(err[0] / err[2]) / 2.0;
        // Nearly geodesic qubits sit at the rounding floor (about eps / delta)
        // for every delta, where the slope carries no information.
        const bool at_floor = std::ranges::max(err) < 1e-9;
        if (at_floor && slope < 0.9) {
            WARN("trial " << trial << " converged to rounding at every delta");
        }
        CHECK((slope >= 0.9 || at_floor));
        CHECK(err[2] <= 1e-4 * (1 + rate));
    }
}

TEST_CASE("path_length examples", "[geometry]") {
    const auto h = diag({0, 1});
    const auto sched = HamiltonianSchedule::constant(h);

    const auto still = sample_trajectory(state({0, 1}), h, 3.0, 10);
    const auto r0 = path_length(still, sched);
    CHECK(r0.length <= 1e-15);
    CHECK(r0.endpoint_distance <= 1e-15);

    const auto geo = sample_trajectory(state({kInvSqrt2, kInvSqrt2}), h, 1.0, 1024);
    const auto r1 = path_length(geo, sched);
    CHECK_THAT(r1.length, WithinAbs(0.5, 1e-12));
    // Closed-form end state (1, e^{-i}) / sqrt2 under the oracle distance.
    const std::vector<cplx> end{kInvSqrt2, kInvSqrt2 * std::exp(cplx(0, -1))};
    const std::vector<cplx> start{kInvSqrt2, kInvSqrt2};
    CHECK_THAT(r1.endpoint_distance,
               WithinAbs(static_cast<double>(oracle::fs_distance(start, end)), 1e-12));
    CHECK_THAT(r1.endpoint_distance, WithinAbs(0.5, 1e-12));
    CHECK(r1.deficit <= 1e-6);
    CHECK(r1.deficit >= -1e-9);
}

TEST_CASE("path_length dominates the endpoint distance", "[geometry][property]") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const auto h = random_hermitian(n, rng);
        const auto psi = random_state(n, rng);
        const auto traj = sample_trajectory(psi, h, 2.0, 200);
        const auto r = path_length(traj, HamiltonianSchedule::constant(h));
        CHECK(r.deficit >= -1e-9);
        CHECK(r.deficit == r.length - r.endpoint_distance);
        CHECK_THAT(r.length, WithinAbs(2.0 * energy_uncertainty(h, psi), 1e-10));
    }
}

TEST_CASE("path_length quadrature converges to t dH / hbar", "[geometry]") {
    // Stepped evolution of a sweep: the integrand varies in time, so the
    // trapezoid error shrinks at second order under refinement.
    const auto sched = HamiltonianSchedule::sampled(
        {{0.0, matrix2(1, 0, 0, -1)}, {1.0, matrix2(0, 1, 1, 0)}});
    const auto psi = state({0.8, 0.6});
    const auto reference = path_length(evolve_schedule(psi, sched, 1.0, 8192), sched).length;
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t steps : {16u, 32u, 64u, 128u}) {
        const double err =
            std::abs(path_length(evolve_schedule(psi, sched, 1.0, steps), sched).length - reference);
        CHECK(err < previous);
        previous = err;
    }

    const auto h = diag({0, 1, 3});
    const auto three = state({0.6, 0.0, 0.8});
    const double analytic = 2.0 * energy_uncertainty(h, three);
    for (std::size_t steps : {2u, 17u, 400u}) {
        const auto r = path_length(sample_trajectory(three, h, 2.0, steps),
                                   HamiltonianSchedule::constant(h));
        CHECK_THAT(r.length, WithinAbs(analytic, 1e-12));
    }
}

TEST_CASE("path_length preconditions", "[geometry]") {
    const auto h = diag({0, 1});
    const Trajectory single({0.0}, {state({1, 0})});
    CHECK_THROWS_AS(path_length(single, HamiltonianSchedule::constant(h)), InputError);
    const auto traj = sample_trajectory(state({1, 0}), h, 1.0, 4);
    CHECK_THROWS_AS(path_length(traj, HamiltonianSchedule::constant(diag({0, 1, 2}))),
                    DimensionError);
    CHECK_THROWS_AS(Trajectory({0.0, 0.0}, {state({1, 0}), state({1, 0})}), InputError);
    CHECK_THROWS_AS(Trajectory({1.0, 0.5}, {state({1, 0}), state({1, 0})}), InputError);
}
