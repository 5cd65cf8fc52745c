// Copyright 2026 The qreset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qreset/errors.hpp"
#include "qreset/evolution.hpp"
#include "qreset/timing.hpp"
#include "support/models.hpp"

using namespace qreset;

namespace {

QuantumEvolution amplitude_damping_kraus(double kappa) {
    return QuantumEvolution::kraus(2, [kappa](double t) {
        const double g = 1.0 - std::exp(-kappa * t);
        Operator a0 = Operator::Zero(2, 2);
        a0(0, 0) = std::sqrt(1.0 - g);
        a0(1, 1) = 1.0;
        Operator a1 = Operator::Zero(2, 2);
        a1(1, 0) = std::sqrt(g);
        return std::vector<Operator>{a0, a1};
    });
}

}  // namespace

TEST_CASE("propagator at t = 0 is the identity superoperator") {
    testing::Rng rng(21);
    for (const auto& ev : {testing::qubit_unitary(1.3), testing::qubit_decay(0.7, 0.4),
                           testing::random_lindblad(3, rng, false)}) {
        const auto p = ev.propagator(0.0);
        const Index d = ev.dim() * ev.dim();
        CHECK((p.superoperator() - Operator::Identity(d, d)).norm() < 1e-12);
        const auto rho = DensityMatrix::pure(testing::random_unitary(ev.dim(), rng).col(0));
        CHECK((ev.apply(rho, 0.0).op() - rho.op()).norm() < 1e-12);
    }
}

TEST_CASE("energy eigenstate is stationary under the unitary qubit") {
    const auto ev = testing::qubit_unitary(1.7);
    StateVector zero = StateVector::Zero(2);
    zero(0) = 1.0;
    const auto rho = DensityMatrix::pure(zero);
    for (double t : {0.1, 1.0, 3.3, 50.0}) {
        CHECK((ev.apply(rho, t).op() - rho.op()).norm() < 1e-12);
    }
}

TEST_CASE("dephasing damps coherences with the closed-form rate") {
    const double omega = 1.3;
    const double kappa = 0.4;
    const auto ev = testing::qubit_dephasing(omega, kappa);
    const auto rho = DensityMatrix::pure(MeasurementBasis::qubit(1.0).vector(0));
    for (double t : {0.2, 1.0, 2.5}) {
        const Operator out = ev.apply(rho, t).op();
        const Complex expected = rho.op()(0, 1) * std::exp(Complex(-2.0 * kappa * t, -omega * t));
        CHECK(std::abs(out(0, 1) - expected) < 1e-12);
        CHECK(std::abs(out(0, 0) - rho.op()(0, 0)) < 1e-12);
    }
}

TEST_CASE("decay depletes the upper population exponentially") {
    const double kappa = 0.8;
    const auto ev = testing::qubit_decay(1.1, kappa);
    StateVector zero = StateVector::Zero(2);
    zero(0) = 1.0;
    for (double t : {0.0, 0.3, 1.0, 4.0}) {
        const Operator out = ev.apply(DensityMatrix::pure(zero), t).op();
        CHECK(std::abs(out(0, 0).real() - std::exp(-kappa * t)) < 1e-12);
    }
}

TEST_CASE("Kraus amplitude damping agrees with the decay Lindbladian") {
    const double kappa = 0.6;
    const auto lind = QuantumEvolution::lindblad(Operator::Zero(2, 2), {{kappa, sigma_minus()}});
    const auto kr = amplitude_damping_kraus(kappa);
    const auto rho = DensityMatrix::pure(MeasurementBasis::qubit(0.8).vector(1));
    for (double t : {0.1, 0.9, 3.0}) {
        CHECK((lind.apply(rho, t).op() - kr.apply(rho, t).op()).norm() < 1e-12);
    }
    CHECK_THROWS(kr.generator());
}

TEST_CASE("incomplete Kraus families are rejected") {
    const auto bad = QuantumEvolution::kraus(2, [](double) {
        return std::vector<Operator>{0.9 * Operator::Identity(2, 2)};
    });
    CHECK_THROWS(bad.propagator(1.0));
}

TEST_CASE("qutrit evolution matches a direct matrix exponential") {
    const double omega = 1.0;
    const Operator h = omega * spin_x(3);
    const auto ev = QuantumEvolution::unitary(h);
    const auto basis = MeasurementBasis::computational(3);
    const auto rho = DensityMatrix::pure(basis.vector(0));
    for (double t : {0.1, 0.77, 2.0, 5.3}) {
        const Operator out = ev.apply(rho, t).op();
        for (Index i = 0; i < 3; ++i) {
            const double direct = testing::brute_unitary_probability(h, basis, i, t, 0);
            CHECK(std::abs(out(i, i).real() - direct) < 1e-12);
            CHECK(std::abs(ev.transition_probability(i, t, 0, basis) - direct) < 1e-12);
        }
    }
}

TEST_CASE("unitary qubit transition probability") {
    const double omega = 1.4;
    const auto ev = testing::qubit_unitary(omega);
    for (double theta : {0.2, 1.0, std::numbers::pi / 2, 2.7}) {
        const auto basis = MeasurementBasis::qubit(theta);
        const TransitionKernel kernel(ev, basis);
        for (int k = 0; k <= 40; ++k) {
            const double t = 0.25 * k;
            const double formula = std::pow(std::sin(theta) * std::sin(omega * t / 2), 2);
            const double brute = testing::brute_unitary_probability(ev.hamiltonian(), basis, 1, t, 0);
            CHECK(std::abs(brute - formula) < 1e-12);
            CHECK(std::abs(ev.transition_probability(1, t, 0, basis) - formula) < 1e-12);
            CHECK(std::abs(kernel.probability(1, t, 0) - formula) < 1e-12);
        }
    }
}

TEST_CASE("transition kernel columns are probability vectors") {
    testing::Rng rng(8);
    for (int trial = 0; trial < 6; ++trial) {
        const Index n = 2 + trial % 3;
        const bool unital = trial % 2 == 0;
        const auto ev = testing::random_lindblad(n, rng, unital);
        const TransitionKernel kernel(ev, testing::random_basis(n, rng));
        CHECK((kernel.matrix(0.0) - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-10);
        for (double t : {0.05, 0.7, 3.0, 12.0}) {
            const Eigen::MatrixXd p = kernel.matrix(t);
            CHECK((p.colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
            CHECK(p.minCoeff() >= 0.0);
            if (unital) {
                CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-9);
            }
            for (Index j = 0; j < n; ++j) {
                for (Index i = 0; i < n; ++i) {
                    CHECK(std::abs(p(i, j) - ev.transition_probability(i, t, j, kernel.basis())) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("unitality classification") {
    const auto grid = default_unitality_grid(1.0);
    CHECK(grid.size() == 64);
    CHECK(grid.front() == doctest::Approx(0.01));
    CHECK(grid.back() == doctest::Approx(20.0));
    CHECK(is_unital(testing::qubit_unitary(1.0), grid));
    CHECK(is_unital(testing::qutrit_sx(1.0), grid));
    CHECK(is_unital(testing::qubit_dephasing(1.0, 0.5), grid));
    CHECK_FALSE(is_unital(testing::qubit_decay(1.0, 0.5), grid));
    testing::Rng rng(99);
    CHECK(is_unital(testing::random_lindblad(4, rng, true), grid));
    CHECK_FALSE(is_unital(testing::random_lindblad(4, rng, false), grid));
}

TEST_CASE("Lindblad propagators form valid channels") {
    testing::Rng rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = 2 + trial % 4;
        const auto ev = testing::random_lindblad(n, rng, trial % 2 == 0, 3);
        for (double t : {0.3, 2.0}) {
            const auto p = ev.propagator(t);
            CHECK(p.trace_defect() < 1e-9);
            CHECK(p.min_choi_eigenvalue() > -1e-8);
        }
        CHECK(semigroup_defect(ev, 0.4, 1.1) < 1e-8);
    }
}

TEST_CASE("exponential average closed form agrees with quadrature") {
    testing::Rng rng(77);
    const double tau = 0.9;
    const auto dist = MeasurementTimeDistribution::exponential(tau);
    for (int trial = 0; trial < 4; ++trial) {
        const Index n = 2 + trial;
        const TransitionKernel kernel(testing::random_lindblad(n, rng, trial % 2 == 1),
                                      testing::random_basis(n, rng));
        const auto closed = kernel.exponential_average(tau);
        REQUIRE(closed.has_value());
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < n; ++i) {
                CHECK(std::abs((*closed)(i, j) - averaged_transition(dist, kernel, i, j)) < 1e-8);
            }
        }
    }
}

TEST_CASE("invalid evolutions are rejected") {
    Operator nonherm = Operator::Zero(2, 2);
    nonherm(0, 1) = 1.0;
    CHECK_THROWS_AS(QuantumEvolution::unitary(nonherm), InvalidArgument);
    CHECK_THROWS_AS(QuantumEvolution::lindblad(pauli_z(), {{-1.0, sigma_minus()}}), InvalidArgument);
    CHECK_THROWS_AS(QuantumEvolution::lindblad(pauli_z(), {{1.0, Operator::Identity(3, 3)}}), InvalidArgument);
    CHECK_THROWS(testing::qubit_unitary(1.0).propagator(-1.0));
}
