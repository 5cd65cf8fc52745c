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
#include "qreset/quantum_core.hpp"
#include "support/models.hpp"

using namespace qreset;

TEST_CASE("born probabilities of a basis projector") {
    testing::Rng rng(11);
    const auto basis = testing::random_basis(4, rng);
    const auto p = born_probabilities(DensityMatrix::pure(basis.vector(0)), basis);
    CHECK(p(0) == doctest::Approx(1.0).epsilon(1e-12));
    for (Index i = 1; i < 4; ++i) {
        CHECK(std::abs(p(i)) < 1e-12);
    }
}

TEST_CASE("maximally mixed qubit is basis independent") {
    for (double theta : {0.0, 0.3, 1.2, std::numbers::pi / 2, 2.9}) {
        const auto p = born_probabilities(DensityMatrix::maximally_mixed(2), MeasurementBasis::qubit(theta));
        CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(p(1) == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("half Rabi period flips the qubit measurement outcome") {
    const auto basis = MeasurementBasis::qubit(std::numbers::pi / 2);
    const double omega = 1.0;
    const double t = std::numbers::pi / omega;
    Operator u = Operator::Zero(2, 2);
    u(0, 0) = std::exp(Complex(0.0, -omega * t / 2));
    u(1, 1) = std::exp(Complex(0.0, omega * t / 2));
    const StateVector psi = u * basis.vector(0);
    const auto p = born_probabilities(DensityMatrix::pure(psi), basis);
    CHECK(std::abs(p(0)) < 1e-12);
    CHECK(p(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qubit basis at theta zero is the computational basis") {
    const auto basis = MeasurementBasis::qubit(0.0);
    CHECK((basis.vectors() - Operator::Identity(2, 2)).norm() == 0.0);
    const auto b = MeasurementBasis::qubit(0.7);
    CHECK(std::abs(b.vector(0)(0).real() - std::cos(0.35)) < 1e-15);
    CHECK(std::abs(b.vector(0)(1).real() - std::sin(0.35)) < 1e-15);
    CHECK(std::abs(b.vector(1)(0).real() + std::sin(0.35)) < 1e-15);
}

TEST_CASE("collapse onto a basis state is deterministic") {
    testing::Rng gen(3);
    const auto basis = testing::random_basis(3, gen);
    const auto rho = DensityMatrix::pure(basis.vector(2));
    RandomStream rng(5, 0, 0);
    for (int k = 0; k < 200; ++k) {
        const auto r = collapse(rho, basis, rng);
        CHECK(r.index == 2);
        CHECK((r.state.op() - basis.projector(2)).norm() < 1e-12);
    }
}

TEST_CASE("collapse frequencies follow the Born rule") {
    RandomStream rng(1234, 0, 0);
    SUBCASE("maximally mixed qubit") {
        const auto basis = MeasurementBasis::qubit(0.9);
        const int n = 10000;
        int ones = 0;
        for (int k = 0; k < n; ++k) {
            ones += collapse(DensityMatrix::maximally_mixed(2), basis, rng).index == 1 ? 1 : 0;
        }
        const double se = std::sqrt(0.25 / n);
        CHECK(std::abs(ones / double(n) - 0.5) < 3 * se);
    }
    SUBCASE("dephased state with diagonal (0.25, 0.75)") {
        const auto basis = MeasurementBasis::qubit(1.1);
        Operator op = 0.25 * basis.projector(0) + 0.75 * basis.projector(1);
        const DensityMatrix rho(op);
        const auto expected = born_probabilities(rho, basis);
        CHECK(expected(0) == doctest::Approx(0.25).epsilon(1e-12));
        const int n = 20000;
        double counts[2] = {0, 0};
        for (int k = 0; k < n; ++k) {
            counts[collapse(rho, basis, rng).index] += 1;
        }
        double chi2 = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = n * expected(i);
            chi2 += (counts[i] - e) * (counts[i] - e) / e;
        }
        // 99% quantile of chi-square with one degree of freedom.
        CHECK(chi2 < 6.635);
    }
}

TEST_CASE("sample_index uses the cumulative distribution") {
    ProbabilityVector p(3);
    p << 0.2, 0.0, 0.8;
    CHECK(sample_index(p, 0.0) == 0);
    CHECK(sample_index(p, 0.1999) == 0);
    CHECK(sample_index(p, 0.2) == 2);
    CHECK(sample_index(p, 0.9999999) == 2);
}

TEST_CASE("probability sanitizing") {
    ProbabilityVector ok(2);
    ok << -5e-10, 1.0 + 5e-10;
    const auto s = sanitize_probabilities(ok);
    CHECK(s(0) == 0.0);
    CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-15));

    ProbabilityVector negative(2);
    negative << -1e-6, 1.0 + 1e-6;
    CHECK_THROWS_AS(sanitize_probabilities(negative), NumericalError);

    ProbabilityVector drift(2);
    drift << 0.5, 0.5 + 1e-6;
    CHECK_THROWS_AS(sanitize_probabilities(drift), NumericalError);

    ProbabilityVector nan(2);
    nan << std::nan(""), 1.0;
    CHECK_THROWS(sanitize_probabilities(nan));
}

TEST_CASE("density matrix and basis validation") {
    Operator notrace = Operator::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix{notrace}, InvalidArgument);
    Operator nonherm = Operator::Zero(2, 2);
    nonherm(0, 0) = 1.0;
    nonherm(0, 1) = 0.3;
    CHECK_THROWS_AS(DensityMatrix{nonherm}, InvalidArgument);
    Operator negative = Operator::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{negative}, InvalidArgument);

    Operator skew = Operator::Identity(2, 2);
    skew(0, 1) = 0.1;
    CHECK_THROWS_AS(MeasurementBasis{skew}, InvalidArgument);
}

TEST_CASE("spin operators") {
    const Operator sx = spin_x(3);
    CHECK(hermiticity_defect(sx) < 1e-15);
    CHECK(std::abs(sx(0, 1).real() - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(sx(1, 2).real() - 1.0 / std::sqrt(2.0)) < 1e-15);
    const Eigen::SelfAdjointEigenSolver<Operator> es(sx);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues()(2) == doctest::Approx(1.0));
    const Operator sm = sigma_minus();
    CHECK(sm(1, 0) == Complex(1.0, 0.0));
    CHECK(sm(0, 1) == Complex(0.0, 0.0));
}
