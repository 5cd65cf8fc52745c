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

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qreset/random.hpp"

namespace qreset {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using ProbabilityVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tolerance {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositivity = 1e-10;
inline constexpr double kOrthonormal = 1e-10;
/// Largest allowed |sum(p) - 1| before the probability vector is rejected.
inline constexpr double kProbabilityDrift = 1e-9;
/// Negative probabilities down to -kNegativeClamp are clamped to zero.
inline constexpr double kNegativeClamp = 1e-9;
}  // namespace tolerance

bool all_finite(const Operator& op);
double hermiticity_defect(const Operator& op);

/// Hermitian, unit-trace, positive semidefinite operator. Validated on construction.
class DensityMatrix {
public:
    explicit DensityMatrix(Operator op);

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(Index dim);

    const Operator& op() const { return op_; }
    Index dim() const { return op_.rows(); }

private:
    Operator op_;
};

/// Orthonormal, non-degenerate measurement basis; column i holds |m_i>.
class MeasurementBasis {
public:
    explicit MeasurementBasis(Operator vectors);

    static MeasurementBasis computational(Index dim);
    /// |m_+> = cos(theta/2)|0> + sin(theta/2)|1>, |m_-> = -sin(theta/2)|0> + cos(theta/2)|1>.
    /// Index 0 is |m_+>, index 1 is |m_->.
    static MeasurementBasis qubit(double theta);

    Index dim() const { return vectors_.cols(); }
    const Operator& vectors() const { return vectors_; }
    StateVector vector(Index i) const { return vectors_.col(i); }
    Operator projector(Index i) const;

private:
    Operator vectors_;
};

/// Clamps tiny negatives, validates the total, and renormalizes.
/// Throws NumericalError when an entry is below -kNegativeClamp or the sum
/// drifts from one by more than kProbabilityDrift.
ProbabilityVector sanitize_probabilities(ProbabilityVector raw);

/// p_i = <m_i|rho|m_i>, sanitized.
ProbabilityVector born_probabilities(const DensityMatrix& rho, const MeasurementBasis& basis);

/// Inverse-CDF draw: the smallest i whose cumulative probability exceeds u.
std::size_t sample_index(const ProbabilityVector& probabilities, double u);

struct CollapseResult {
    std::size_t index;
    DensityMatrix state;
};

CollapseResult collapse(const DensityMatrix& rho, const MeasurementBasis& basis, RandomStream& rng);

// Frequently used operators.
Operator pauli_z();
/// sigma_- = |1><0| with sigma_z|0> = |0>.
Operator sigma_minus();
/// x component of the spin-(dim-1)/2 operator in the S_z eigenbasis ordered m = j, j-1, ..., -j.
Operator spin_x(Index dim);

}  // namespace qreset
