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

#include "qreset/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qreset/errors.hpp"

namespace qreset {

bool all_finite(const Operator& op) {
    return op.array().isFinite().all();
}

double hermiticity_defect(const Operator& op) {
    if (op.rows() != op.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
    if (op_.rows() == 0 || op_.rows() != op_.cols()) {
        throw InvalidArgument("density matrix must be square and non-empty");
    }
    if (!all_finite(op_)) {
        throw InvalidArgument("density matrix has non-finite entries");
    }
    if (hermiticity_defect(op_) > tolerance::kHermitian) {
        throw InvalidArgument("density matrix is not Hermitian");
    }
    if (std::abs(op_.trace() - Complex(1.0)) > tolerance::kTrace) {
        throw InvalidArgument("density matrix trace differs from one");
    }
    const Eigen::SelfAdjointEigenSolver<Operator> eig(op_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tolerance::kPositivity) {
        throw InvalidArgument("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    const StateVector unit = psi.normalized();
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
    return DensityMatrix(Operator::Identity(dim, dim) / static_cast<double>(dim));
}

MeasurementBasis::MeasurementBasis(Operator vectors) : vectors_(std::move(vectors)) {
    if (vectors_.rows() == 0 || vectors_.rows() != vectors_.cols()) {
        throw InvalidArgument("measurement basis needs N vectors of length N");
    }
    if (!all_finite(vectors_)) {
        throw InvalidArgument("measurement basis has non-finite entries");
    }
    const Operator gram = vectors_.adjoint() * vectors_;
    const double defect =
        (gram - Operator::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (defect > tolerance::kOrthonormal) {
        std::ostringstream msg;
        msg << "measurement basis is not orthonormal (max |<m_i|m_j> - delta_ij| = " << defect << ")";
        throw InvalidArgument(msg.str());
    }
}

MeasurementBasis MeasurementBasis::computational(Index dim) {
    return MeasurementBasis(Operator::Identity(dim, dim));
}

MeasurementBasis MeasurementBasis::qubit(double theta) {
    if (!(theta >= 0.0 && theta <= M_PI)) {
        throw InvalidArgument("qubit basis angle must lie in [0, pi]");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Operator v(2, 2);
    v << c, -s,
         s, c;
    return MeasurementBasis(std::move(v));
}

Operator MeasurementBasis::projector(Index i) const {
    return vectors_.col(i) * vectors_.col(i).adjoint();
}

ProbabilityVector sanitize_probabilities(ProbabilityVector p) {
    for (Index i = 0; i < p.size(); ++i) {
        const double v = p[i];
        if (!std::isfinite(v) || v < -tolerance::kNegativeClamp ||
            v > 1.0 + tolerance::kNegativeClamp) {
            std::ostringstream msg;
            msg << "probability " << i << " = " << v << " outside [0, 1]";
            throw NumericalError(msg.str());
        }
        p[i] = std::clamp(v, 0.0, 1.0);
    }
    const double total = p.sum();
    if (std::abs(total - 1.0) > tolerance::kProbabilityDrift) {
        std::ostringstream msg;
        msg << "probabilities sum to " << total << "; evolution is not trace preserving";
        throw NumericalError(msg.str());
    }
    return p / total;
}

ProbabilityVector born_probabilities(const DensityMatrix& rho, const MeasurementBasis& basis) {
    if (rho.dim() != basis.dim()) {
        throw InvalidArgument("state and basis dimensions differ");
    }
    const Operator& m = basis.vectors();
    // diag(M^dagger rho M)
    const Operator rotated = m.adjoint() * rho.op() * m;
    return sanitize_probabilities(rotated.diagonal().real());
}

std::size_t sample_index(const ProbabilityVector& probabilities, double u) {
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (Index i = 0; i < probabilities.size(); ++i) {
        cumulative += probabilities[i];
        if (probabilities[i] > 0.0) {
            last_positive = static_cast<std::size_t>(i);
        }
        if (cumulative > u) {
            return static_cast<std::size_t>(i);
        }
    }
    // Rounding left the total just below u.
    return last_positive;
}

CollapseResult collapse(const DensityMatrix& rho, const MeasurementBasis& basis, RandomStream& rng) {
    const ProbabilityVector p = born_probabilities(rho, basis);
    const std::size_t i = sample_index(p, rng.uniform());
    return {i, DensityMatrix(basis.projector(static_cast<Index>(i)))};
}

Operator pauli_z() {
    Operator z = Operator::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

Operator sigma_minus() {
    Operator s = Operator::Zero(2, 2);
    s(1, 0) = 1.0;
    return s;
}

Operator spin_x(Index dim) {
    if (dim < 1) {
        throw InvalidArgument("spin dimension must be positive");
    }
    const double j = (static_cast<double>(dim) - 1.0) / 2.0;
    Operator sx = Operator::Zero(dim, dim);
    // Row r holds m = j - r; S_+ couples m -> m + 1.
    for (Index r = 1; r < dim; ++r) {
        const double m = j - static_cast<double>(r);
        const double amp = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        sx(r - 1, r) = amp;
        sx(r, r - 1) = amp;
    }
    return sx;
}

}  // namespace qreset
