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

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qreset/quantum_core.hpp"

namespace qreset {

/// One Lindblad dissipation channel: rate kappa_k >= 0 and jump operator J_k.
struct Dissipator {
    double rate = 0.0;
    Operator jump;
};

/// Time-indexed Kraus operators A_k(t).
using KrausTable = std::function<std::vector<Operator>(double)>;

enum class EvolutionKind { Unitary, Lindblad, Kraus };

/// Matrix form of a channel acting on column-stacked density matrices,
/// vec(X)[a + b*N] = X(a, b).
class Propagator {
public:
    Propagator(Operator superoperator, double time);

    Index dim() const { return dim_; }
    double time() const { return time_; }
    const Operator& superoperator() const { return superop_; }

    Operator apply(const Operator& x) const;
    /// sum_{ab} |a><b| (x) E(|a><b|)
    Operator choi() const;
    double min_choi_eigenvalue() const;
    /// max_k |Tr E(e_k) - Tr e_k| over the matrix units e_k.
    double trace_defect() const;

private:
    Operator superop_;
    Index dim_;
    double time_;
};

/// A time-homogeneous quantum evolution E(t). Immutable and cheap to copy;
/// spectral data for the generator is computed once on construction.
class QuantumEvolution {
public:
    static QuantumEvolution unitary(Operator hamiltonian);
    static QuantumEvolution lindblad(Operator hamiltonian, std::vector<Dissipator> dissipators);
    /// Kraus families are not assumed to form a semigroup.
    static QuantumEvolution kraus(Index dim, KrausTable table);

    EvolutionKind kind() const;
    Index dim() const;
    const Operator& hamiltonian() const;
    const std::vector<Dissipator>& dissipators() const;

    /// Vectorized Lindbladian
    ///   -i(I(x)H - H^T(x)I) + sum_k kappa_k (conj(J)(x)J - 1/2 I(x)J^dag J - 1/2 (J^dag J)^T(x)I).
    /// Not available for Kraus families.
    Operator generator() const;

    /// True when the generator (or the Hamiltonian) has a usable eigendecomposition.
    bool has_spectral_form() const;

    Propagator propagator(double t) const;
    Operator apply_operator(const Operator& x, double t) const;
    DensityMatrix apply(const DensityMatrix& rho, double t) const;
    double transition_probability(Index i, double t, Index j, const MeasurementBasis& basis) const;

    struct Spectral;

private:
    friend class TransitionKernel;
    struct State;
    explicit QuantumEvolution(std::shared_ptr<const State> state);
    std::shared_ptr<const State> state_;
};

/// Fast evaluation of p(i, t | j) for one evolution and one measurement basis.
class TransitionKernel {
public:
    TransitionKernel(QuantumEvolution evolution, MeasurementBasis basis);

    const QuantumEvolution& evolution() const { return evolution_; }
    const MeasurementBasis& basis() const { return basis_; }
    Index dim() const { return basis_.dim(); }

    /// p(., t | j), sanitized like born_probabilities.
    ProbabilityVector column(double t, Index j) const;
    /// Entry (i, j) = p(i, t | j).
    Eigen::MatrixXd matrix(double t) const;
    /// Single entry, clamped to [0, 1].
    double probability(Index i, double t, Index j) const;

    /// Closed-form a(i|j) for the exponential density of mean tau, available on
    /// the spectral path only: sum_k R_ik C_kj / (1 - lambda_k tau).
    std::optional<Eigen::MatrixXd> exponential_average(double tau) const;

private:
    Eigen::VectorXd raw_column(double t, Index j) const;

    QuantumEvolution evolution_;
    MeasurementBasis basis_;
    Operator projectors_;  // column i = vec(|m_i><m_i|)
    // Unitary path: amplitudes <n|m_j> in the energy basis.
    Operator energy_overlaps_;
    // Lindblad path: readout R = P^dag V, coefficients C = V^{-1} P.
    Operator readout_;
    Operator coefficients_;
};

double clamp_probability(double p);

/// max_t max|E(t)[1] - 1| <= tol over the sampled times.
bool is_unital(const QuantumEvolution& evolution, std::span<const double> t_samples, double tol = 1e-8);

/// 64 log-spaced points over [tau/100, 20 tau].
std::vector<double> default_unitality_grid(double tau);

/// max entrywise |P(t1 + t2) - P(t1) P(t2)|.
double semigroup_defect(const QuantumEvolution& evolution, double t1, double t2);

}  // namespace qreset
