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

#include "qreset/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qreset/errors.hpp"

namespace qreset {

namespace {

// Above this condition number the eigenvector basis of the generator is
// considered unusable and the propagator falls back to Pade exponentials.
constexpr double kMaxEigenvectorCondition = 1e8;
constexpr double kKrausCompleteness = 1e-8;

Eigen::VectorXcd vec(const Operator& x) {
    return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
}

Operator unvec(const Eigen::VectorXcd& v, Index n) {
    return Eigen::Map<const Operator>(v.data(), n, n);
}

void require_square(const Operator& op, const char* what) {
    if (op.rows() == 0 || op.rows() != op.cols()) {
        throw InvalidArgument(std::string(what) + " must be a non-empty square matrix");
    }
    if (!all_finite(op)) {
        throw InvalidArgument(std::string(what) + " has non-finite entries");
    }
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidArgument("evolution time must be finite and non-negative");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Propagator

Propagator::Propagator(Operator superoperator, double time)
    : superop_(std::move(superoperator)), dim_(0), time_(time) {
    const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(superop_.rows()))));
    if (superop_.rows() != superop_.cols() || n * n != superop_.rows()) {
        throw InvalidArgument("superoperator must be N^2 x N^2");
    }
    dim_ = n;
}

Operator Propagator::apply(const Operator& x) const {
    if (x.rows() != dim_ || x.cols() != dim_) {
        throw InvalidArgument("operator dimension does not match the propagator");
    }
    return unvec(superop_ * vec(x), dim_);
}

Operator Propagator::choi() const {
    const Index n = dim_;
    Operator choi = Operator::Zero(n * n, n * n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            // E(|a><b|) is the column a + b n of the superoperator.
            choi.block(a * n, b * n, n, n) = unvec(superop_.col(a + b * n), n);
        }
    }
    return choi;
}

double Propagator::min_choi_eigenvalue() const {
    const Operator c = choi();
    const Operator h = 0.5 * (c + c.adjoint());
    const Eigen::SelfAdjointEigenSolver<Operator> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

double Propagator::trace_defect() const {
    const Index n = dim_;
    double worst = 0.0;
    for (Index k = 0; k < n * n; ++k) {
        Complex tr = 0.0;
        for (Index a = 0; a < n; ++a) {
            tr += superop_(a + a * n, k);
        }
        const double expected = (k % n == k / n) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(tr - expected));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// QuantumEvolution

struct QuantumEvolution::Spectral {
    // Unitary: H = W diag(energies) W^dag.
    Eigen::VectorXd energies;
    Operator energy_vectors;
    // Lindblad: L = V diag(eigenvalues) V^{-1}.
    Eigen::VectorXcd eigenvalues;
    Operator right;
    Operator right_inverse;
};

struct QuantumEvolution::State {
    EvolutionKind kind;
    Index dim;
    Operator hamiltonian;
    std::vector<Dissipator> dissipators;
    KrausTable kraus;
    Operator generator;  // empty for Kraus
    std::optional<Spectral> spectral;
};

QuantumEvolution::QuantumEvolution(std::shared_ptr<const State> state) : state_(std::move(state)) {}

namespace {

Operator build_generator(const Operator& h, const std::vector<Dissipator>& dissipators) {
    const Index n = h.rows();
    const Operator id = Operator::Identity(n, n);
    const Complex i_unit(0.0, 1.0);
    Operator l = -i_unit * (Eigen::kroneckerProduct(id, h).eval() -
                            Eigen::kroneckerProduct(h.transpose(), id).eval());
    for (const auto& d : dissipators) {
        const Operator jdj = d.jump.adjoint() * d.jump;
        l += d.rate * (Eigen::kroneckerProduct(d.jump.conjugate(), d.jump).eval() -
                       0.5 * Eigen::kroneckerProduct(id, jdj).eval() -
                       0.5 * Eigen::kroneckerProduct(jdj.transpose(), id).eval());
    }
    return l;
}

void validate_hamiltonian(const Operator& h) {
    require_square(h, "Hamiltonian");
    if (hermiticity_defect(h) > tolerance::kHermitian) {
        throw InvalidArgument("Hamiltonian is not Hermitian");
    }
}

}  // namespace

QuantumEvolution QuantumEvolution::unitary(Operator hamiltonian) {
    validate_hamiltonian(hamiltonian);
    auto s = std::make_shared<State>();
    s->kind = EvolutionKind::Unitary;
    s->dim = hamiltonian.rows();
    s->hamiltonian = std::move(hamiltonian);
    s->generator = build_generator(s->hamiltonian, {});
    const Operator herm = 0.5 * (s->hamiltonian + s->hamiltonian.adjoint());
    const Eigen::SelfAdjointEigenSolver<Operator> eig(herm);
    Spectral sp;
    sp.energies = eig.eigenvalues();
    sp.energy_vectors = eig.eigenvectors();
    s->spectral = std::move(sp);
    return QuantumEvolution(std::move(s));
}

QuantumEvolution QuantumEvolution::lindblad(Operator hamiltonian, std::vector<Dissipator> dissipators) {
    validate_hamiltonian(hamiltonian);
    for (const auto& d : dissipators) {
        if (!(d.rate >= 0.0) || !std::isfinite(d.rate)) {
            throw InvalidArgument("dissipation rates must be finite and non-negative");
        }
        require_square(d.jump, "jump operator");
        if (d.jump.rows() != hamiltonian.rows()) {
            throw InvalidArgument("jump operator dimension differs from the Hamiltonian");
        }
    }
    auto s = std::make_shared<State>();
    s->kind = EvolutionKind::Lindblad;
    s->dim = hamiltonian.rows();
    s->hamiltonian = std::move(hamiltonian);
    s->dissipators = std::move(dissipators);
    s->generator = build_generator(s->hamiltonian, s->dissipators);

    const Eigen::ComplexEigenSolver<Operator> eig(s->generator);
    if (eig.info() == Eigen::Success) {
        const Operator& v = eig.eigenvectors();
        const Eigen::JacobiSVD<Operator> svd(v);
        const auto& sv = svd.singularValues();
        const double cond = sv(0) / sv(sv.size() - 1);
        if (std::isfinite(cond) && cond < kMaxEigenvectorCondition) {
            Spectral sp;
            sp.eigenvalues = eig.eigenvalues();
            sp.right = v;
            sp.right_inverse = v.partialPivLu().inverse();
            s->spectral = std::move(sp);
        }
    }
    return QuantumEvolution(std::move(s));
}

QuantumEvolution QuantumEvolution::kraus(Index dim, KrausTable table) {
    if (dim < 1 || !table) {
        throw InvalidArgument("Kraus family needs a positive dimension and a table");
    }
    auto s = std::make_shared<State>();
    s->kind = EvolutionKind::Kraus;
    s->dim = dim;
    s->kraus = std::move(table);
    return QuantumEvolution(std::move(s));
}

EvolutionKind QuantumEvolution::kind() const { return state_->kind; }
Index QuantumEvolution::dim() const { return state_->dim; }
const Operator& QuantumEvolution::hamiltonian() const { return state_->hamiltonian; }
const std::vector<Dissipator>& QuantumEvolution::dissipators() const { return state_->dissipators; }
bool QuantumEvolution::has_spectral_form() const { return state_->spectral.has_value(); }

Operator QuantumEvolution::generator() const {
    if (state_->kind == EvolutionKind::Kraus) {
        throw InvalidArgument("Kraus families have no generator");
    }
    return state_->generator;
}

Propagator QuantumEvolution::propagator(double t) const {
    require_time(t);
    const Index n = state_->dim;
    const State& s = *state_;

    if (s.kind == EvolutionKind::Unitary) {
        const Spectral& sp = *s.spectral;
        const Eigen::VectorXcd phases =
            (sp.energies.cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
        const Operator u = sp.energy_vectors * phases.asDiagonal() * sp.energy_vectors.adjoint();
        return Propagator(Eigen::kroneckerProduct(u.conjugate(), u).eval(), t);
    }

    if (s.kind == EvolutionKind::Kraus) {
        const std::vector<Operator> ops = s.kraus(t);
        Operator completeness = Operator::Zero(n, n);
        Operator superop = Operator::Zero(n * n, n * n);
        for (const auto& a : ops) {
            if (a.rows() != n || a.cols() != n) {
                throw InvalidArgument("Kraus operator dimension mismatch");
            }
            completeness += a.adjoint() * a;
            superop += Eigen::kroneckerProduct(a.conjugate(), a).eval();
        }
        const double defect = (completeness - Operator::Identity(n, n)).cwiseAbs().maxCoeff();
        if (defect > kKrausCompleteness) {
            std::ostringstream msg;
            msg << "Kraus operators violate completeness at t = " << t << " (defect " << defect << ")";
            throw InvalidArgument(msg.str());
        }
        return Propagator(std::move(superop), t);
    }

    if (s.spectral) {
        const Spectral& sp = *s.spectral;
        const Eigen::VectorXcd growth = (sp.eigenvalues * t).array().exp().matrix();
        return Propagator(sp.right * growth.asDiagonal() * sp.right_inverse, t);
    }

    // Scaling and squaring with Pade approximants.
    const Operator scaled = s.generator * Complex(t);
    Operator superop = scaled.exp();
    if (!all_finite(superop)) {
        std::ostringstream msg;
        msg << "matrix exponential did not converge at t = " << t;
        throw NumericalError(msg.str());
    }
    return Propagator(std::move(superop), t);
}

Operator QuantumEvolution::apply_operator(const Operator& x, double t) const {
    return propagator(t).apply(x);
}

DensityMatrix QuantumEvolution::apply(const DensityMatrix& rho, double t) const {
    if (rho.dim() != dim()) {
        throw InvalidArgument("state dimension differs from the evolution");
    }
    Operator out = apply_operator(rho.op(), t);
    if (!all_finite(out) || hermiticity_defect(out) > tolerance::kHermitian ||
        std::abs(out.trace() - Complex(1.0)) > tolerance::kTrace) {
        std::ostringstream msg;
        msg << "evolved state violates density-matrix invariants at t = " << t;
        throw NumericalError(msg.str());
    }
    try {
        return DensityMatrix(std::move(out));
    } catch (const InvalidArgument& e) {
        throw NumericalError(std::string("evolved state is not a density matrix: ") + e.what());
    }
}

double QuantumEvolution::transition_probability(Index i, double t, Index j,
                                                const MeasurementBasis& basis) const {
    return TransitionKernel(*this, basis).probability(i, t, j);
}

// ---------------------------------------------------------------------------
// TransitionKernel

TransitionKernel::TransitionKernel(QuantumEvolution evolution, MeasurementBasis basis)
    : evolution_(std::move(evolution)), basis_(std::move(basis)) {
    const Index n = basis_.dim();
    if (evolution_.dim() != n) {
        throw InvalidArgument("evolution and basis dimensions differ");
    }
    projectors_.resize(n * n, n);
    for (Index i = 0; i < n; ++i) {
        projectors_.col(i) = vec(basis_.projector(i));
    }
    const auto& state = *evolution_.state_;
    if (!state.spectral) {
        return;
    }
    const auto& sp = *state.spectral;
    if (state.kind == EvolutionKind::Unitary) {
        energy_overlaps_ = sp.energy_vectors.adjoint() * basis_.vectors();
    } else {
        readout_ = projectors_.adjoint() * sp.right;
        coefficients_ = sp.right_inverse * projectors_;
    }
}

Eigen::VectorXd TransitionKernel::raw_column(double t, Index j) const {
    require_time(t);
    const Index n = basis_.dim();
    if (j < 0 || j >= n) {
        throw InvalidArgument("state index out of range");
    }
    const auto& state = *evolution_.state_;
    if (state.spectral && state.kind == EvolutionKind::Unitary) {
        const auto& e = state.spectral->energies;
        Eigen::VectorXcd evolved(n);
        for (Index k = 0; k < n; ++k) {
            evolved[k] = std::polar(1.0, -e[k] * t) * energy_overlaps_(k, j);
        }
        const Eigen::VectorXcd amplitudes = energy_overlaps_.adjoint() * evolved;
        return amplitudes.cwiseAbs2();
    }
    if (state.spectral) {
        const auto& lambda = state.spectral->eigenvalues;
        const Eigen::VectorXcd weighted =
            ((lambda * t).array().exp() * coefficients_.col(j).array()).matrix();
        return (readout_ * weighted).real();
    }
    const Propagator p = evolution_.propagator(t);
    return (projectors_.adjoint() * (p.superoperator() * projectors_.col(j))).real();
}

ProbabilityVector TransitionKernel::column(double t, Index j) const {
    return sanitize_probabilities(raw_column(t, j));
}

Eigen::MatrixXd TransitionKernel::matrix(double t) const {
    const Index n = basis_.dim();
    Eigen::MatrixXd m(n, n);
    const auto& state = *evolution_.state_;
    if (state.spectral) {
        for (Index j = 0; j < n; ++j) {
            m.col(j) = column(t, j);
        }
        return m;
    }
    // One propagator for all columns.
    const Propagator p = evolution_.propagator(t);
    const Eigen::MatrixXd raw = (projectors_.adjoint() * p.superoperator() * projectors_).real();
    for (Index j = 0; j < n; ++j) {
        m.col(j) = sanitize_probabilities(raw.col(j));
    }
    return m;
}

double clamp_probability(double p) {
    if (!std::isfinite(p) || p < -tolerance::kNegativeClamp || p > 1.0 + tolerance::kNegativeClamp) {
        std::ostringstream msg;
        msg << "transition probability " << p << " outside [0, 1]";
        throw NumericalError(msg.str());
    }
    return std::clamp(p, 0.0, 1.0);
}

double TransitionKernel::probability(Index i, double t, Index j) const {
    if (i < 0 || i >= basis_.dim()) {
        throw InvalidArgument("state index out of range");
    }
    return clamp_probability(raw_column(t, j)[i]);
}

std::optional<Eigen::MatrixXd> TransitionKernel::exponential_average(double tau) const {
    const auto& state = *evolution_.state_;
    if (!state.spectral || !(tau > 0.0)) {
        return std::nullopt;
    }
    const Index n = basis_.dim();
    Eigen::MatrixXd avg(n, n);
    if (state.kind == EvolutionKind::Unitary) {
        // |sum_k x_k e^{-i E_k t}|^2 averaged against exp(-t/tau)/tau.
        const auto& e = state.spectral->energies;
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < n; ++i) {
                Complex acc = 0.0;
                for (Index k = 0; k < n; ++k) {
                    const Complex xk = std::conj(energy_overlaps_(k, i)) * energy_overlaps_(k, j);
                    for (Index l = 0; l < n; ++l) {
                        const Complex xl = std::conj(energy_overlaps_(l, i)) * energy_overlaps_(l, j);
                        acc += xk * std::conj(xl) / Complex(1.0, (e[k] - e[l]) * tau);
                    }
                }
                avg(i, j) = acc.real();
            }
        }
        return avg;
    }
    const auto& lambda = state.spectral->eigenvalues;
    const Eigen::VectorXcd laplace = (Complex(1.0) - lambda.array() * tau).inverse().matrix();
    avg = (readout_ * laplace.asDiagonal() * coefficients_).real();
    return avg;
}

// ---------------------------------------------------------------------------

bool is_unital(const QuantumEvolution& evolution, std::span<const double> t_samples, double tol) {
    if (t_samples.empty()) {
        throw InvalidArgument("unitality check needs at least one time sample");
    }
    const Index n = evolution.dim();
    const Operator id = Operator::Identity(n, n);
    for (double t : t_samples) {
        const double defect = (evolution.apply_operator(id, t) - id).cwiseAbs().maxCoeff();
        if (!(defect <= tol)) {
            return false;
        }
    }
    return true;
}

std::vector<double> default_unitality_grid(double tau) {
    constexpr int kPoints = 64;
    std::vector<double> grid(kPoints);
    const double lo = std::log(tau / 100.0);
    const double hi = std::log(20.0 * tau);
    for (int k = 0; k < kPoints; ++k) {
        grid[k] = std::exp(lo + (hi - lo) * k / (kPoints - 1));
    }
    return grid;
}

double semigroup_defect(const QuantumEvolution& evolution, double t1, double t2) {
    const Operator joint = evolution.propagator(t1 + t2).superoperator();
    const Operator split =
        evolution.propagator(t1).superoperator() * evolution.propagator(t2).superoperator();
    return (joint - split).cwiseAbs().maxCoeff();
}

}  // namespace qreset
