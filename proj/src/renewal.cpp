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

#include "qreset/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "qreset/errors.hpp"

namespace qreset {

namespace {

// Averaged matrices come from quadrature at absolute tolerance 1e-10 per entry.
constexpr double kColumnSumTolerance = 1e-8;

std::vector<bool> reachable_from(const Eigen::MatrixXd& a, Index source, Index stop, bool reverse) {
    const Index n = a.rows();
    std::vector<bool> seen(n, false);
    std::deque<Index> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
        const Index j = queue.front();
        queue.pop_front();
        if (j == stop && j != source) {
            continue;
        }
        for (Index i = 0; i < n; ++i) {
            const double w = reverse ? a(j, i) : a(i, j);
            if (!seen[i] && i != j && w > kConnectivityTolerance) {
                seen[i] = true;
                queue.push_back(i);
            }
        }
    }
    return seen;
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
    if (m.size() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

std::string list_states(const std::vector<std::size_t>& states) {
    std::ostringstream out;
    for (std::size_t k = 0; k < states.size(); ++k) {
        out << (k ? ", " : "") << states[k];
    }
    return out.str();
}

}  // namespace

double RenewalSolution::time_from(Index state) const {
    if (state == target) {
        return T_star;
    }
    for (std::size_t k = 0; k < others.size(); ++k) {
        if (others[k] == state) {
            return T[static_cast<Index>(k)];
        }
    }
    throw InvalidArgument("state index out of range");
}

RenewalMatrices renewal_matrices(Eigen::MatrixXd averaged, Index target, double tau) {
    const Index n = averaged.rows();
    if (n < 2 || averaged.cols() != n) {
        throw InvalidArgument("averaged transition matrix must be square with N >= 2");
    }
    if (target < 0 || target >= n) {
        throw InvalidArgument("target index out of range");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw InvalidArgument("mean measurement time must be positive and finite");
    }
    RenewalMatrices m;
    m.target = target;
    m.tau = tau;
    for (Index i = 0; i < n; ++i) {
        if (i != target) {
            m.others.push_back(i);
        }
    }
    const Index k = n - 1;
    m.W0.resize(k, k);
    m.wstar0.resize(k);
    for (Index r = 0; r < k; ++r) {
        m.wstar0[r] = averaged(m.others[r], target);
        for (Index c = 0; c < k; ++c) {
            m.W0(r, c) = averaged(m.others[r], m.others[c]);
        }
    }
    m.column_sum_defect = (averaged.colwise().sum().array() - 1.0).abs().maxCoeff();
    m.averaged = std::move(averaged);
    return m;
}

RenewalMatrices build_matrices(const MeasurementTimeDistribution& dist, const TransitionKernel& kernel, Index target,
                               const QuadratureOptions& options) {
    RenewalMatrices m = renewal_matrices(averaged_transition_matrix(dist, kernel, options), target, dist.mean());
    if (m.column_sum_defect > kColumnSumTolerance) {
        std::ostringstream msg;
        msg << "averaged transition columns do not sum to one (defect " << m.column_sum_defect << ")";
        throw NumericalError(msg.str());
    }
    return m;
}

RenewalMatrices build_matrices(const QuantumEvolution& evolution, const MeasurementTimeDistribution& dist,
                               const MeasurementBasis& basis, Index target, const QuadratureOptions& options) {
    return build_matrices(dist, TransitionKernel(evolution, basis), target, options);
}

RenewalSolution mean_times(const RenewalMatrices& m) {
    const Index n = m.averaged.rows();
    const Index k = n - 1;
    const double tau = m.tau;

    RenewalSolution sol;
    sol.target = m.target;
    sol.others = m.others;
    sol.T = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::infinity());

    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(k, k) - m.W0.transpose();
    sol.smallest_singular_value = smallest_singular_value(system);
    sol.singular = sol.smallest_singular_value < kSingularThreshold;

    const std::vector<bool> forward = reachable_from(m.averaged, m.target, n, false);
    sol.connected = forward;
    sol.N_c = static_cast<int>(std::count(forward.begin(), forward.end(), true));

    if (!sol.singular) {
        sol.T = tau * system.colPivHouseholderQr().solve(Eigen::VectorXd::Ones(k));
        sol.T_star = tau + m.wstar0.dot(sol.T);
    } else {
        // States from which the target is detected with probability one: every
        // state they can visit before detection must itself reach the target.
        const std::vector<bool> reaches_target = reachable_from(m.averaged, m.target, n, true);
        std::vector<bool> solvable(n, false);
        for (Index i : m.others) {
            if (!reaches_target[i]) {
                continue;
            }
            const std::vector<bool> visits = reachable_from(m.averaged, i, m.target, false);
            bool ok = true;
            for (Index v = 0; v < n && ok; ++v) {
                ok = !(visits[v] && v != m.target && !reaches_target[v]);
            }
            solvable[i] = ok;
        }
        std::vector<std::size_t> stuck;
        for (Index i : m.others) {
            if (forward[i] && !solvable[i]) {
                stuck.push_back(static_cast<std::size_t>(i));
            }
        }
        if (!stuck.empty()) {
            throw DisconnectedError("return to the target is impossible: states " + list_states(stuck) +
                                        " are reachable from the target but never lead back to it",
                                    std::move(stuck));
        }
        std::vector<Index> block;  // positions within `others`
        for (Index r = 0; r < k; ++r) {
            if (solvable[m.others[r]]) {
                block.push_back(r);
            }
        }
        const auto b = static_cast<Index>(block.size());
        double star = tau;
        if (b > 0) {
            Eigen::MatrixXd reduced(b, b);
            for (Index r = 0; r < b; ++r) {
                for (Index c = 0; c < b; ++c) {
                    reduced(r, c) = (r == c ? 1.0 : 0.0) - m.W0(block[c], block[r]);
                }
            }
            if (smallest_singular_value(reduced) < kSingularThreshold) {
                std::vector<std::size_t> names;
                for (Index r : block) {
                    names.push_back(static_cast<std::size_t>(m.others[r]));
                }
                throw DisconnectedError("connected block is still singular; states " + list_states(names), names);
            }
            const Eigen::VectorXd t_block = tau * reduced.colPivHouseholderQr().solve(Eigen::VectorXd::Ones(b));
            for (Index r = 0; r < b; ++r) {
                sol.T[block[r]] = t_block[r];
                star += m.wstar0[block[r]] * t_block[r];
            }
        }
        sol.T_star = star;
    }

    const double floor = tau * (1.0 - 1e-9);
    bool valid = std::isfinite(sol.T_star) && sol.T_star >= floor;
    for (Index r = 0; r < k; ++r) {
        valid = valid && (std::isinf(sol.T[r]) || sol.T[r] >= floor);
    }
    if (!valid) {
        throw NumericalError("renewal solve produced a mean time shorter than tau");
    }
    return sol;
}

double closure_check(const RenewalMatrices& m) {
    const Index k = m.W0.rows();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);
    return (m.wstar0 + m.W0 * ones - ones).cwiseAbs().maxCoeff();
}

ConnectivityPartition connectivity(const TransitionKernel& kernel, Index target, std::span<const double> t_grid,
                                   double tol) {
    if (t_grid.empty()) {
        throw InvalidArgument("connectivity needs a nonempty time grid");
    }
    const Index n = kernel.dim();
    if (target < 0 || target >= n) {
        throw InvalidArgument("target index out of range");
    }
    ConnectivityPartition part;
    part.evidence = Eigen::VectorXd::Zero(n);
    for (double t : t_grid) {
        part.evidence = part.evidence.cwiseMax(kernel.column(t, target));
    }
    for (Index i = 0; i < n; ++i) {
        if (i == target || part.evidence[i] > tol) {
            part.connected.push_back(i);
        } else {
            part.disconnected.push_back(i);
        }
    }
    return part;
}

ConnectivityPartition connectivity(const QuantumEvolution& evolution, const MeasurementBasis& basis, Index target,
                                   std::span<const double> t_grid, double tol) {
    return connectivity(TransitionKernel(evolution, basis), target, t_grid, tol);
}

std::vector<double> default_connectivity_grid(double tau) {
    std::vector<double> grid;
    grid.reserve(256 + 64);
    for (int k = 0; k < 256; ++k) {
        grid.push_back(10.0 * tau * k / 255.0);
    }
    const double lo = std::log(tau / 1000.0);
    const double hi = std::log(tau);
    for (int k = 0; k < 64; ++k) {
        grid.push_back(std::exp(lo + (hi - lo) * k / 63.0));
    }
    return grid;
}

}  // namespace qreset
