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

#include <span>
#include <vector>

#include "qreset/evolution.hpp"
#include "qreset/timing.hpp"

namespace qreset {

/// Averaged transition data at s = 0 for one target state.
struct RenewalMatrices {
    /// N x N matrix, entry (i, j) = a(i|j).
    Eigen::MatrixXd averaged;
    /// Restriction of `averaged` to the non-target states, in the order of `others`.
    Eigen::MatrixXd W0;
    /// Entries a(i|target) for i in `others`.
    Eigen::VectorXd wstar0;
    std::vector<Index> others;
    Index target = 0;
    double tau = 0.0;
    /// max_j |sum_i a(i|j) - 1|.
    double column_sum_defect = 0.0;
};

struct RenewalSolution {
    double T_star = 0.0;
    /// Mean switching times for `others`; +infinity for states that never reach the target.
    Eigen::VectorXd T;
    std::vector<Index> others;
    Index target = 0;
    int N_c = 0;
    /// Indexed by state; true for the target and every state reachable from it.
    std::vector<bool> connected;
    bool singular = false;
    double smallest_singular_value = 0.0;

    /// Mean time to detect the target starting from `state` (T_star for the target itself).
    double time_from(Index state) const;
};

struct ConnectivityPartition {
    std::vector<Index> connected;
    std::vector<Index> disconnected;
    /// max over the time grid of p(i, t | target), indexed by state.
    Eigen::VectorXd evidence;
};

inline constexpr double kSingularThreshold = 1e-10;
inline constexpr double kConnectivityTolerance = 1e-9;

/// Assembles the averaged matrices from a full N x N matrix of a(i|j).
RenewalMatrices renewal_matrices(Eigen::MatrixXd averaged, Index target, double tau);

RenewalMatrices build_matrices(const MeasurementTimeDistribution& dist, const TransitionKernel& kernel,
                               Index target, const QuadratureOptions& options = {});
RenewalMatrices build_matrices(const QuantumEvolution& evolution, const MeasurementTimeDistribution& dist,
                               const MeasurementBasis& basis, Index target,
                               const QuadratureOptions& options = {});

/// T = tau (1 - W^T)^{-1} v1 and T_star = tau (1 + wstar^T (1 - W^T)^{-1} v1).
/// A numerically singular system is reduced to the states connected to the target.
RenewalSolution mean_times(const RenewalMatrices& m);

/// max |wstar + W v1 - v1|; vanishes for unital evolutions.
double closure_check(const RenewalMatrices& m);

/// State i is disconnected when max_t p(i, t | target) <= tol on the grid.
ConnectivityPartition connectivity(const TransitionKernel& kernel, Index target, std::span<const double> t_grid,
                                   double tol = kConnectivityTolerance);
ConnectivityPartition connectivity(const QuantumEvolution& evolution, const MeasurementBasis& basis, Index target,
                                   std::span<const double> t_grid, double tol = kConnectivityTolerance);

/// 256 uniform points on [0, 10 tau] plus 64 log-spaced points on [tau/1000, tau].
std::vector<double> default_connectivity_grid(double tau);

}  // namespace qreset
