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
#include <utility>
#include <vector>

namespace qreset {

struct GridProbe {
    double tau;
    double value;
};

struct OptimizationResult {
    double tau_star = 0.0;
    double T_min = 0.0;
    std::pair<double, double> bracket;
    bool converged = false;
    /// False when the minimizer sits within one tolerance of a search boundary.
    bool interior = false;
    /// Three lowest points of the coarse 32-point log-spaced pre-scan.
    std::vector<GridProbe> best_probes;
    int evaluations = 0;
};

/// Golden-section search over log(tau) on [tau_lo, tau_hi], seeded by a coarse
/// pre-scan. Assumes the objective is unimodal on the range.
OptimizationResult minimize_tau(const std::function<double(double)>& objective, double tau_lo, double tau_hi,
                                double rel_tol = 1e-4);

}  // namespace qreset
