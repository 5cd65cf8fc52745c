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

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qreset/evolution.hpp"
#include "qreset/random.hpp"
#include "qreset/timing.hpp"

namespace qreset {

struct TrajectoryOutcome {
    double elapsed = 0.0;
    std::uint64_t n_measurements = 0;
    Index start = 0;
    Index target = 0;
};

struct SimulationOptions {
    std::uint64_t max_measurements = 10'000'000;
    /// 0: QRESET_THREADS or hardware parallelism.
    unsigned threads = 0;
    /// Times at which the empirical survival Q(t) is tabulated; empty to skip.
    std::vector<double> survival_grid;
};

struct EstimateReport {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_trajectories = 0;
    double mean_measurements = 0.0;
    double std_error_measurements = 0.0;
    /// Sample mean and standard error of (elapsed - tau * n_measurements).
    double wald_gap = 0.0;
    double wald_std_error = 0.0;
    std::vector<std::pair<double, double>> empirical_survival;
};

/// Stream for trajectory `index` started from `start`.
RandomStream trajectory_stream(std::uint64_t master_seed, Index start, std::uint64_t index);

/// Evolve, measure, collapse until the target is detected. The clock starts
/// right after the system has been prepared in `start`.
TrajectoryOutcome run_trajectory(const TransitionKernel& kernel, const MeasurementTimeDistribution& dist,
                                 Index start, Index target, RandomStream& rng,
                                 std::uint64_t max_measurements = 10'000'000);
TrajectoryOutcome run_trajectory(const QuantumEvolution& evolution, const MeasurementTimeDistribution& dist,
                                 const MeasurementBasis& basis, Index start, Index target, RandomStream& rng,
                                 std::uint64_t max_measurements = 10'000'000);

EstimateReport estimate_mean_time(const TransitionKernel& kernel, const MeasurementTimeDistribution& dist,
                                  Index start, Index target, std::size_t n_trajectories, std::uint64_t master_seed,
                                  const SimulationOptions& options = {});

/// One report per start state (the target's entry is the return time).
std::map<Index, EstimateReport> estimate_mean_times(const TransitionKernel& kernel,
                                                    const MeasurementTimeDistribution& dist, Index target,
                                                    std::size_t n_trajectories, std::uint64_t master_seed,
                                                    const SimulationOptions& options = {});
std::map<Index, EstimateReport> estimate_mean_times(const QuantumEvolution& evolution,
                                                    const MeasurementTimeDistribution& dist,
                                                    const MeasurementBasis& basis, Index target,
                                                    std::size_t n_trajectories, std::uint64_t master_seed,
                                                    const SimulationOptions& options = {});

}  // namespace qreset
