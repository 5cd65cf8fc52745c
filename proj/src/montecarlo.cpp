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

#include "qreset/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "qreset/errors.hpp"
#include "qreset/parallel.hpp"

namespace qreset {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

struct SampleStats {
    double mean;
    double std_error;
};

SampleStats stats(const std::vector<double>& xs) {
    const auto n = static_cast<double>(xs.size());
    CompensatedSum s;
    for (double x : xs) {
        s.add(x);
    }
    const double mean = s.value() / n;
    CompensatedSum sq;
    for (double x : xs) {
        sq.add((x - mean) * (x - mean));
    }
    const double var = xs.size() > 1 ? sq.value() / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

// Transition columns for one sampled waiting time. Fixed waiting times reuse
// a single propagator.
class Stepper {
public:
    Stepper(const TransitionKernel& kernel, const MeasurementTimeDistribution& dist) : kernel_(kernel) {
        if (!dist.has_density()) {
            fixed_ = kernel.matrix(dist.mean());
        }
    }

    ProbabilityVector column(double dt, Index j) const {
        if (fixed_) {
            return fixed_->col(j);
        }
        return kernel_.column(dt, j);
    }

private:
    const TransitionKernel& kernel_;
    std::optional<Eigen::MatrixXd> fixed_;
};

TrajectoryOutcome simulate(const Stepper& stepper, const MeasurementTimeDistribution& dist, Index start,
                           Index target, RandomStream& rng, std::uint64_t max_measurements) {
    TrajectoryOutcome out;
    out.start = start;
    out.target = target;
    CompensatedSum clock;
    Index current = start;
    while (true) {
        if (out.n_measurements >= max_measurements) {
            std::ostringstream msg;
            msg << "trajectory from state " << start << " made " << max_measurements
                << " measurements without detecting state " << target << "; state is likely disconnected";
            throw DisconnectedError(msg.str(), {static_cast<std::size_t>(start)});
        }
        const double dt = dist.sample(rng);
        clock.add(dt);
        ++out.n_measurements;
        const ProbabilityVector p = stepper.column(dt, current);
        current = static_cast<Index>(sample_index(p, rng.uniform()));
        if (current == target) {
            break;
        }
    }
    out.elapsed = clock.value();
    return out;
}

void check_indices(Index dim, Index start, Index target) {
    if (start < 0 || start >= dim || target < 0 || target >= dim) {
        throw InvalidArgument("start/target index out of range");
    }
}

}  // namespace

RandomStream trajectory_stream(std::uint64_t master_seed, Index start, std::uint64_t index) {
    if (index > 0xFFFFFFFFull) {
        throw InvalidArgument("trajectory index exceeds 2^32");
    }
    return RandomStream(mix_seed(master_seed), static_cast<std::uint32_t>(index),
                        static_cast<std::uint32_t>(start));
}

TrajectoryOutcome run_trajectory(const TransitionKernel& kernel, const MeasurementTimeDistribution& dist,
                                 Index start, Index target, RandomStream& rng, std::uint64_t max_measurements) {
    check_indices(kernel.dim(), start, target);
    return simulate(Stepper(kernel, dist), dist, start, target, rng, max_measurements);
}

TrajectoryOutcome run_trajectory(const QuantumEvolution& evolution, const MeasurementTimeDistribution& dist,
                                 const MeasurementBasis& basis, Index start, Index target, RandomStream& rng,
                                 std::uint64_t max_measurements) {
    return run_trajectory(TransitionKernel(evolution, basis), dist, start, target, rng, max_measurements);
}

EstimateReport estimate_mean_time(const TransitionKernel& kernel, const MeasurementTimeDistribution& dist,
                                  Index start, Index target, std::size_t n_trajectories, std::uint64_t master_seed,
                                  const SimulationOptions& options) {
    check_indices(kernel.dim(), start, target);
    if (n_trajectories < 2) {
        throw InvalidArgument("need at least two trajectories");
    }
    const Stepper stepper(kernel, dist);
    std::vector<TrajectoryOutcome> outcomes(n_trajectories);
    parallel_for(n_trajectories, resolve_threads(options.threads), [&](std::size_t i) {
        RandomStream rng = trajectory_stream(master_seed, start, i);
        outcomes[i] = simulate(stepper, dist, start, target, rng, options.max_measurements);
    });

    std::vector<double> elapsed(n_trajectories);
    std::vector<double> counts(n_trajectories);
    std::vector<double> gaps(n_trajectories);
    for (std::size_t i = 0; i < n_trajectories; ++i) {
        elapsed[i] = outcomes[i].elapsed;
        counts[i] = static_cast<double>(outcomes[i].n_measurements);
        gaps[i] = elapsed[i] - dist.mean() * counts[i];
    }
    EstimateReport report;
    report.n_trajectories = n_trajectories;
    const SampleStats e = stats(elapsed);
    const SampleStats c = stats(counts);
    const SampleStats g = stats(gaps);
    report.mean = e.mean;
    report.std_error = e.std_error;
    report.mean_measurements = c.mean;
    report.std_error_measurements = c.std_error;
    report.wald_gap = g.mean;
    report.wald_std_error = g.std_error;

    if (!options.survival_grid.empty()) {
        std::vector<double> sorted = elapsed;
        std::sort(sorted.begin(), sorted.end());
        for (double t : options.survival_grid) {
            const auto alive = static_cast<double>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
            report.empirical_survival.emplace_back(t, alive / static_cast<double>(n_trajectories));
        }
    }
    return report;
}

std::map<Index, EstimateReport> estimate_mean_times(const TransitionKernel& kernel,
                                                    const MeasurementTimeDistribution& dist, Index target,
                                                    std::size_t n_trajectories, std::uint64_t master_seed,
                                                    const SimulationOptions& options) {
    std::map<Index, EstimateReport> reports;
    for (Index start = 0; start < kernel.dim(); ++start) {
        reports.emplace(start, estimate_mean_time(kernel, dist, start, target, n_trajectories, master_seed, options));
    }
    return reports;
}

std::map<Index, EstimateReport> estimate_mean_times(const QuantumEvolution& evolution,
                                                    const MeasurementTimeDistribution& dist,
                                                    const MeasurementBasis& basis, Index target,
                                                    std::size_t n_trajectories, std::uint64_t master_seed,
                                                    const SimulationOptions& options) {
    return estimate_mean_times(TransitionKernel(evolution, basis), dist, target, n_trajectories, master_seed,
                               options);
}

}  // namespace qreset
