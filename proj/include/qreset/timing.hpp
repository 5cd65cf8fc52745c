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
#include <string>
#include <variant>

#include "qreset/evolution.hpp"
#include "qreset/random.hpp"

namespace qreset {

struct ExponentialTimes {
    double mean;
};
struct DeterministicTimes {
    double time;
};
struct GammaTimes {
    double shape;
    double mean;
};
/// Normal(location, stddev) truncated to [0, inf) and renormalized.
struct TruncatedNormalTimes {
    double location;
    double stddev;
};

/// Density phi(t) of the waiting time between consecutive measurements.
class MeasurementTimeDistribution {
public:
    using Params = std::variant<ExponentialTimes, DeterministicTimes, GammaTimes, TruncatedNormalTimes>;

    static MeasurementTimeDistribution exponential(double mean);
    static MeasurementTimeDistribution deterministic(double time);
    static MeasurementTimeDistribution gamma(double shape, double mean);
    static MeasurementTimeDistribution truncated_normal(double location, double stddev);

    const Params& params() const { return params_; }
    std::string name() const;
    double mean() const { return mean_; }

    /// False for the deterministic variant, which has no density.
    bool has_density() const;
    double density(double t) const;
    /// phi_bar(t): probability that no measurement happened before t.
    double survival(double t) const;
    double cdf(double t) const { return 1.0 - survival(t); }
    double sample(RandomStream& rng) const;

    /// Smallest convenient T with survival(T) < eps.
    double tail_time(double eps) const;

    /// Same family and shape, rescaled so that the mean equals tau.
    MeasurementTimeDistribution with_mean(double tau) const;

private:
    explicit MeasurementTimeDistribution(Params params);
    Params params_;
    double mean_;
    double normal_mass_ = 1.0;  // P(X > 0) for the truncated normal
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    /// Integration stops at T_max with survival(T_max) < tail.
    double tail = 1e-12;
    std::size_t max_intervals = 4000;
};

struct QuadratureResult {
    double value;
    double error_bound;
};

/// Adaptive Gauss-Kronrod on [a, b] with an absolute tolerance.
/// `singular_endpoint` switches to the extrapolating variant for integrable
/// endpoint singularities. Throws QuadratureError on failure.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options, bool singular_endpoint = false);

/// Numerical mean of the density; the deterministic variant returns its time.
double quadrature_mean(const MeasurementTimeDistribution& dist, const QuadratureOptions& options = {});

/// a(i|j) = int_0^inf phi(t) p(i,t|j) dt.
double averaged_transition(const MeasurementTimeDistribution& dist, const TransitionKernel& kernel,
                           Index i, Index j, const QuadratureOptions& options = {});
double averaged_transition(const MeasurementTimeDistribution& dist, const QuantumEvolution& evolution,
                           const MeasurementBasis& basis, Index i, Index j,
                           const QuadratureOptions& options = {});

/// Full N x N matrix with entry (i, j) = a(i|j).
Eigen::MatrixXd averaged_transition_matrix(const MeasurementTimeDistribution& dist,
                                           const TransitionKernel& kernel,
                                           const QuadratureOptions& options = {});

}  // namespace qreset
