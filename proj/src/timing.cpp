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

#include "qreset/timing.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>

#include <gsl/gsl_cdf.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_randist.h>

#include "qreset/errors.hpp"

namespace qreset {

namespace {

// Largest tolerated gap between the quadrature and spectral averages.
constexpr double kClosedFormAgreement = 1e-8;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw InvalidArgument(std::string(what) + " must be positive and finite");
    }
}

void disable_gsl_abort() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

double standard_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

}  // namespace

MeasurementTimeDistribution::MeasurementTimeDistribution(Params params) : params_(std::move(params)) {
    disable_gsl_abort();
    mean_ = std::visit(
        overloaded{
            [](const ExponentialTimes& p) {
                require_positive(p.mean, "exponential mean");
                return p.mean;
            },
            [](const DeterministicTimes& p) {
                require_positive(p.time, "deterministic measurement time");
                return p.time;
            },
            [](const GammaTimes& p) {
                require_positive(p.shape, "gamma shape");
                require_positive(p.mean, "gamma mean");
                return p.mean;
            },
            [this](const TruncatedNormalTimes& p) {
                require_positive(p.stddev, "normal stddev");
                if (!std::isfinite(p.location)) {
                    throw InvalidArgument("normal location must be finite");
                }
                const double alpha = -p.location / p.stddev;
                normal_mass_ = gsl_cdf_ugaussian_Q(alpha);
                if (!(normal_mass_ > 1e-300)) {
                    throw InvalidArgument("truncated normal has no mass on [0, inf)");
                }
                return p.location + p.stddev * standard_normal_pdf(alpha) / normal_mass_;
            },
        },
        params_);
    require_positive(mean_, "distribution mean");
}

MeasurementTimeDistribution MeasurementTimeDistribution::exponential(double mean) {
    return MeasurementTimeDistribution(ExponentialTimes{mean});
}
MeasurementTimeDistribution MeasurementTimeDistribution::deterministic(double time) {
    return MeasurementTimeDistribution(DeterministicTimes{time});
}
MeasurementTimeDistribution MeasurementTimeDistribution::gamma(double shape, double mean) {
    return MeasurementTimeDistribution(GammaTimes{shape, mean});
}
MeasurementTimeDistribution MeasurementTimeDistribution::truncated_normal(double location, double stddev) {
    return MeasurementTimeDistribution(TruncatedNormalTimes{location, stddev});
}

std::string MeasurementTimeDistribution::name() const {
    return std::visit(overloaded{
                          [](const ExponentialTimes&) { return std::string("exponential"); },
                          [](const DeterministicTimes&) { return std::string("deterministic"); },
                          [](const GammaTimes&) { return std::string("gamma"); },
                          [](const TruncatedNormalTimes&) { return std::string("truncated_normal"); },
                      },
                      params_);
}

bool MeasurementTimeDistribution::has_density() const {
    return !std::holds_alternative<DeterministicTimes>(params_);
}

double MeasurementTimeDistribution::density(double t) const {
    if (t < 0.0) {
        return 0.0;
    }
    return std::visit(
        overloaded{
            [&](const ExponentialTimes& p) { return std::exp(-t / p.mean) / p.mean; },
            [](const DeterministicTimes&) -> double {
                throw InvalidArgument("deterministic measurement times have no density");
            },
            [&](const GammaTimes& p) { return gsl_ran_gamma_pdf(t, p.shape, p.mean / p.shape); },
            [&](const TruncatedNormalTimes& p) {
                return standard_normal_pdf((t - p.location) / p.stddev) / (p.stddev * normal_mass_);
            },
        },
        params_);
}

double MeasurementTimeDistribution::survival(double t) const {
    if (t <= 0.0) {
        return 1.0;
    }
    return std::visit(
        overloaded{
            [&](const ExponentialTimes& p) { return std::exp(-t / p.mean); },
            [&](const DeterministicTimes& p) { return t < p.time ? 1.0 : 0.0; },
            [&](const GammaTimes& p) { return gsl_cdf_gamma_Q(t, p.shape, p.mean / p.shape); },
            [&](const TruncatedNormalTimes& p) {
                return gsl_cdf_ugaussian_Q((t - p.location) / p.stddev) / normal_mass_;
            },
        },
        params_);
}

double MeasurementTimeDistribution::sample(RandomStream& rng) const {
    return std::visit(
        overloaded{
            [&](const ExponentialTimes& p) { return -p.mean * std::log1p(-rng.uniform()); },
            [](const DeterministicTimes& p) { return p.time; },
            [&](const GammaTimes& p) {
                std::gamma_distribution<double> g(p.shape, p.mean / p.shape);
                return g(rng);
            },
            [&](const TruncatedNormalTimes& p) {
                // Invert the upper tail: P(X > x) = q with q uniform on (0, mass].
                const double q = (1.0 - rng.uniform()) * normal_mass_;
                return std::max(0.0, p.location + p.stddev * gsl_cdf_ugaussian_Qinv(q));
            },
        },
        params_);
}

double MeasurementTimeDistribution::tail_time(double eps) const {
    return std::visit(
        overloaded{
            [&](const ExponentialTimes& p) { return p.mean * std::log(1.0 / eps) * (1.0 + 1e-9); },
            [](const DeterministicTimes& p) { return p.time * (1.0 + 1e-12); },
            [&](const GammaTimes& p) {
                double t = gsl_cdf_gamma_Qinv(eps, p.shape, p.mean / p.shape);
                while (survival(t) >= eps) {
                    t *= 1.01;
                }
                return t;
            },
            [&](const TruncatedNormalTimes& p) {
                double t = p.location + p.stddev * gsl_cdf_ugaussian_Qinv(eps * normal_mass_);
                t = std::max(t, p.stddev);
                while (survival(t) >= eps) {
                    t += 0.01 * p.stddev;
                }
                return t;
            },
        },
        params_);
}

MeasurementTimeDistribution MeasurementTimeDistribution::with_mean(double tau) const {
    require_positive(tau, "mean measurement time");
    return std::visit(overloaded{
                          [&](const ExponentialTimes&) { return exponential(tau); },
                          [&](const DeterministicTimes&) { return deterministic(tau); },
                          [&](const GammaTimes& p) { return gamma(p.shape, tau); },
                          [&](const TruncatedNormalTimes& p) {
                              // Truncation at zero commutes with scaling.
                              const double scale = tau / mean_;
                              return truncated_normal(p.location * scale, p.stddev * scale);
                          },
                      },
                      params_);
}

// ---------------------------------------------------------------------------

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options, bool singular_endpoint) {
    disable_gsl_abort();
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(options.max_intervals), &gsl_integration_workspace_free);
    if (!ws) {
        throw NumericalError("could not allocate quadrature workspace");
    }
    gsl_function fn;
    fn.function = [](double x, void* ctx) { return (*static_cast<const std::function<double(double)>*>(ctx))(x); };
    fn.params = const_cast<std::function<double(double)>*>(&f);

    double value = 0.0;
    double error = 0.0;
    const int status =
        singular_endpoint
            ? gsl_integration_qags(&fn, a, b, options.abs_tol, 0.0, options.max_intervals, ws.get(), &value, &error)
            : gsl_integration_qag(&fn, a, b, options.abs_tol, 0.0, options.max_intervals, GSL_INTEG_GAUSS21,
                                  ws.get(), &value, &error);
    if (!std::isfinite(value) || (status != GSL_SUCCESS && !(error <= options.abs_tol))) {
        std::ostringstream msg;
        msg << "quadrature on [" << a << ", " << b << "] failed: " << gsl_strerror(status) << " (estimate "
            << value << ", error bound " << error << ")";
        throw QuadratureError(msg.str(), value, error);
    }
    return {value, error};
}

double quadrature_mean(const MeasurementTimeDistribution& dist, const QuadratureOptions& options) {
    if (!dist.has_density()) {
        return dist.mean();
    }
    const double t_max = dist.tail_time(options.tail);
    const bool singular = std::holds_alternative<GammaTimes>(dist.params()) &&
                          std::get<GammaTimes>(dist.params()).shape < 1.0;
    return integrate_adaptive([&](double t) { return t * dist.density(t); }, 0.0, t_max, options, singular)
        .value;
}

double averaged_transition(const MeasurementTimeDistribution& dist, const TransitionKernel& kernel, Index i,
                           Index j, const QuadratureOptions& options) {
    if (i < 0 || j < 0 || i >= kernel.dim() || j >= kernel.dim()) {
        throw InvalidArgument("state index out of range");
    }
    if (!dist.has_density()) {
        return kernel.probability(i, dist.mean(), j);
    }
    const double t_max = dist.tail_time(options.tail);
    const bool singular = std::holds_alternative<GammaTimes>(dist.params()) &&
                          std::get<GammaTimes>(dist.params()).shape < 1.0;
    auto integrand = [&](double t) { return dist.density(t) * kernel.probability(i, t, j); };
    try {
        return clamp_probability(integrate_adaptive(integrand, 0.0, t_max, options, singular).value);
    } catch (const QuadratureError& e) {
        std::ostringstream msg;
        msg << "a(" << i << "|" << j << "): " << e.what();
        throw QuadratureError(msg.str(), e.estimate(), e.error_bound());
    }
}

double averaged_transition(const MeasurementTimeDistribution& dist, const QuantumEvolution& evolution,
                           const MeasurementBasis& basis, Index i, Index j, const QuadratureOptions& options) {
    return averaged_transition(dist, TransitionKernel(evolution, basis), i, j, options);
}

Eigen::MatrixXd averaged_transition_matrix(const MeasurementTimeDistribution& dist, const TransitionKernel& kernel,
                                           const QuadratureOptions& options) {
    const Index n = kernel.dim();
    if (!dist.has_density()) {
        return kernel.matrix(dist.mean());
    }
    Eigen::MatrixXd a(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            a(i, j) = averaged_transition(dist, kernel, i, j, options);
        }
    }
    if (std::holds_alternative<ExponentialTimes>(dist.params())) {
        if (const auto closed = kernel.exponential_average(dist.mean())) {
            const double gap = (*closed - a).cwiseAbs().maxCoeff();
            if (!(gap <= kClosedFormAgreement)) {
                std::ostringstream msg;
                msg << "quadrature and closed-form averages disagree by " << gap;
                throw NumericalError(msg.str());
            }
        }
    }
    return a;
}

}  // namespace qreset
