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

#include "qreset/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qreset/errors.hpp"

namespace qreset {

namespace {
constexpr int kPrescanPoints = 32;
constexpr int kMaxIterations = 500;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
}  // namespace

OptimizationResult minimize_tau(const std::function<double(double)>& objective, double tau_lo, double tau_hi,
                                double rel_tol) {
    if (!(tau_lo > 0.0) || !(tau_hi > tau_lo) || !std::isfinite(tau_hi)) {
        throw InvalidArgument("search range must satisfy 0 < tau_lo < tau_hi");
    }
    if (!(rel_tol > 0.0)) {
        throw InvalidArgument("tolerance must be positive");
    }
    OptimizationResult result;
    auto f = [&](double log_tau) {
        const double tau = std::exp(log_tau);
        const double v = objective(tau);
        ++result.evaluations;
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "objective is not finite at tau = " << tau;
            throw NumericalError(msg.str());
        }
        return v;
    };

    const double lo = std::log(tau_lo);
    const double hi = std::log(tau_hi);
    std::vector<GridProbe> scan(kPrescanPoints);
    for (int k = 0; k < kPrescanPoints; ++k) {
        const double x = lo + (hi - lo) * k / (kPrescanPoints - 1);
        scan[k] = {std::exp(x), f(x)};
    }
    const auto best_it =
        std::min_element(scan.begin(), scan.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    const int best = static_cast<int>(best_it - scan.begin());
    std::vector<GridProbe> ranked = scan;
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    result.best_probes.assign(ranked.begin(), ranked.begin() + 3);

    double a = std::log(scan[std::max(best - 1, 0)].tau);
    double b = std::log(scan[std::min(best + 1, kPrescanPoints - 1)].tau);
    if (best == 0) {
        a = lo;
    }
    if (best == kPrescanPoints - 1) {
        b = hi;
    }
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int it = 0;
    while (b - a > rel_tol && it < kMaxIterations) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
        ++it;
    }
    result.converged = b - a <= rel_tol;

    const double fa = f(a);
    const double fb = f(b);
    std::array<std::pair<double, double>, 4> candidates{{{c, fc}, {d, fd}, {a, fa}, {b, fb}}};
    const auto winner = *std::min_element(candidates.begin(), candidates.end(),
                                          [](const auto& x, const auto& y) { return x.second < y.second; });
    result.tau_star = std::exp(winner.first);
    result.T_min = winner.second;
    result.bracket = {std::exp(a), std::exp(b)};
    result.interior = (winner.first - lo > rel_tol) && (hi - winner.first > rel_tol);
    return result;
}

}  // namespace qreset
