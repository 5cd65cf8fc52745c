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

#include "qreset/oracles.hpp"

#include <cmath>

#include "qreset/errors.hpp"

namespace qreset::oracles {

namespace {

void require_interior_angle(double theta) {
    if (!(theta > 0.0 && theta < M_PI)) {
        throw InvalidArgument("closed forms need theta strictly inside (0, pi); endpoints follow T_star = N_c tau");
    }
}

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw InvalidArgument(std::string(what) + " must be positive");
    }
}

double sq(double x) { return x * x; }

}  // namespace

double qubit_unitary_t_minus(const QubitParams& p) {
    require_interior_angle(p.theta);
    require_positive(p.tau, "tau");
    const double tau = p.tau;
    const double w = p.omega;
    return 2.0 * tau / sq(std::sin(p.theta)) * (1.0 + 1.0 / sq(w * tau));
}

double qubit_dephasing_t_minus(const QubitParams& p) {
    require_interior_angle(p.theta);
    require_positive(p.tau, "tau");
    const double tau = p.tau;
    const double w = p.omega;
    const double k = p.kappa;
    return 2.0 * tau / sq(std::sin(p.theta)) * (sq(2.0 * k * tau + 1.0) + sq(w * tau)) /
           (sq(2.0 * k * tau) + 2.0 * k * tau + sq(w * tau));
}

QubitDecayTimes qubit_decay_times(const QubitParams& p) {
    require_interior_angle(p.theta);
    require_positive(p.tau, "tau");
    const double tau = p.tau;
    const double w = p.omega;
    const double k = p.kappa;
    const double th = p.theta;
    const double csc2_half = 1.0 / sq(std::sin(th / 2.0));
    const double cot2_half = sq(std::cos(th / 2.0) / std::sin(th / 2.0));

    // The printed T_- denominator writes kappa (kappa tau + 2) in the cos(theta)
    // term; kappa tau (kappa tau + 2) is the dimensionally consistent form and
    // the one that matches the renewal solution for tau != 1.
    const double t_minus =
        tau * (k * tau + 1.0) * csc2_half * (sq(k * tau + 2.0) + sq(2.0 * w * tau)) /
        ((k * tau + 1.0) * (k * tau * (k * tau + 2.0) + sq(2.0 * w * tau)) -
         std::cos(th) * (k * tau * (k * tau + 2.0) - sq(2.0 * w * tau)));

    const double t_plus =
        tau * (1.0 + cot2_half *
                         (std::cos(th) * (k * tau * (k * tau + 2.0) - sq(2.0 * w * tau)) +
                          (k * tau + 1.0) * (k * tau * (k * tau + 2.0) + sq(2.0 * w * tau))) /
                         ((k * tau + 1.0) * (k * tau * (k * tau + 2.0) + sq(2.0 * w * tau)) -
                          std::cos(th) * (k * tau * (k * tau + 2.0) - sq(2.0 * w * tau))));
    return {t_minus, t_plus};
}

std::array<double, 9> QutritTimes::table_order() const {
    // State order: 0 = +1, 1 = 0, 2 = -1.
    return {times[0][0], times[1][0], times[2][0],
            times[0][1], times[1][1], times[2][1],
            times[0][2], times[1][2], times[2][2]};
}

QutritTimes qutrit_unitary_times(double omega, double tau) {
    require_positive(tau, "tau");
    if (!(omega * tau > 0.0)) {
        throw InvalidArgument("qutrit closed forms need omega tau > 0");
    }
    const double wt2 = sq(omega * tau);
    const double t_0p = tau * (7.0 / 2.0 + 2.0 / wt2);
    const double t_mp = 3.0 * tau * (1.0 + 1.0 / wt2);
    const double t_p0 = tau * (4.0 + 1.0 / wt2);
    const double t_m0 = t_p0;
    const double t_pm = t_mp;
    const double t_0m = t_0p;
    const double ret = 3.0 * tau;

    QutritTimes q{};
    q.times[0] = {ret, t_p0, t_pm};
    q.times[1] = {t_0p, ret, t_0m};
    q.times[2] = {t_mp, t_m0, ret};
    return q;
}

double optimal_tau_unitary_qubit(double omega) {
    require_positive(omega, "omega");
    return 1.0 / omega;
}

}  // namespace qreset::oracles
