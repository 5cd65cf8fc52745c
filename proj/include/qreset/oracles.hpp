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

#include <array>

// Closed-form mean times for the exponential measurement-time density.
// Formulas are transcribed as printed, without simplification, so they stay
// independent of the renewal solver they are checked against.

namespace qreset::oracles {

struct QubitParams {
    double omega = 1.0;
    double kappa = 0.0;
    /// Measurement basis angle, strictly inside (0, pi).
    double theta = 1.5707963267948966;
    double tau = 1.0;
};

/// H = omega sigma_z / 2: T_- = 2 tau / sin^2(theta) (1 + 1/(omega tau)^2).
double qubit_unitary_t_minus(const QubitParams& p);

/// Dephasing with J = sigma_z at rate kappa.
double qubit_dephasing_t_minus(const QubitParams& p);

struct QubitDecayTimes {
    double t_minus;
    double t_plus;
};

/// Spontaneous decay with J = sigma_- at rate kappa.
QubitDecayTimes qubit_decay_times(const QubitParams& p);

/// Spin-1 under exp(-i omega t S_x), measured in the S_z basis ordered
/// (+1, 0, -1). times[in][out] is the mean time to detect `out` starting from `in`.
struct QutritTimes {
    std::array<std::array<double, 3>, 3> times;

    /// (T_++, T_0+, T_-+, T_+0, T_00, T_-0, T_+-, T_0-, T_--)
    std::array<double, 9> table_order() const;
};

QutritTimes qutrit_unitary_times(double omega, double tau);

/// Mean measurement time minimizing qubit_unitary_t_minus.
double optimal_tau_unitary_qubit(double omega);

}  // namespace qreset::oracles
