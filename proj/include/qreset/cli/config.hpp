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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qreset/errors.hpp"
#include "qreset/evolution.hpp"
#include "qreset/timing.hpp"

namespace qreset::cli {

/// Schema violation; the message starts with the offending field path.
class ConfigError : public InvalidArgument {
public:
    ConfigError(const std::string& field, const std::string& message)
        : InvalidArgument(field + ": " + message), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct HamiltonianSpec {
    enum class Form { Explicit, QubitSigmaZ, SpinX };
    Form form = Form::Explicit;
    Operator matrix;  // Explicit only
    double omega = 1.0;
};

struct DissipatorSpec {
    double rate = 0.0;
    /// "sigma_minus", "sigma_z", or empty for an explicit matrix.
    std::string named;
    Operator jump;
};

struct BasisSpec {
    enum class Form { Explicit, QubitTheta, SpinZ };
    Form form = Form::SpinZ;
    Operator vectors;  // Explicit only, column i = |m_i>
    double theta = 0.0;
};

struct SweepSpec {
    std::string parameter;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    std::string mode = "solve";  // solve | simulate | both
};

struct OptimizeSpec {
    Index start = 0;
    double tau_lo = 0.01;
    double tau_hi = 100.0;
};

struct RunConfig {
    Index dimension = 0;
    std::string evolution_type;  // unitary | lindblad
    HamiltonianSpec hamiltonian;
    std::vector<DissipatorSpec> dissipators;
    BasisSpec basis;
    MeasurementTimeDistribution distribution = MeasurementTimeDistribution::exponential(1.0);
    Index target = 0;
    std::uint64_t seed = 0;
    std::size_t trajectories = 1000;
    std::uint64_t max_measurements = 10'000'000;
    /// Start states for simulations; empty means every state.
    std::vector<Index> starts;
    std::vector<double> survival_grid;
    std::optional<SweepSpec> sweep;
    std::optional<OptimizeSpec> optimize;

    QuantumEvolution evolution() const;
    MeasurementBasis measurement_basis() const;
    std::vector<Index> start_states() const;

    /// Copy with one model parameter replaced (theta, kappa, tau, omega).
    /// Throws ConfigError when the configuration has no such parameter.
    RunConfig with_parameter(const std::string& name, double value) const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& config);

nlohmann::json operator_to_json(const Operator& op);

}  // namespace qreset::cli
