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

#include "qreset/cli/config.hpp"

#include <fstream>
#include <sstream>

namespace qreset::cli {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(path + "." + key, "missing required field");
    }
    return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    return v.get<double>();
}

double positive_number(const json& v, const std::string& path) {
    const double x = as_number(v, path);
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw ConfigError(path, "must be positive");
    }
    return x;
}

Index as_index(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(path, "expected a non-negative integer");
    }
    return static_cast<Index>(v.get<long long>());
}

Complex as_complex(const json& v, const std::string& path) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError(path, "expected a complex number as [re, im]");
}

Operator as_matrix(const json& v, Index dim, const std::string& path) {
    if (!v.is_array() || static_cast<Index>(v.size()) != dim) {
        throw ConfigError(path, "expected " + std::to_string(dim) + " rows");
    }
    Operator m(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        const json& row = v[static_cast<std::size_t>(r)];
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
            throw ConfigError(rp, "expected " + std::to_string(dim) + " entries");
        }
        for (Index c = 0; c < dim; ++c) {
            m(r, c) = as_complex(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

HamiltonianSpec parse_hamiltonian(const json& v, Index dim, const std::string& path) {
    HamiltonianSpec h;
    if (v.is_array()) {
        h.form = HamiltonianSpec::Form::Explicit;
        h.matrix = as_matrix(v, dim, path);
        return h;
    }
    if (!v.is_object()) {
        throw ConfigError(path, "expected a matrix or a model object");
    }
    const std::string model = require(v, "model", path).is_string() ? v.at("model").get<std::string>() : "";
    h.omega = as_number(require(v, "omega", path), path + ".omega");
    if (model == "qubit_sigma_z") {
        if (dim != 2) {
            throw ConfigError(path + ".model", "qubit_sigma_z needs dimension 2");
        }
        h.form = HamiltonianSpec::Form::QubitSigmaZ;
    } else if (model == "spin_x") {
        h.form = HamiltonianSpec::Form::SpinX;
    } else {
        throw ConfigError(path + ".model", "expected \"qubit_sigma_z\" or \"spin_x\"");
    }
    return h;
}

DissipatorSpec parse_dissipator(const json& v, Index dim, const std::string& path) {
    DissipatorSpec d;
    d.rate = as_number(require(v, "rate", path), path + ".rate");
    if (d.rate < 0.0) {
        throw ConfigError(path + ".rate", "must be non-negative");
    }
    const json& jump = require(v, "jump", path);
    if (jump.is_string()) {
        d.named = jump.get<std::string>();
        if (d.named != "sigma_minus" && d.named != "sigma_z") {
            throw ConfigError(path + ".jump", "expected \"sigma_minus\", \"sigma_z\", or a matrix");
        }
        if (dim != 2) {
            throw ConfigError(path + ".jump", "named jump operators need dimension 2");
        }
        d.jump = d.named == "sigma_z" ? pauli_z() : sigma_minus();
    } else {
        d.jump = as_matrix(jump, dim, path + ".jump");
    }
    return d;
}

BasisSpec parse_basis(const json& v, Index dim, const std::string& path) {
    BasisSpec b;
    if (!v.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    if (v.contains("qubit_theta")) {
        if (dim != 2) {
            throw ConfigError(path + ".qubit_theta", "needs dimension 2");
        }
        b.form = BasisSpec::Form::QubitTheta;
        b.theta = as_number(v.at("qubit_theta"), path + ".qubit_theta");
        if (!(b.theta >= 0.0 && b.theta <= M_PI)) {
            throw ConfigError(path + ".qubit_theta", "must lie in [0, pi]");
        }
    } else if (v.contains("spin_z")) {
        b.form = BasisSpec::Form::SpinZ;
        if (as_index(v.at("spin_z"), path + ".spin_z") != dim) {
            throw ConfigError(path + ".spin_z", "must equal the dimension");
        }
    } else if (v.contains("vectors")) {
        b.form = BasisSpec::Form::Explicit;
        const json& vs = v.at("vectors");
        if (!vs.is_array() || static_cast<Index>(vs.size()) != dim) {
            throw ConfigError(path + ".vectors", "expected " + std::to_string(dim) + " vectors");
        }
        b.vectors.resize(dim, dim);
        for (Index i = 0; i < dim; ++i) {
            const json& vec = vs[static_cast<std::size_t>(i)];
            const std::string vp = path + ".vectors[" + std::to_string(i) + "]";
            if (!vec.is_array() || static_cast<Index>(vec.size()) != dim) {
                throw ConfigError(vp, "expected " + std::to_string(dim) + " components");
            }
            for (Index k = 0; k < dim; ++k) {
                b.vectors(k, i) = as_complex(vec[static_cast<std::size_t>(k)], vp + "[" + std::to_string(k) + "]");
            }
        }
        try {
            MeasurementBasis check(b.vectors);
        } catch (const InvalidArgument& e) {
            throw ConfigError(path + ".vectors", e.what());
        }
    } else {
        throw ConfigError(path, "expected one of qubit_theta, spin_z, vectors");
    }
    return b;
}

MeasurementTimeDistribution parse_distribution(const json& v, const std::string& path) {
    const json& type = require(v, "type", path);
    if (!type.is_string()) {
        throw ConfigError(path + ".type", "expected a string");
    }
    const std::string t = type.get<std::string>();
    if (t == "exponential") {
        return MeasurementTimeDistribution::exponential(positive_number(require(v, "tau", path), path + ".tau"));
    }
    if (t == "deterministic") {
        return MeasurementTimeDistribution::deterministic(positive_number(require(v, "tau", path), path + ".tau"));
    }
    if (t == "gamma") {
        return MeasurementTimeDistribution::gamma(positive_number(require(v, "shape", path), path + ".shape"),
                                                  positive_number(require(v, "tau", path), path + ".tau"));
    }
    if (t == "truncated_normal") {
        const double loc = as_number(require(v, "location", path), path + ".location");
        const double sd = positive_number(require(v, "stddev", path), path + ".stddev");
        try {
            return MeasurementTimeDistribution::truncated_normal(loc, sd);
        } catch (const InvalidArgument& e) {
            throw ConfigError(path, e.what());
        }
    }
    throw ConfigError(path + ".type", "expected exponential, deterministic, gamma, or truncated_normal");
}

json distribution_to_json(const MeasurementTimeDistribution& d) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ExponentialTimes>) {
                return {{"type", "exponential"}, {"tau", p.mean}};
            } else if constexpr (std::is_same_v<T, DeterministicTimes>) {
                return {{"type", "deterministic"}, {"tau", p.time}};
            } else if constexpr (std::is_same_v<T, GammaTimes>) {
                return {{"type", "gamma"}, {"shape", p.shape}, {"tau", p.mean}};
            } else {
                return {{"type", "truncated_normal"}, {"location", p.location}, {"stddev", p.stddev}};
            }
        },
        d.params());
}

}  // namespace

json operator_to_json(const Operator& op) {
    json rows = json::array();
    for (Index r = 0; r < op.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < op.cols(); ++c) {
            row.push_back(complex_to_json(op(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("$", "config must be a JSON object");
    }
    RunConfig c;
    c.dimension = as_index(require(doc, "dimension", "$"), "$.dimension");
    if (c.dimension < 2) {
        throw ConfigError("$.dimension", "must be at least 2");
    }
    const json& ev = require(doc, "evolution", "$");
    c.hamiltonian = parse_hamiltonian(require(ev, "hamiltonian", "$.evolution"), c.dimension, "$.evolution.hamiltonian");
    if (ev.contains("dissipators")) {
        const json& ds = ev.at("dissipators");
        if (!ds.is_array()) {
            throw ConfigError("$.evolution.dissipators", "expected an array");
        }
        for (std::size_t k = 0; k < ds.size(); ++k) {
            c.dissipators.push_back(
                parse_dissipator(ds[k], c.dimension, "$.evolution.dissipators[" + std::to_string(k) + "]"));
        }
    }
    if (ev.contains("type")) {
        if (!ev.at("type").is_string()) {
            throw ConfigError("$.evolution.type", "expected a string");
        }
        c.evolution_type = ev.at("type").get<std::string>();
    } else {
        c.evolution_type = c.dissipators.empty() ? "unitary" : "lindblad";
    }
    if (c.evolution_type != "unitary" && c.evolution_type != "lindblad") {
        throw ConfigError("$.evolution.type", "expected \"unitary\" or \"lindblad\"");
    }
    if (c.evolution_type == "unitary" && !c.dissipators.empty()) {
        throw ConfigError("$.evolution.dissipators", "unitary evolutions take no dissipators");
    }
    if (c.hamiltonian.form == HamiltonianSpec::Form::Explicit &&
        hermiticity_defect(c.hamiltonian.matrix) > tolerance::kHermitian) {
        throw ConfigError("$.evolution.hamiltonian", "matrix is not Hermitian");
    }

    c.basis = parse_basis(require(doc, "basis", "$"), c.dimension, "$.basis");
    c.distribution = parse_distribution(require(doc, "distribution", "$"), "$.distribution");
    c.target = as_index(require(doc, "target", "$"), "$.target");
    if (c.target >= c.dimension) {
        throw ConfigError("$.target", "index out of range");
    }
    if (doc.contains("seed")) {
        const json& seed = doc.at("seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
            throw ConfigError("$.seed", "expected a non-negative integer");
        }
        c.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("trajectories")) {
        c.trajectories = static_cast<std::size_t>(as_index(doc.at("trajectories"), "$.trajectories"));
        if (c.trajectories < 2) {
            throw ConfigError("$.trajectories", "must be at least 2");
        }
    }
    if (doc.contains("max_measurements")) {
        c.max_measurements = static_cast<std::uint64_t>(as_index(doc.at("max_measurements"), "$.max_measurements"));
        if (c.max_measurements < 1) {
            throw ConfigError("$.max_measurements", "must be positive");
        }
    }
    if (doc.contains("starts")) {
        const json& s = doc.at("starts");
        if (!s.is_array()) {
            throw ConfigError("$.starts", "expected an array of state indices");
        }
        for (std::size_t k = 0; k < s.size(); ++k) {
            const Index i = as_index(s[k], "$.starts[" + std::to_string(k) + "]");
            if (i >= c.dimension) {
                throw ConfigError("$.starts[" + std::to_string(k) + "]", "index out of range");
            }
            c.starts.push_back(i);
        }
    }
    if (doc.contains("survival_grid")) {
        const json& g = doc.at("survival_grid");
        if (!g.is_array()) {
            throw ConfigError("$.survival_grid", "expected an array of times");
        }
        for (std::size_t k = 0; k < g.size(); ++k) {
            c.survival_grid.push_back(as_number(g[k], "$.survival_grid[" + std::to_string(k) + "]"));
        }
    }
    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        SweepSpec sw;
        const json& p = require(s, "parameter", "$.sweep");
        sw.parameter = p.is_string() ? p.get<std::string>() : "";
        if (sw.parameter != "theta" && sw.parameter != "kappa" && sw.parameter != "tau" && sw.parameter != "omega") {
            throw ConfigError("$.sweep.parameter", "expected theta, kappa, tau, or omega");
        }
        sw.from = as_number(require(s, "from", "$.sweep"), "$.sweep.from");
        sw.to = as_number(require(s, "to", "$.sweep"), "$.sweep.to");
        sw.steps = static_cast<int>(as_index(require(s, "steps", "$.sweep"), "$.sweep.steps"));
        if (sw.steps < 2) {
            throw ConfigError("$.sweep.steps", "must be at least 2");
        }
        if (s.contains("mode")) {
            sw.mode = s.at("mode").is_string() ? s.at("mode").get<std::string>() : "";
            if (sw.mode != "solve" && sw.mode != "simulate" && sw.mode != "both") {
                throw ConfigError("$.sweep.mode", "expected solve, simulate, or both");
            }
        }
        c.sweep = sw;
    }
    if (doc.contains("optimize")) {
        const json& o = doc.at("optimize");
        OptimizeSpec op;
        op.start = as_index(require(o, "start", "$.optimize"), "$.optimize.start");
        if (op.start >= c.dimension) {
            throw ConfigError("$.optimize.start", "index out of range");
        }
        if (o.contains("range")) {
            const json& r = o.at("range");
            if (!r.is_array() || r.size() != 2) {
                throw ConfigError("$.optimize.range", "expected [tau_lo, tau_hi]");
            }
            op.tau_lo = positive_number(r[0], "$.optimize.range[0]");
            op.tau_hi = positive_number(r[1], "$.optimize.range[1]");
            if (!(op.tau_hi > op.tau_lo)) {
                throw ConfigError("$.optimize.range", "tau_hi must exceed tau_lo");
            }
        }
        c.optimize = op;
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path, "cannot open config file");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path, std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

json config_to_json(const RunConfig& c) {
    json ev;
    ev["type"] = c.evolution_type;
    switch (c.hamiltonian.form) {
        case HamiltonianSpec::Form::Explicit:
            ev["hamiltonian"] = operator_to_json(c.hamiltonian.matrix);
            break;
        case HamiltonianSpec::Form::QubitSigmaZ:
            ev["hamiltonian"] = {{"model", "qubit_sigma_z"}, {"omega", c.hamiltonian.omega}};
            break;
        case HamiltonianSpec::Form::SpinX:
            ev["hamiltonian"] = {{"model", "spin_x"}, {"omega", c.hamiltonian.omega}};
            break;
    }
    if (!c.dissipators.empty()) {
        json ds = json::array();
        for (const auto& d : c.dissipators) {
            ds.push_back({{"rate", d.rate}, {"jump", d.named.empty() ? operator_to_json(d.jump) : json(d.named)}});
        }
        ev["dissipators"] = ds;
    }
    json basis;
    switch (c.basis.form) {
        case BasisSpec::Form::QubitTheta:
            basis["qubit_theta"] = c.basis.theta;
            break;
        case BasisSpec::Form::SpinZ:
            basis["spin_z"] = c.dimension;
            break;
        case BasisSpec::Form::Explicit: {
            json vs = json::array();
            for (Index i = 0; i < c.dimension; ++i) {
                json v = json::array();
                for (Index k = 0; k < c.dimension; ++k) {
                    v.push_back(complex_to_json(c.basis.vectors(k, i)));
                }
                vs.push_back(v);
            }
            basis["vectors"] = vs;
            break;
        }
    }
    json doc = {{"dimension", c.dimension},
                {"evolution", ev},
                {"basis", basis},
                {"distribution", distribution_to_json(c.distribution)},
                {"target", c.target},
                {"seed", c.seed},
                {"trajectories", c.trajectories},
                {"max_measurements", c.max_measurements}};
    if (!c.starts.empty()) {
        doc["starts"] = c.starts;
    }
    if (!c.survival_grid.empty()) {
        doc["survival_grid"] = c.survival_grid;
    }
    if (c.sweep) {
        doc["sweep"] = {{"parameter", c.sweep->parameter},
                        {"from", c.sweep->from},
                        {"to", c.sweep->to},
                        {"steps", c.sweep->steps},
                        {"mode", c.sweep->mode}};
    }
    if (c.optimize) {
        doc["optimize"] = {{"start", c.optimize->start}, {"range", {c.optimize->tau_lo, c.optimize->tau_hi}}};
    }
    return doc;
}

QuantumEvolution RunConfig::evolution() const {
    Operator h;
    switch (hamiltonian.form) {
        case HamiltonianSpec::Form::Explicit:
            h = hamiltonian.matrix;
            break;
        case HamiltonianSpec::Form::QubitSigmaZ:
            h = hamiltonian.omega * pauli_z() / 2.0;
            break;
        case HamiltonianSpec::Form::SpinX:
            h = hamiltonian.omega * spin_x(dimension);
            break;
    }
    if (evolution_type == "unitary") {
        return QuantumEvolution::unitary(std::move(h));
    }
    std::vector<Dissipator> ds;
    for (const auto& d : dissipators) {
        ds.push_back({d.rate, d.jump});
    }
    return QuantumEvolution::lindblad(std::move(h), std::move(ds));
}

MeasurementBasis RunConfig::measurement_basis() const {
    switch (basis.form) {
        case BasisSpec::Form::QubitTheta:
            return MeasurementBasis::qubit(basis.theta);
        case BasisSpec::Form::SpinZ:
            return MeasurementBasis::computational(dimension);
        case BasisSpec::Form::Explicit:
            break;
    }
    return MeasurementBasis(basis.vectors);
}

std::vector<Index> RunConfig::start_states() const {
    if (!starts.empty()) {
        return starts;
    }
    std::vector<Index> all(static_cast<std::size_t>(dimension));
    for (Index i = 0; i < dimension; ++i) {
        all[static_cast<std::size_t>(i)] = i;
    }
    return all;
}

RunConfig RunConfig::with_parameter(const std::string& name, double value) const {
    RunConfig c = *this;
    if (name == "theta") {
        if (basis.form != BasisSpec::Form::QubitTheta) {
            throw ConfigError("$.basis", "parameter theta needs a qubit_theta basis");
        }
        if (!(value >= 0.0 && value <= M_PI)) {
            throw ConfigError("$.basis.qubit_theta", "must lie in [0, pi]");
        }
        c.basis.theta = value;
    } else if (name == "kappa") {
        if (dissipators.empty()) {
            throw ConfigError("$.evolution.dissipators", "parameter kappa needs at least one dissipator");
        }
        if (!(value >= 0.0)) {
            throw ConfigError("$.evolution.dissipators", "kappa must be non-negative");
        }
        for (auto& d : c.dissipators) {
            d.rate = value;
        }
    } else if (name == "omega") {
        if (hamiltonian.form == HamiltonianSpec::Form::Explicit) {
            throw ConfigError("$.evolution.hamiltonian", "parameter omega needs a model Hamiltonian");
        }
        c.hamiltonian.omega = value;
    } else if (name == "tau") {
        if (!(value > 0.0)) {
            throw ConfigError("$.distribution", "tau must be positive");
        }
        c.distribution = distribution.with_mean(value);
    } else {
        throw ConfigError("$.sweep.parameter", "unknown parameter " + name);
    }
    return c;
}

}  // namespace qreset::cli
