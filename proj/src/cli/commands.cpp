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

#include "qreset/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qreset/cli/svg.hpp"
#include "qreset/montecarlo.hpp"
#include "qreset/optimize.hpp"
#include "qreset/parallel.hpp"
#include "qreset/renewal.hpp"

namespace qreset::cli {

using nlohmann::json;

double round_sig12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string format_sig12(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

json number(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round_sig12(x);
}

json numbers(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(number(v[i]));
    }
    return out;
}

SimulationOptions simulation_options(const RunConfig& config, unsigned threads) {
    SimulationOptions opts;
    opts.max_measurements = config.max_measurements;
    opts.threads = threads;
    opts.survival_grid = config.survival_grid;
    return opts;
}

std::vector<double> sweep_grid(const SweepSpec& s) {
    std::vector<double> grid(static_cast<std::size_t>(s.steps));
    for (int k = 0; k < s.steps; ++k) {
        grid[static_cast<std::size_t>(k)] = s.from + (s.to - s.from) * k / (s.steps - 1);
    }
    return grid;
}

}  // namespace

json cmd_solve(const RunConfig& config) {
    const QuantumEvolution ev = config.evolution();
    const TransitionKernel kernel(ev, config.measurement_basis());
    const double tau = config.distribution.mean();
    const RenewalMatrices m = build_matrices(config.distribution, kernel, config.target);
    const RenewalSolution sol = mean_times(m);
    const auto unitality_grid = default_unitality_grid(tau);
    const bool unital = is_unital(ev, unitality_grid);
    const auto conn_grid = default_connectivity_grid(tau);
    const ConnectivityPartition part = connectivity(kernel, config.target, conn_grid);

    Eigen::VectorXd by_start(config.dimension);
    for (Index i = 0; i < config.dimension; ++i) {
        by_start[i] = sol.time_from(i);
    }
    json connected = json::array();
    for (Index i = 0; i < config.dimension; ++i) {
        if (sol.connected[static_cast<std::size_t>(i)]) {
            connected.push_back(i);
        }
    }
    json averaged = json::array();
    for (Index i = 0; i < config.dimension; ++i) {
        averaged.push_back(numbers(m.averaged.row(i).transpose()));
    }
    return {{"command", "solve"},
            {"config", config_to_json(config)},
            {"target", config.target},
            {"tau", number(tau)},
            {"T_star", number(sol.T_star)},
            {"others", sol.others},
            {"T", numbers(sol.T)},
            {"times_by_start", numbers(by_start)},
            {"N_c", sol.N_c},
            {"connected", connected},
            {"unital", unital},
            {"closure_residual", number(closure_check(m))},
            {"singular", sol.singular},
            {"smallest_singular_value", number(sol.smallest_singular_value)},
            {"column_sum_defect", number(m.column_sum_defect)},
            {"averaged_transitions", averaged},
            {"direct_connectivity",
             {{"connected", part.connected}, {"disconnected", part.disconnected}, {"evidence", numbers(part.evidence)}}}};
}

json cmd_simulate(const RunConfig& config, unsigned threads) {
    const TransitionKernel kernel(config.evolution(), config.measurement_basis());
    const SimulationOptions opts = simulation_options(config, threads);
    json estimates = json::array();
    for (Index start : config.start_states()) {
        const EstimateReport r = estimate_mean_time(kernel, config.distribution, start, config.target,
                                                    config.trajectories, config.seed, opts);
        json entry = {{"start", start},
                      {"mean", number(r.mean)},
                      {"std_error", number(r.std_error)},
                      {"n_trajectories", r.n_trajectories},
                      {"mean_measurements", number(r.mean_measurements)},
                      {"std_error_measurements", number(r.std_error_measurements)},
                      {"wald_gap", number(r.wald_gap)},
                      {"wald_std_error", number(r.wald_std_error)}};
        if (!r.empirical_survival.empty()) {
            json curve = json::array();
            for (const auto& [t, q] : r.empirical_survival) {
                curve.push_back({number(t), number(q)});
            }
            entry["empirical_survival"] = curve;
        }
        estimates.push_back(std::move(entry));
    }
    return {{"command", "simulate"},
            {"config", config_to_json(config)},
            {"target", config.target},
            {"tau", number(config.distribution.mean())},
            {"seed", config.seed},
            {"trajectories", config.trajectories},
            {"estimates", estimates}};
}

std::string SweepTable::to_csv() const {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_sig12(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

int SweepTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == name) {
            return static_cast<int>(c);
        }
    }
    return -1;
}

SweepTable cmd_sweep(const RunConfig& config, const SweepSpec& sweep, unsigned threads) {
    if (sweep.steps < 2) {
        throw ConfigError("$.sweep.steps", "must be at least 2");
    }
    const bool solve = sweep.mode == "solve" || sweep.mode == "both";
    const bool simulate = sweep.mode == "simulate" || sweep.mode == "both";
    if (!solve && !simulate) {
        throw ConfigError("$.sweep.mode", "expected solve, simulate, or both");
    }
    const std::vector<double> grid = sweep_grid(sweep);
    // Fail fast on parameters the configuration does not have.
    (void)config.with_parameter(sweep.parameter, grid.front());

    SweepTable table;
    table.parameter = sweep.parameter;
    table.dimension = static_cast<int>(config.dimension);
    table.target = config.target;
    table.columns.push_back(sweep.parameter);
    if (solve) {
        for (Index i = 0; i < config.dimension; ++i) {
            table.columns.push_back("T_" + std::to_string(i));
        }
        table.columns.push_back("N_c");
    }
    const std::vector<Index> starts = config.start_states();
    if (simulate) {
        for (Index i : starts) {
            table.columns.push_back("mc_T_" + std::to_string(i));
            table.columns.push_back("mc_se_" + std::to_string(i));
        }
    }
    table.rows.resize(grid.size());

    parallel_for(grid.size(), resolve_threads(threads), [&](std::size_t k) {
        const RunConfig point = config.with_parameter(sweep.parameter, grid[k]);
        const TransitionKernel kernel(point.evolution(), point.measurement_basis());
        std::vector<double> row{grid[k]};
        if (solve) {
            const RenewalSolution sol = mean_times(build_matrices(point.distribution, kernel, point.target));
            for (Index i = 0; i < point.dimension; ++i) {
                row.push_back(sol.time_from(i));
            }
            row.push_back(sol.N_c);
        }
        if (simulate) {
            SimulationOptions opts = simulation_options(point, 1);
            opts.survival_grid.clear();
            const std::uint64_t seed = mix_seed(point.seed + k);
            for (Index start : starts) {
                const EstimateReport r =
                    estimate_mean_time(kernel, point.distribution, start, point.target, point.trajectories, seed, opts);
                row.push_back(r.mean);
                row.push_back(r.std_error);
            }
        }
        table.rows[k] = std::move(row);
    });
    return table;
}

std::string sweep_svg(const SweepTable& table) {
    std::vector<PlotSeries> series;
    for (int i = 0; i < table.dimension; ++i) {
        const std::string name = (i == table.target ? "T_star (state " : "T from state ") + std::to_string(i) +
                                 (i == table.target ? ")" : "");
        const int analytic = table.column("T_" + std::to_string(i));
        const int mc = table.column("mc_T_" + std::to_string(i));
        for (auto [col, markers] : {std::pair{analytic, false}, std::pair{mc, true}}) {
            if (col < 0) {
                continue;
            }
            PlotSeries s;
            s.label = name + (markers ? " (simulation)" : " (renewal)");
            s.markers = markers;
            for (const auto& row : table.rows) {
                s.x.push_back(row[0]);
                s.y.push_back(row[static_cast<std::size_t>(col)]);
            }
            series.push_back(std::move(s));
        }
    }
    return render_svg("Mean detection times", table.parameter, "mean time", series);
}

json cmd_optimize(const RunConfig& config, const OptimizeSpec& spec) {
    if (spec.start < 0 || spec.start >= config.dimension) {
        throw ConfigError("$.optimize.start", "index out of range");
    }
    const TransitionKernel kernel(config.evolution(), config.measurement_basis());
    auto objective = [&](double tau) {
        const auto dist = config.distribution.with_mean(tau);
        return mean_times(build_matrices(dist, kernel, config.target)).time_from(spec.start);
    };
    const OptimizationResult r = minimize_tau(objective, spec.tau_lo, spec.tau_hi);
    json probes = json::array();
    for (const auto& p : r.best_probes) {
        probes.push_back({number(p.tau), number(p.value)});
    }
    return {{"command", "optimize"},
            {"config", config_to_json(config)},
            {"target", config.target},
            {"start", spec.start},
            {"range", {number(spec.tau_lo), number(spec.tau_hi)}},
            {"tau_star", number(r.tau_star)},
            {"T_min", number(r.T_min)},
            {"bracket", {number(r.bracket.first), number(r.bracket.second)}},
            {"converged", r.converged},
            {"interior", r.interior},
            {"best_probes", probes},
            {"evaluations", r.evaluations}};
}

void validate_report(const json& report) {
    auto need = [&](const char* key, auto&& pred) {
        if (!report.contains(key) || !pred(report.at(key))) {
            throw ConfigError(std::string("$.") + key, "missing or malformed report field");
        }
    };
    auto is_num = [](const json& v) { return v.is_number() || v.is_null(); };
    auto is_arr = [](const json& v) { return v.is_array(); };
    auto is_bool = [](const json& v) { return v.is_boolean(); };
    auto is_int = [](const json& v) { return v.is_number_integer(); };
    need("command", [](const json& v) { return v.is_string(); });
    need("config", [](const json& v) { return v.is_object(); });
    parse_config(report.at("config"));
    const std::string cmd = report.at("command").get<std::string>();
    if (cmd == "solve") {
        need("T_star", is_num);
        need("T", is_arr);
        need("N_c", is_int);
        need("unital", is_bool);
        need("closure_residual", is_num);
        need("singular", is_bool);
        need("smallest_singular_value", is_num);
    } else if (cmd == "simulate") {
        need("estimates", is_arr);
        for (const auto& e : report.at("estimates")) {
            for (const char* k : {"start", "mean", "std_error", "n_trajectories", "mean_measurements"}) {
                if (!e.contains(k)) {
                    throw ConfigError(std::string("$.estimates[].") + k, "missing report field");
                }
            }
        }
    } else if (cmd == "optimize") {
        need("tau_star", is_num);
        need("T_min", is_num);
        need("bracket", is_arr);
        need("converged", is_bool);
        need("interior", is_bool);
    } else {
        throw ConfigError("$.command", "unknown report command " + cmd);
    }
}

}  // namespace qreset::cli
