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

// qreset: mean return and switching times under measurement-induced resetting.
//
//   qreset solve|simulate|sweep|optimize --config <path> [--seed N]
//          [--trajectories N] [--threads N] [--out <path>] [--svg <path>]
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 disconnected state.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qreset/cli/commands.hpp"
#include "qreset/cli/config.hpp"
#include "qreset/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitDisconnected = 4;

int report_error(const std::string& kind, const std::string& message, int code,
                 const std::vector<std::size_t>& states = {}) {
    nlohmann::json err = {{"error", message}, {"kind", kind}};
    if (!states.empty()) {
        err["states"] = states;
    }
    std::cerr << err.dump() << '\n';
    return code;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw qreset::cli::ConfigError(path, "cannot open output file");
    }
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean return and switching times of measured open quantum systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trajectories;
    unsigned threads = 0;
    std::string out_path;
    std::string svg_path;

    std::string sweep_param;
    std::optional<double> sweep_from;
    std::optional<double> sweep_to;
    std::optional<int> sweep_steps;
    std::string sweep_mode;

    std::optional<long> opt_start;
    std::optional<double> opt_lo;
    std::optional<double> opt_hi;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--seed", seed, "master seed for Monte Carlo streams");
        sub->add_option("--trajectories", trajectories, "trajectories per start state");
        sub->add_option("--threads", threads, "worker threads (default: QRESET_THREADS or hardware)");
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--svg", svg_path, "SVG plot output (sweep only)");
    };
    CLI::App* solve = app.add_subcommand("solve", "renewal-equation mean times");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    CLI::App* optimize = app.add_subcommand("optimize", "optimal mean measurement time");
    for (auto* sub : {solve, simulate, sweep, optimize}) {
        add_common(sub);
    }
    sweep->add_option("--param", sweep_param, "theta | kappa | tau | omega");
    sweep->add_option("--from", sweep_from);
    sweep->add_option("--to", sweep_to);
    sweep->add_option("--steps", sweep_steps);
    sweep->add_option("--mode", sweep_mode, "solve | simulate | both");
    optimize->add_option("--start", opt_start, "start state whose mean time is minimized");
    optimize->add_option("--tau-min", opt_lo);
    optimize->add_option("--tau-max", opt_hi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    using namespace qreset;
    try {
        cli::RunConfig config = cli::load_config(config_path);
        if (seed) {
            config.seed = *seed;
        }
        if (trajectories) {
            if (*trajectories < 2) {
                throw cli::ConfigError("--trajectories", "must be at least 2");
            }
            config.trajectories = *trajectories;
        }

        if (solve->parsed()) {
            write_output(out_path, cli::cmd_solve(config).dump(2) + "\n");
        } else if (simulate->parsed()) {
            write_output(out_path, cli::cmd_simulate(config, threads).dump(2) + "\n");
        } else if (sweep->parsed()) {
            cli::SweepSpec spec = config.sweep.value_or(cli::SweepSpec{});
            if (!sweep_param.empty()) spec.parameter = sweep_param;
            if (sweep_from) spec.from = *sweep_from;
            if (sweep_to) spec.to = *sweep_to;
            if (sweep_steps) spec.steps = *sweep_steps;
            if (!sweep_mode.empty()) spec.mode = sweep_mode;
            if (spec.parameter.empty()) {
                throw cli::ConfigError("$.sweep.parameter", "no sweep parameter given");
            }
            const cli::SweepTable table = cli::cmd_sweep(config, spec, threads);
            write_output(out_path, table.to_csv());
            if (!svg_path.empty()) {
                write_output(svg_path, cli::sweep_svg(table));
            }
        } else if (optimize->parsed()) {
            cli::OptimizeSpec spec = config.optimize.value_or(cli::OptimizeSpec{});
            if (opt_start) {
                if (*opt_start < 0) {
                    throw cli::ConfigError("--start", "must be non-negative");
                }
                spec.start = *opt_start;
            }
            if (opt_lo) spec.tau_lo = *opt_lo;
            if (opt_hi) spec.tau_hi = *opt_hi;
            write_output(out_path, cli::cmd_optimize(config, spec).dump(2) + "\n");
        }
    } catch (const DisconnectedError& e) {
        return report_error("disconnected", e.what(), kExitDisconnected, e.states());
    } catch (const InvalidArgument& e) {
        return report_error("config", e.what(), kExitConfig);
    } catch (const NumericalError& e) {
        return report_error("numerical", e.what(), kExitNumerical);
    } catch (const Error& e) {
        return report_error("error", e.what(), kExitNumerical);
    }
    return 0;
}
