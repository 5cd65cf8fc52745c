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

// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: qreset_acceptance [output_dir]
// Sweep CSV and SVG files are written to output_dir (default: acceptance_output).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qreset/cli/commands.hpp"
#include "qreset/cli/config.hpp"
#include "qreset/montecarlo.hpp"
#include "qreset/optimize.hpp"
#include "qreset/oracles.hpp"
#include "qreset/renewal.hpp"
#include "support/models.hpp"

using namespace qreset;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit;  // seconds; 0 when none is stated
    std::function<Outcome()> run;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::filesystem::path g_output_dir = "acceptance_output";

// Shared between criteria 1 and 3.
struct UnitalCase {
    RenewalMatrices matrices;
    Index n;
    std::string dist;
};
std::vector<UnitalCase> g_unital_cases;

MeasurementTimeDistribution pick_distribution(int k, double tau) {
    switch (k % 3) {
        case 0: return MeasurementTimeDistribution::exponential(tau);
        case 1: return MeasurementTimeDistribution::gamma(0.5 + k % 4, tau);
        default: return MeasurementTimeDistribution::deterministic(tau);
    }
}

const std::vector<UnitalCase>& unital_cases() {
    if (!g_unital_cases.empty()) {
        return g_unital_cases;
    }
    testing::Rng rng(20260101);
    std::uniform_real_distribution<double> taus(0.4, 2.5);
    for (int k = 0; k < 20; ++k) {
        const Index n = 2 + k % 4;
        const auto ev = testing::random_lindblad(n, rng, true, 1 + k % 3);
        const auto basis = testing::random_basis(n, rng);
        const auto dist = pick_distribution(k, taus(rng));
        const Index target = k % n;
        g_unital_cases.push_back({build_matrices(ev, dist, basis, target), n, dist.name()});
    }
    return g_unital_cases;
}

Outcome universal_return_law() {
    Outcome o;
    double worst = 0.0;
    for (const auto& c : unital_cases()) {
        const auto s = mean_times(c.matrices);
        const double expected = double(c.n) * c.matrices.tau;
        const double err = rel(s.T_star, expected);
        worst = std::max(worst, err);
        if (!(err <= 1e-6) || s.N_c != c.n) {
            o.pass = false;
        }
    }
    o.detail = "20 configs, worst rel err " + fmt("%.2e", worst);
    return o;
}

Outcome block_structure_law() {
    Outcome o;
    double worst = 0.0;
    std::string counts;
    auto check = [&](const QuantumEvolution& ev, const MeasurementBasis& basis, Index target, int expected_nc) {
        for (int k = 0; k < 3; ++k) {
            const double tau = 0.8 + 0.3 * k;
            const auto dist = pick_distribution(k, tau);
            const auto s = mean_times(build_matrices(ev, dist, basis, target));
            const double err = std::abs(s.T_star - s.N_c * tau) / tau;
            worst = std::max(worst, err);
            if (!(err <= 1e-6) || s.N_c != expected_nc) {
                o.pass = false;
            }
            if (k == 0) {
                counts += (counts.empty() ? "" : ",") + std::to_string(s.N_c);
            }
        }
    };
    for (double theta : {0.0, kPi}) {
        check(testing::qubit_unitary(1.0), MeasurementBasis::qubit(theta), 0, 1);
        check(testing::qubit_dephasing(1.0, 0.3), MeasurementBasis::qubit(theta), 1, 1);
    }
    testing::Rng rng(4);
    Operator h = Operator::Zero(4, 4);
    h.topLeftCorner(2, 2) = testing::random_hermitian(2, rng);
    h.bottomRightCorner(2, 2) = testing::random_hermitian(2, rng);
    Operator v = Operator::Zero(4, 4);
    v.topLeftCorner(2, 2) = testing::random_unitary(2, rng);
    v.bottomRightCorner(2, 2) = testing::random_unitary(2, rng);
    check(QuantumEvolution::unitary(h), MeasurementBasis(v), 0, 2);
    check(QuantumEvolution::unitary(h), MeasurementBasis(v), 3, 2);
    o.detail = "N_c = {" + counts + "}, worst |T*-N_c tau|/tau " + fmt("%.2e", worst);
    return o;
}

Outcome closure_relation() {
    Outcome o;
    double worst = 0.0;
    for (const auto& c : unital_cases()) {
        worst = std::max(worst, closure_check(c.matrices));
    }
    const double decay = closure_check(build_matrices(testing::qubit_decay(1.0, 1.0),
                                                      MeasurementTimeDistribution::exponential(1.0),
                                                      MeasurementBasis::qubit(kPi / 3), 0));
    o.pass = worst <= 1e-8 && decay > 1e-3;
    o.detail = "unital max " + fmt("%.2e", worst) + ", decay (kappa tau=1, theta=pi/3) " + fmt("%.4f", decay);
    return o;
}

Outcome qubit_closed_forms() {
    Outcome o;
    testing::Rng rng(99);
    std::uniform_real_distribution<double> thetas(0.15, kPi - 0.15);
    std::uniform_real_distribution<double> logs(std::log(0.05), std::log(5.0));
    std::uniform_real_distribution<double> taus(0.3, 3.0);
    double worst_u = 0.0;
    double worst_d = 0.0;
    double worst_decay = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double theta = thetas(rng);
        const double tau = taus(rng);
        const double omega = std::exp(logs(rng)) / tau;
        const double kappa = std::exp(logs(rng)) / tau;
        const oracles::QubitParams p{omega, kappa, theta, tau};
        const auto dist = MeasurementTimeDistribution::exponential(tau);
        const auto basis = MeasurementBasis::qubit(theta);

        const auto u = mean_times(build_matrices(testing::qubit_unitary(omega), dist, basis, 0));
        worst_u = std::max(worst_u, rel(u.T(0), oracles::qubit_unitary_t_minus(p)));
        const auto d = mean_times(build_matrices(testing::qubit_dephasing(omega, kappa), dist, basis, 0));
        worst_d = std::max(worst_d, rel(d.T(0), oracles::qubit_dephasing_t_minus(p)));
        const auto dec = mean_times(build_matrices(testing::qubit_decay(omega, kappa), dist, basis, 0));
        const auto oracle = oracles::qubit_decay_times(p);
        worst_decay = std::max({worst_decay, rel(dec.T(0), oracle.t_minus), rel(dec.T_star, oracle.t_plus)});
    }
    o.pass = worst_u <= 1e-6 && worst_d <= 1e-6 && worst_decay <= 1e-6;
    o.detail = "worst rel err unitary " + fmt("%.2e", worst_u) + ", dephasing " + fmt("%.2e", worst_d) + ", decay " +
               fmt("%.2e", worst_decay);
    return o;
}

Outcome spin_one_table() {
    Outcome o;
    const std::array<double, 9> theory{3, 5.5, 6, 5, 3, 5, 6, 5.5, 3};
    const auto closed = oracles::qutrit_unitary_times(1.0, 1.0).table_order();
    bool exact = true;
    for (std::size_t k = 0; k < 9; ++k) {
        exact = exact && closed[k] == theory[k];
    }

    const TransitionKernel kernel(testing::qutrit_sx(1.0), MeasurementBasis::computational(3));
    const auto dist = MeasurementTimeDistribution::exponential(1.0);
    double worst_solver = 0.0;
    double worst_z = 0.0;
    std::ostringstream mc;
    std::array<double, 9> estimates{};
    for (Index target = 0; target < 3; ++target) {
        const auto s = mean_times(build_matrices(dist, kernel, target));
        const auto reports = estimate_mean_times(kernel, dist, target, 10000, 1000 + target);
        for (Index start = 0; start < 3; ++start) {
            const std::size_t slot = static_cast<std::size_t>(3 * target + start);
            worst_solver = std::max(worst_solver, rel(s.time_from(start), theory[slot]));
            const auto& r = reports.at(start);
            worst_z = std::max(worst_z, std::abs(r.mean - theory[slot]) / r.std_error);
            estimates[slot] = r.mean;
        }
    }
    for (std::size_t k = 0; k < 9; ++k) {
        mc << (k ? " " : "") << fmt("%.2f", estimates[k]);
    }
    o.pass = exact && worst_solver <= 1e-6 && worst_z <= 3.0;
    o.detail = std::string("closed forms ") + (exact ? "exact" : "MISMATCH") + ", solver rel err " +
               fmt("%.2e", worst_solver) + ", MC max |z| " + fmt("%.2f", worst_z) + " [" + mc.str() + "]";
    return o;
}

json qubit_config(double kappa, const std::string& jump) {
    json doc = {{"dimension", 2},
                {"evolution", {{"hamiltonian", {{"model", "qubit_sigma_z"}, {"omega", 1.0}}}}},
                {"basis", {{"qubit_theta", 1.0}}},
                {"distribution", {{"type", "exponential"}, {"tau", 1.0}}},
                {"target", 0},
                {"seed", 2026},
                {"trajectories", 1000}};
    if (kappa > 0) {
        doc["evolution"]["dissipators"] = json::array({{{"rate", kappa}, {"jump", jump}}});
    }
    return doc;
}

Outcome qubit_theta_sweeps() {
    Outcome o;
    struct Curve {
        std::string name;
        double kappa;
        std::string jump;
    };
    const std::vector<Curve> curves{{"unitary", 0.0, ""},          {"dephasing_k0.1", 0.1, "sigma_z"},
                                    {"dephasing_k1", 1.0, "sigma_z"}, {"decay_k0.1", 0.1, "sigma_minus"},
                                    {"decay_k1", 1.0, "sigma_minus"}, {"decay_k10", 10.0, "sigma_minus"}};
    std::filesystem::create_directories(g_output_dir);
    double worst_z = 0.0;
    double worst_oracle = 0.0;
    int points = 0;
    for (const auto& c : curves) {
        const auto config = cli::parse_config(qubit_config(c.kappa, c.jump));
        const cli::SweepTable t = cli::cmd_sweep(config, {"theta", 0.1, 3.04, 50, "both"}, 0);
        for (const auto& row : t.rows) {
            const oracles::QubitParams p{1.0, c.kappa, row[0], 1.0};
            double oracle_minus = 0.0;
            double oracle_plus = 2.0;
            if (c.kappa == 0.0) {
                oracle_minus = oracles::qubit_unitary_t_minus(p);
            } else if (c.jump == "sigma_z") {
                oracle_minus = oracles::qubit_dephasing_t_minus(p);
            } else {
                const auto d = oracles::qubit_decay_times(p);
                oracle_minus = d.t_minus;
                oracle_plus = d.t_plus;
            }
            worst_oracle = std::max({worst_oracle, rel(row[t.column("T_1")], oracle_minus),
                                     rel(row[t.column("T_0")], oracle_plus)});
            for (int s = 0; s < 2; ++s) {
                const double analytic = row[t.column("T_" + std::to_string(s))];
                const double mc = row[t.column("mc_T_" + std::to_string(s))];
                const double se = row[t.column("mc_se_" + std::to_string(s))];
                worst_z = std::max(worst_z, std::abs(mc - analytic) / se);
                ++points;
            }
        }
        std::ofstream(g_output_dir / ("theta_sweep_" + c.name + ".csv"), std::ios::binary) << t.to_csv();
        std::ofstream(g_output_dir / ("theta_sweep_" + c.name + ".svg"), std::ios::binary) << cli::sweep_svg(t);
    }
    bool files = true;
    for (const auto& c : curves) {
        files = files && std::filesystem::file_size(g_output_dir / ("theta_sweep_" + c.name + ".csv")) > 0 &&
                std::filesystem::file_size(g_output_dir / ("theta_sweep_" + c.name + ".svg")) > 0;
    }
    o.pass = worst_z <= 4.0 && files && worst_oracle <= 1e-6;
    o.detail = std::to_string(points) + " MC points, max |z| " + fmt("%.2f", worst_z) + ", analytic vs closed form " +
               fmt("%.2e", worst_oracle) + ", files in " + g_output_dir.string();
    return o;
}

Outcome optimal_reset_rate() {
    Outcome o;
    std::string found;
    for (double omega : {0.5, 1.0, 2.0}) {
        const TransitionKernel kernel(testing::qubit_unitary(omega), MeasurementBasis::qubit(kPi / 2));
        const auto base = MeasurementTimeDistribution::exponential(1.0);
        const auto switching = [&](double tau) {
            return mean_times(build_matrices(base.with_mean(tau), kernel, 0)).time_from(1);
        };
        const auto r = minimize_tau(switching, 0.01, 100.0);
        const double err = std::abs(r.tau_star * omega - 1.0);
        o.pass = o.pass && err <= 1e-3 && r.interior;
        found += (found.empty() ? "" : ", ") + fmt("%.5f", r.tau_star);

        const auto ret = minimize_tau(
            [&](double tau) { return mean_times(build_matrices(base.with_mean(tau), kernel, 0)).time_from(0); }, 0.01,
            100.0);
        o.pass = o.pass && !ret.interior;
    }
    o.detail = "tau* = {" + found + "} for omega = {0.5, 1, 2}; return objective has no interior optimum";
    return o;
}

Outcome wald_identity() {
    Outcome o;
    testing::Rng rng(808);
    const TransitionKernel kernel(testing::random_lindblad(3, rng, false), testing::random_basis(3, rng));
    const std::vector<MeasurementTimeDistribution> dists{
        MeasurementTimeDistribution::exponential(0.9), MeasurementTimeDistribution::deterministic(0.9),
        MeasurementTimeDistribution::gamma(2.5, 0.9), MeasurementTimeDistribution::truncated_normal(0.9, 0.4)};
    std::string zs;
    for (const auto& d : dists) {
        const auto r = estimate_mean_time(kernel, d, 2, 0, 10000, 31);
        const double tau = d.mean();
        const double combined = std::sqrt(r.std_error * r.std_error +
                                          tau * tau * r.std_error_measurements * r.std_error_measurements);
        const double gap = std::abs(r.mean - tau * r.mean_measurements);
        o.pass = o.pass && gap <= 3.0 * combined;
        zs += (zs.empty() ? "" : ", ") + d.name() + " " + fmt("%.3f", gap / combined);
    }
    o.detail = "|T - tau n| / combined SE: " + zs;
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    Outcome o;
    std::filesystem::create_directories(g_output_dir);
    json doc = {{"dimension", 3},
                {"evolution", {{"hamiltonian", {{"model", "spin_x"}, {"omega", 1.0}}}}},
                {"basis", {{"spin_z", 3}}},
                {"distribution", {{"type", "gamma"}, {"shape", 2.0}, {"tau", 1.0}}},
                {"target", 0},
                {"seed", 424242},
                {"trajectories", 2000},
                {"survival_grid", {0.5, 1.0, 2.0, 4.0, 8.0}}};
    const auto cfg = g_output_dir / "determinism.json";
    std::ofstream(cfg, std::ios::binary) << doc.dump(2);
    std::vector<std::string> outputs;
    for (int threads : {1, 4, 1, 4}) {
        const auto out = g_output_dir / ("determinism_" + std::to_string(outputs.size()) + ".json");
        const std::string cmd = std::string(QRESET_CLI_PATH) + " simulate --config " + cfg.string() + " --threads " +
                                std::to_string(threads) + " --out " + out.string();
        if (std::system(cmd.c_str()) != 0) {
            o.pass = false;
        }
        outputs.push_back(slurp(out));
    }
    for (const auto& s : outputs) {
        o.pass = o.pass && !s.empty() && s == outputs.front();
    }
    o.detail = "4 CLI runs (--threads 1,4,1,4), " + std::to_string(outputs.front().size()) + " bytes each, " +
               (o.pass ? "identical" : "DIFFERENT");
    return o;
}

Outcome channel_validity() {
    Outcome o;
    testing::Rng rng(5150);
    std::uniform_real_distribution<double> times(0.05, 4.0);
    double worst_trace = 0.0;
    double worst_choi = std::numeric_limits<double>::infinity();
    double worst_semigroup = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Index n = 2 + k % 4;
        const auto ev = testing::random_lindblad(n, rng, k % 2 == 0, 1 + k % 3);
        const double t = times(rng);
        const auto p = ev.propagator(t);
        worst_trace = std::max(worst_trace, p.trace_defect());
        worst_choi = std::min(worst_choi, p.min_choi_eigenvalue());
        worst_semigroup = std::max(worst_semigroup, semigroup_defect(ev, t, times(rng)));
    }
    o.pass = worst_trace <= 1e-9 && worst_choi >= -1e-8 && worst_semigroup <= 1e-8;
    o.detail = "trace " + fmt("%.1e", worst_trace) + ", min Choi eigenvalue " + fmt("%.1e", worst_choi) +
               ", semigroup " + fmt("%.1e", worst_semigroup);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        g_output_dir = argv[1];
    }
    const std::vector<Criterion> criteria{
        {1, "universal return law", 10, universal_return_law},
        {2, "block-structure law", 5, block_structure_law},
        {3, "closure relation", 0, closure_relation},
        {4, "qubit closed forms", 30, qubit_closed_forms},
        {5, "spin-1 mean-time table", 120, spin_one_table},
        {6, "qubit theta sweeps", 300, qubit_theta_sweeps},
        {7, "optimal reset rate", 5, optimal_reset_rate},
        {8, "Wald identity", 0, wald_identity},
        {9, "determinism", 0, determinism},
        {10, "channel validity", 0, channel_validity},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit <= 0 || secs < c.time_limit;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::string timing = fmt("%.2f s", secs);
        if (c.time_limit > 0) {
            timing += fmt(" (limit %.0f s)", c.time_limit);
        }
        std::printf("[%s] criterion %2d %-32s %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    o.detail.c_str(), timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
