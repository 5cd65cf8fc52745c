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

#include <string>
#include <vector>

#include <json.hpp>

#include "qreset/cli/config.hpp"

namespace qreset::cli {

/// Doubles in reports and CSV files carry 12 significant digits.
double round_sig12(double x);
std::string format_sig12(double x);

nlohmann::json cmd_solve(const RunConfig& config);
nlohmann::json cmd_simulate(const RunConfig& config, unsigned threads = 0);

/// Columns: <parameter>; then, per state i, T_<i> and N_c (solve) and
/// mc_T_<i>, mc_se_<i> (simulate). Rows follow the grid order.
struct SweepTable {
    std::string parameter;
    int dimension = 0;
    Index target = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
    /// Index of a named column, or -1.
    int column(const std::string& name) const;
};

SweepTable cmd_sweep(const RunConfig& config, const SweepSpec& sweep, unsigned threads = 0);
std::string sweep_svg(const SweepTable& table);

nlohmann::json cmd_optimize(const RunConfig& config, const OptimizeSpec& spec);

/// Checks that a report has the fields its command emits.
void validate_report(const nlohmann::json& report);

}  // namespace qreset::cli
