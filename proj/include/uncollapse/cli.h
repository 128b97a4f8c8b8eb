// Copyright 2026 The Uncollapse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNCOLLAPSE_CLI_H
#define UNCOLLAPSE_CLI_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "uncollapse/protocol.h"
#include "uncollapse/sweep.h"

namespace uncollapse::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitNumeric = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { Exact, MonteCarlo };

/// Everything a sweep command needs. Defaults reproduce the reference device
/// (T1 = 450 ns, echo T2 = 350 ns, 44 ns sequence) on the equatorial state.
struct SweepSpec {
    ExperimentConfig experiment;
    std::vector<double> p_grid = default_grid();
    Mode mode = Mode::Exact;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    /// Strengths at which `qpt` writes the full chi matrix.
    std::vector<double> chi_p{0.47};
    int workers = 0;

    /// 0.00, 0.05, ..., 0.95.
    static std::vector<double> default_grid();
};

/// Command-line flags that take precedence over the config file.
struct Overrides {
    std::optional<Mode> mode;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<double> pi_fraction;
    bool no_decoherence = false;
};

/// Parses the JSON config schema; unknown keys and wrong types raise ConfigError.
SweepSpec parse_config(const nlohmann::json &j);
/// Reads and parses `path`; an empty path yields the defaults.
SweepSpec load_config(const std::filesystem::path &path);
void apply_overrides(SweepSpec &spec, const Overrides &o);

/// Fixed-width-free number formatting used by every output: 12 significant digits.
std::string format_number(double x);

/// CSV text with the frozen column order
/// p,P_X,P_Y,P_Z,P_B,X,Y,Z,theta (collapse) and ...,theta,p_success (uncollapse).
std::string collapse_csv(const SweepSpec &spec);
std::string uncollapse_csv(const SweepSpec &spec);

struct QptOutput {
    /// p,fidelity,min_eigenvalue
    std::string csv;
    /// (file suffix, JSON text) for each entry of chi_p.
    std::vector<std::pair<std::string, std::string>> chi_files;
};

QptOutput qpt_outputs(const SweepSpec &spec);

/// JSON document for one chi matrix: real and imaginary 4x4 arrays, basis I,X,Y,Z.
nlohmann::json chi_to_json(double p, const QptRow &row);

/// Command entry points. Return the process exit code and report errors on stderr.
int cmd_collapse(const std::filesystem::path &config, const std::filesystem::path &out, const Overrides &o = {});
int cmd_uncollapse(const std::filesystem::path &config, const std::filesystem::path &out, const Overrides &o = {});
/// Writes the fidelity CSV to `out` and each chi matrix next to it as
/// <stem>_chi_p<p>.json.
int cmd_qpt(const std::filesystem::path &config, const std::filesystem::path &out, const Overrides &o = {});

}  // namespace uncollapse::cli

#endif
