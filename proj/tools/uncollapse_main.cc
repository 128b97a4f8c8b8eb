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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "uncollapse/cli.h"

namespace cli = uncollapse::cli;

int main(int argc, char **argv) {
    CLI::App app{"Partial-measurement and uncollapsing sweeps for a single qubit"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::string mode;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    double pi_fraction = 1.0;
    bool no_decoherence = false;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config, "JSON experiment config (defaults when omitted)");
        sub->add_option("--out", out, "Output CSV path")->required();
        sub->add_option("--mode", mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
        sub->add_option("--shots", shots, "Shots per tomography setting (mc mode)");
        sub->add_option("--seed", seed, "Master seed (mc mode)");
        sub->add_option("--pi-fraction", pi_fraction, "Echo pulse angle in units of pi");
        sub->add_flag("--no-decoherence", no_decoherence, "Disable T1/T2 channels");
    };

    auto *collapse = app.add_subcommand("collapse", "Partial-collapse sequence sweep");
    auto *uncollapse = app.add_subcommand("uncollapse", "Uncollapsing sequence sweep");
    auto *qpt = app.add_subcommand("qpt", "Process tomography of the uncollapsing sequence");
    for (auto *sub : {collapse, uncollapse, qpt}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitBadConfig;
    }

    cli::Overrides overrides;
    auto *active = app.get_subcommands().front();
    if (!mode.empty()) overrides.mode = mode == "mc" ? cli::Mode::MonteCarlo : cli::Mode::Exact;
    if (active->count("--shots")) overrides.shots = shots;
    if (active->count("--seed")) overrides.seed = seed;
    if (active->count("--pi-fraction")) overrides.pi_fraction = pi_fraction;
    overrides.no_decoherence = no_decoherence;

    if (active == collapse) return cli::cmd_collapse(config, out, overrides);
    if (active == uncollapse) return cli::cmd_uncollapse(config, out, overrides);
    return cli::cmd_qpt(config, out, overrides);
}
