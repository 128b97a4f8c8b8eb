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

#include "uncollapse/cli.h"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace uncollapse::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json &obj, const std::set<std::string> &allowed, const std::string &where) {
    for (const auto &[key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

template <class T>
void read(const json &obj, const char *key, T &target) {
    if (!obj.contains(key)) return;
    try {
        target = obj.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

const json &object_at(const json &obj, const char *key) {
    const json &sub = obj.at(key);
    if (!sub.is_object()) throw ConfigError(std::string("'") + key + "' must be an object");
    return sub;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + path.string());
    f << text;
    if (!f) throw ConfigError("failed writing " + path.string());
}

std::string csv_rows(const std::vector<SweepRow> &rows, bool with_success) {
    std::string out = "p,P_X,P_Y,P_Z,P_B,X,Y,Z,theta";
    out += with_success ? ",p_success\n" : "\n";
    for (const auto &r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}", format_number(r.p), format_number(r.record.p_x),
                           format_number(r.record.p_y), format_number(r.record.p_z), format_number(r.record.p_b),
                           format_number(r.bloch.x), format_number(r.bloch.y), format_number(r.bloch.z),
                           format_number(r.theta));
        if (with_success) out += "," + format_number(r.p_success);
        out += "\n";
    }
    return out;
}

std::vector<SweepRow> run_sweep(SequenceKind kind, const SweepSpec &spec) {
    if (spec.mode == Mode::Exact) return sweep_exact(kind, spec.experiment, spec.p_grid);
    return sweep_montecarlo(kind, spec.experiment, spec.p_grid, spec.shots, spec.seed, spec.workers);
}

/// Rounds through the 12-digit text form so JSON output carries the same precision as CSV.
double rounded(double x) { return std::stod(format_number(x)); }

template <class Fn>
int guarded(Fn &&fn) {
    try {
        fn();
        return kExitOk;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::exception &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

SweepSpec prepared_spec(const std::filesystem::path &config, const Overrides &o) {
    SweepSpec spec = load_config(config);
    apply_overrides(spec, o);
    try {
        validate_grid(spec.p_grid);
        spec.experiment.validate();
        for (double p : spec.chi_p) {
            if (!(p >= 0 && p < 1)) throw DomainError("chi_p values must lie in [0, 1)");
        }
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
    if (spec.shots == 0) throw ConfigError("shots must be at least 1");
    return spec;
}

}  // namespace

std::vector<double> SweepSpec::default_grid() {
    std::vector<double> grid;
    for (int j = 0; j < 20; ++j) grid.push_back(j / 20.0);
    return grid;
}

std::string format_number(double x) {
    if (x == 0) x = 0.0;  // no "-0"
    return fmt::format("{:.12g}", x);
}

SweepSpec parse_config(const json &j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j,
                   {"initial", "p_grid", "pi_fraction", "decoherence_enabled", "phi_m_rate_rad", "dephasing",
                    "device", "timing", "strength_bias", "mode", "shots", "seed", "chi_p", "workers"},
                   "config");
    SweepSpec spec;
    auto &e = spec.experiment;
    if (j.contains("initial")) {
        const json &init = object_at(j, "initial");
        reject_unknown(init, {"theta0_rad", "phi0_rad"}, "initial");
        read(init, "theta0_rad", e.initial.theta0);
        read(init, "phi0_rad", e.initial.phi0);
    }
    read(j, "p_grid", spec.p_grid);
    read(j, "pi_fraction", e.pi_fraction);
    read(j, "decoherence_enabled", e.decoherence_enabled);
    read(j, "phi_m_rate_rad", e.phi_m_rate);
    if (j.contains("dephasing")) {
        std::string d;
        read(j, "dephasing", d);
        if (d == "echo") e.dephasing = DephasingTime::Echo;
        else if (d == "ramsey") e.dephasing = DephasingTime::Ramsey;
        else throw ConfigError("dephasing must be 'echo' or 'ramsey'");
    }
    if (j.contains("device")) {
        const json &dev = object_at(j, "device");
        reject_unknown(dev, {"t1_ns", "t2_echo_ns", "t2_ramsey_ns", "e10_ghz", "visibility"}, "device");
        read(dev, "t1_ns", e.device.t1);
        read(dev, "t2_echo_ns", e.device.t2_echo);
        read(dev, "t2_ramsey_ns", e.device.t2_ramsey);
        read(dev, "e10_ghz", e.device.e10_ghz);
        read(dev, "visibility", e.device.visibility);
    }
    if (j.contains("timing")) {
        const json &t = object_at(j, "timing");
        reject_unknown(t, {"prepare_ns", "measure_ns", "idle_ns", "pi_ns", "tomography_ns"}, "timing");
        read(t, "prepare_ns", e.timing.prepare_ns);
        read(t, "measure_ns", e.timing.measure_ns);
        read(t, "idle_ns", e.timing.idle_ns);
        read(t, "pi_ns", e.timing.pi_ns);
        read(t, "tomography_ns", e.timing.tomography_ns);
    }
    if (j.contains("strength_bias")) {
        const json &b = object_at(j, "strength_bias");
        reject_unknown(b, {"mode", "value"}, "strength_bias");
        std::string mode = "off";
        read(b, "mode", mode);
        if (mode == "off") e.strength_bias = StrengthBias::Off;
        else if (mode == "additive") e.strength_bias = StrengthBias::Additive;
        else if (mode == "multiplicative") e.strength_bias = StrengthBias::Multiplicative;
        else throw ConfigError("strength_bias.mode must be off, additive or multiplicative");
        read(b, "value", e.strength_bias_value);
    }
    if (j.contains("mode")) {
        std::string mode;
        read(j, "mode", mode);
        if (mode == "exact") spec.mode = Mode::Exact;
        else if (mode == "mc") spec.mode = Mode::MonteCarlo;
        else throw ConfigError("mode must be 'exact' or 'mc'");
    }
    read(j, "shots", spec.shots);
    if (spec.shots == 0) throw ConfigError("shots must be at least 1");
    read(j, "seed", spec.seed);
    read(j, "chi_p", spec.chi_p);
    read(j, "workers", spec.workers);
    return spec;
}

SweepSpec load_config(const std::filesystem::path &path) {
    if (path.empty()) return SweepSpec{};
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config " + path.string());
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

void apply_overrides(SweepSpec &spec, const Overrides &o) {
    if (o.mode) spec.mode = *o.mode;
    if (o.shots) spec.shots = *o.shots;
    if (o.seed) spec.seed = *o.seed;
    if (o.pi_fraction) spec.experiment.pi_fraction = *o.pi_fraction;
    if (o.no_decoherence) spec.experiment.decoherence_enabled = false;
}

std::string collapse_csv(const SweepSpec &spec) { return csv_rows(run_sweep(SequenceKind::Collapse, spec), false); }

std::string uncollapse_csv(const SweepSpec &spec) {
    return csv_rows(run_sweep(SequenceKind::Uncollapse, spec), true);
}

json chi_to_json(double p, const QptRow &row) {
    json re = json::array();
    json im = json::array();
    for (int m = 0; m < 4; ++m) {
        json re_row = json::array();
        json im_row = json::array();
        for (int n = 0; n < 4; ++n) {
            re_row.push_back(rounded(row.chi(m, n).real()));
            im_row.push_back(rounded(row.chi(m, n).imag()));
        }
        re.push_back(re_row);
        im.push_back(im_row);
    }
    json doc;
    doc["p"] = rounded(p);
    doc["basis"] = {"I", "X", "Y", "Z"};
    doc["real"] = re;
    doc["imag"] = im;
    doc["fidelity"] = rounded(row.fidelity);
    doc["min_eigenvalue"] = rounded(row.diagnostics.min_eigenvalue);
    return doc;
}

QptOutput qpt_outputs(const SweepSpec &spec) {
    auto sweep = [&](std::span<const double> grid) {
        if (spec.mode == Mode::Exact) return sweep_qpt_exact(spec.experiment, grid);
        return sweep_qpt_montecarlo(spec.experiment, grid, spec.shots, spec.seed, spec.workers);
    };
    QptOutput out;
    out.csv = "p,fidelity,min_eigenvalue\n";
    for (const auto &row : sweep(spec.p_grid)) {
        out.csv += fmt::format("{},{},{}\n", format_number(row.p), format_number(row.fidelity),
                               format_number(row.diagnostics.min_eigenvalue));
    }
    for (double p : spec.chi_p) {
        std::array<double, 1> single{p};
        auto rows = sweep(single);
        out.chi_files.emplace_back(fmt::format("_chi_p{}.json", format_number(p)),
                                   chi_to_json(p, rows.front()).dump(2) + "\n");
    }
    return out;
}

int cmd_collapse(const std::filesystem::path &config, const std::filesystem::path &out, const Overrides &o) {
    return guarded([&] {
        auto spec = prepared_spec(config, o);
        write_text(out, collapse_csv(spec));
    });
}

int cmd_uncollapse(const std::filesystem::path &config, const std::filesystem::path &out, const Overrides &o) {
    return guarded([&] {
        auto spec = prepared_spec(config, o);
        write_text(out, uncollapse_csv(spec));
    });
}

int cmd_qpt(const std::filesystem::path &config, const std::filesystem::path &out, const Overrides &o) {
    return guarded([&] {
        auto spec = prepared_spec(config, o);
        auto result = qpt_outputs(spec);
        write_text(out, result.csv);
        for (const auto &[suffix, text] : result.chi_files) {
            auto path = out.parent_path() / (out.stem().string() + suffix);
            write_text(path, text);
        }
    });
}

}  // namespace uncollapse::cli
