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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "uncollapse/channels.h"
#include "uncollapse/montecarlo.h"
#include "uncollapse/protocol.h"
#include "uncollapse/qpt.h"
#include "uncollapse/rng.h"
#include "uncollapse/sweep.h"
#include "uncollapse/tomography.h"

using namespace uncollapse;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937_64 rng(20260118);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

PureState random_pure() { return {std::acos(uniform(-1, 1)), uniform(0, 2 * kPi)}; }

ExperimentConfig ideal(PureState s, double p) {
    ExperimentConfig cfg;
    cfg.initial = s;
    cfg.p = p;
    cfg.decoherence_enabled = false;
    return cfg;
}

QubitState flipped(const PureState &s) { return apply_rotation(state_from_angles(s), RotationPulse::about_x(kPi)); }

double max_abs(const Mat2 &a) { return a.cwiseAbs().maxCoeff(); }

struct Check {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string &what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string &name, const Check &c, const std::string &summary) {
    if (!c.ok) ++failures;
    std::printf("[%s] criterion %d: %s -- %s\n", c.ok ? "PASS" : "FAIL", id, name.c_str(),
                c.ok ? summary.c_str() : c.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

void criterion_1() {
    Check c;
    auto t0 = Clock::now();
    double worst = 1.0;
    for (int i = 0; i < 200; ++i) {
        auto s = random_pure();
        auto cfg = ideal(s, uniform(0, 0.99));
        cfg.phi_m_rate = uniform(-4 * kPi, 4 * kPi);
        auto out = run_exact(build_uncollapse(cfg), cfg);
        worst = std::min(worst, state_fidelity(out.conditional, flipped(s)));
    }
    double dt = seconds_since(t0);
    c.require(worst >= 1 - 1e-10, fmt("min fidelity %.15f", worst));
    c.require(dt < 1.0, fmt("runtime %.3f s", dt));
    report(1, "uncollapsing identity", c, fmt("min fidelity 1 - %.2e over 200 cases, %.3f s", 1 - worst, dt));
}

void criterion_2() {
    Check c;
    double worst = 0;
    int undefined = 0;
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            double theta0 = i * kPi / 20, p = j / 20.0;
            auto [q, prob] = apply_partial_null(state_from_angles({theta0, 0.3}), {p, 0.0});
            if (i == 20 && j == 20) {
                // |1> under p = 1 has no null outcome.
                bool thrown = false;
                try {
                    (void)q.normalized();
                } catch (const UndefinedStateError &) {
                    thrown = true;
                }
                c.require(thrown, "|1> at p = 1 did not report an undefined state");
                ++undefined;
                continue;
            }
            double theta_m = polar_azimuth(bloch_from_state(q)).theta;
            double expected = 2 * std::atan(std::sqrt(1 - p) * std::tan(theta0 / 2));
            worst = std::max(worst, std::abs(theta_m - expected));
        }
    }
    c.require(worst <= 1e-10, fmt("max |theta_M error| %.3e", worst));
    report(2, "partial-collapse polar angle", c,
           fmt("max error %.2e over 21x21 grid (%.0f undefined corner)", worst, undefined));
}

void criterion_3() {
    Check c;
    double worst = 0;
    for (int j = 0; j <= 99; ++j) {
        double p = j / 100.0;
        for (int k = 0; k < 5; ++k) {
            auto cfg = ideal(random_pure(), p);
            worst = std::max(worst, std::abs(success_probability(cfg) - (1 - p)));
        }
    }
    c.require(worst <= 1e-12, fmt("max |p_success - (1-p)| %.3e", worst));
    report(3, "success probability 1 - p", c, fmt("max error %.2e", worst));
}

void criterion_4() {
    Check c;
    double worst_collapse = 0, worst_un = 0;
    for (int i = 0; i < 200; ++i) {
        auto s = random_pure();
        double p = uniform(0, 0.99);
        auto cfg = ideal(s, p);
        double sin_half = std::sin(s.theta0 / 2);
        auto col = measure_exact(build_partial_collapse(cfg), cfg);
        worst_collapse = std::max(worst_collapse, std::abs(col.p_b - p * sin_half * sin_half));
        auto un = measure_exact(build_uncollapse(cfg), cfg);
        worst_un = std::max(worst_un, std::abs(un.p_b - p));
    }
    c.require(worst_collapse <= 1e-12, fmt("partial collapse P_B error %.3e", worst_collapse));
    c.require(worst_un <= 1e-12, fmt("uncollapse P_B error %.3e", worst_un));
    report(4, "background probabilities", c,
           fmt("collapse error %.2e, uncollapse error %.2e", worst_collapse, worst_un));
}

void criterion_5() {
    Check c;
    DeviceParams d;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        double r = std::cbrt(uniform(0, 1));
        auto dir = random_pure();
        BlochVector truth{r * std::sin(dir.theta0) * std::cos(dir.phi0), r * std::sin(dir.theta0) * std::sin(dir.phi0),
                          r * std::cos(dir.theta0)};
        double p_b = uniform(0, 0.95);
        QubitState q{(1 - p_b) * state_from_bloch(truth).rho, p_b};
        auto b = bloch_reconstruct(tomo_probabilities(q, p_b, d));
        worst = std::max({worst, std::abs(b.x - truth.x), std::abs(b.y - truth.y), std::abs(b.z - truth.z)});
    }
    c.require(worst <= 1e-10, fmt("max component error %.3e", worst));
    report(5, "Bloch reconstruction round trip", c, fmt("max error %.2e over 100 states", worst));
}

void criterion_6() {
    Check c;
    std::vector<std::function<double(double)>> models{
        [](double p) { return 4 * kPi * p; },
        [](double p) { return 3.0 * p * p + 1.0; },
        [](double p) { return -7.5 * std::sin(2 * p); },
    };
    double worst_echo = 0, min_wrong = 1e9;
    for (int i = 0; i < 20; ++i) {
        auto s = random_pure();
        double p = uniform(0.05, 0.95);
        auto run = [&](double fraction, const std::function<double(double)> &model) {
            auto cfg = ideal(s, p);
            cfg.pi_fraction = fraction;
            cfg.phase_model = model;
            return run_exact(build_uncollapse(cfg), cfg).conditional.normalized();
        };
        Mat2 ref = run(1.0, models[0]);
        Mat2 wrong_ref = run(0.9, models[0]);
        double wrong_spread = 0;
        for (std::size_t m = 1; m < models.size(); ++m) {
            worst_echo = std::max(worst_echo, max_abs(run(1.0, models[m]) - ref));
            wrong_spread = std::max(wrong_spread, max_abs(run(0.9, models[m]) - wrong_ref));
        }
        // Near the poles the phase is irrelevant for any pulse; judge the equatorial band.
        if (std::sin(s.theta0) > 0.3) min_wrong = std::min(min_wrong, wrong_spread);
    }
    c.require(worst_echo <= 1e-10, fmt("echo output varies by %.3e", worst_echo));
    c.require(min_wrong > 1e-3, fmt("0.9 pi output varies only by %.3e", min_wrong));
    report(6, "spin-echo cancellation", c,
           fmt("pi pulse spread %.2e, 0.9 pi pulse spread >= %.2e", worst_echo, min_wrong));
}

void criterion_7() {
    Check c;
    ExperimentConfig cfg;
    cfg.decoherence_enabled = false;
    double worst = 0;
    for (int j = 0; j <= 99; ++j) {
        cfg.p = j / 100.0;
        worst = std::max(worst, std::abs(process_fidelity(qpt_reconstruct(simulate_probes_exact(cfg))) - 1));
    }
    auto probes = ProbeSet::standard_inputs();
    for (auto &probe : probes.probes) probe.output = bloch_from_state(state_from_angles(probe.input));
    Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
    expected(0, 0) = 1;
    double id_err = (qpt_reconstruct(probes).m - expected).cwiseAbs().maxCoeff();
    c.require(worst <= 1e-10, fmt("max |Re chi(X,X) - 1| %.3e", worst));
    c.require(id_err <= 1e-10, fmt("identity chi error %.3e", id_err));
    report(7, "process tomography exactness", c, fmt("fidelity error %.2e, identity error %.2e", worst, id_err));
}

void criterion_8() {
    Check c;
    auto t0 = Clock::now();
    ExperimentConfig cfg;  // T1 450 ns, echo T2 350 ns, 44 ns sequence
    std::vector<double> grid;
    for (int j = 0; j < 20; ++j) grid.push_back(j / 20.0);
    grid.push_back(0.99);
    auto rows = sweep_qpt_exact(cfg, grid);
    double dt = seconds_since(t0);

    double lo = 1, hi = 0;
    for (const auto &row : rows) {
        if (row.p <= 0.6 + 1e-12) {
            c.require(row.fidelity >= 0.70, fmt("fidelity %.4f at p = %.2f", row.fidelity, row.p));
            lo = std::min(lo, row.fidelity);
            hi = std::max(hi, row.fidelity);
        }
    }
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (rows[k - 1].p >= 0.7 - 1e-12) {
            c.require(rows[k].fidelity < rows[k - 1].fidelity,
                      fmt("fidelity rises from p = %.2f to p = %.2f", rows[k - 1].p, rows[k].p));
        }
    }
    // Flat plateau before the drop-off.
    c.require(hi - lo <= 0.10, fmt("plateau spread %.4f", hi - lo));
    c.require(rows.back().fidelity < lo, fmt("no degradation at p = 0.99 (%.4f)", rows.back().fidelity));
    c.require(dt < 5.0, fmt("runtime %.3f s", dt));
    report(8, "fidelity versus strength", c,
           fmt("plateau %.4f..%.4f for p <= 0.6, %.4f at p = 0.99", lo, hi, rows.back().fidelity) +
               fmt(", %.3f s", dt));
}

void criterion_9() {
    Check c;
    auto t0 = Clock::now();
    const std::uint64_t n = 100000;
    double worst_z = 0;
    ExperimentConfig cfg;
    std::uint64_t point = 0;
    for (auto kind : {SequenceKind::Collapse, SequenceKind::Uncollapse}) {
        for (double p : {0.1, 0.3, 0.5, 0.7}) {
            cfg.p = p;
            auto seq = build_sequence(kind, cfg);
            auto exact = measure_exact(seq, cfg);
            std::uint64_t seed = derive_seed(424242, 9, point++);
            auto est = estimate_probabilities(seq, cfg, n, seed);
            auto z = [&](double got, double want, std::uint64_t shots) {
                double sigma = std::max(std::sqrt(want * (1 - want) / shots), 1.0 / shots);
                return std::abs(got - want) / sigma;
            };
            worst_z = std::max({worst_z, z(est.record.p_x, exact.p_x, n), z(est.record.p_y, exact.p_y, n),
                                z(est.record.p_z, exact.p_z, n), z(est.record.p_b, exact.p_b, 3 * n)});

            auto one = estimate_probabilities(seq, cfg, n, seed, 1);
            auto four = estimate_probabilities(seq, cfg, n, seed, 4);
            bool identical = one.record.p_x == four.record.p_x && one.record.p_y == four.record.p_y &&
                             one.record.p_z == four.record.p_z && one.record.p_b == four.record.p_b &&
                             one.record.p_x == est.record.p_x && one.record.p_b == est.record.p_b;
            c.require(identical, fmt("worker counts disagree at p = %.1f", p));
        }
    }
    double dt = seconds_since(t0);
    c.require(worst_z <= 5.0, fmt("deviation %.2f standard errors", worst_z));
    c.require(dt < 60.0, fmt("runtime %.1f s", dt));
    report(9, "Monte Carlo equivalence", c,
           fmt("max deviation %.2f standard errors, bit-identical across workers, %.2f s", worst_z, dt));
}

void criterion_10() {
    Check c;
    ExperimentConfig cfg;
    cfg.decoherence_enabled = false;
    std::vector<double> grid;
    for (int j = 0; j < 20; ++j) grid.push_back(j / 20.0);

    auto col = sweep_exact(SequenceKind::Collapse, cfg, grid);
    bool rises = false, falls = false;
    for (std::size_t k = 1; k < col.size(); ++k) {
        rises |= col[k].record.p_x > col[k - 1].record.p_x + 1e-6;
        falls |= col[k].record.p_x < col[k - 1].record.p_x - 1e-6;
    }
    c.require(rises && falls, "partial-collapse P_X is monotone");

    auto un = sweep_exact(SequenceKind::Uncollapse, cfg, grid);
    double spread_px = 0, spread_x = 0, spread_y = 0;
    for (const auto &row : un) {
        spread_px = std::max(spread_px, std::abs(row.record.p_x - un.front().record.p_x));
        spread_x = std::max(spread_x, std::abs(row.bloch.x - un.front().bloch.x));
        spread_y = std::max(spread_y, std::abs(row.bloch.y - un.front().bloch.y));
    }
    c.require(spread_px <= 1e-9, fmt("uncollapse P_X spread %.3e", spread_px));
    c.require(spread_x <= 1e-9, fmt("uncollapse X spread %.3e", spread_x));
    c.require(spread_y <= 1e-9, fmt("uncollapse Y spread %.3e", spread_y));
    report(10, "tomography curve shapes", c,
           fmt("collapse P_X non-monotone; uncollapse spreads P_X %.1e, X %.1e, Y %.1e", spread_px, spread_x,
               spread_y));
}

}  // namespace

int main() {
    std::vector<void (*)()> criteria{criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                     criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception &e) {
            ++failures;
            std::printf("[FAIL] criterion %zu: threw %s\n", i + 1, e.what());
        }
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
