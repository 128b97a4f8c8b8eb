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

#include "uncollapse/montecarlo.h"

#include <cmath>
#include <variant>

#include "uncollapse/rng.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uncollapse {

namespace {

enum class Action { Prepare, Unitary, Measure, FullMeasure, None };

/// A step with all channel parameters precomputed for the shot loop.
struct CompiledStep {
    Action action = Action::None;
    Ket prepared = Ket::Zero();
    Mat2 unitary = Mat2::Identity();
    double strength = 0.0;
    Complex null_factor = 1.0;
    double gamma = 0.0;
    double half_lambda = 0.0;
};

std::vector<CompiledStep> compile(const PulseSequence &seq, const ExperimentConfig &cfg) {
    seq.validate();
    cfg.device.validate();
    std::vector<CompiledStep> plan;
    plan.reserve(seq.size());
    for (const auto &step : seq.steps()) {
        CompiledStep c;
        if (const auto *s = std::get_if<Prepare>(&step.kind)) {
            state_from_angles(s->state);
            c.action = Action::Prepare;
            c.prepared = s->state.amplitudes();
        } else if (const auto *s = std::get_if<Rotate>(&step.kind)) {
            c.action = Action::Unitary;
            c.unitary = s->pulse.unitary();
        } else if (const auto *s = std::get_if<PartialMeasure>(&step.kind)) {
            s->measurement.validate();
            c.action = Action::Measure;
            c.strength = s->measurement.p;
            c.null_factor = s->measurement.null_operator()(1, 1);
        } else if (const auto *s = std::get_if<TomographyRotate>(&step.kind)) {
            c.action = Action::Unitary;
            c.unitary = tomography_pulse(s->axis).unitary();
        } else if (std::holds_alternative<FullMeasure>(step.kind)) {
            c.action = Action::FullMeasure;
            c.strength = cfg.device.visibility;
        }
        if (cfg.decoherence_enabled && step.duration_ns > 0) {
            auto d = DecoherenceStep::from_t2(step.duration_ns, cfg.device.t1, cfg.t2());
            c.gamma = d.gamma();
            c.half_lambda = d.lambda() / 2;
        }
        plan.push_back(c);
    }
    return plan;
}

struct ShotResult {
    bool background = false;
    bool detected = false;
};

/// Pure-state trajectory. `record` receives one flag per executed partial measurement.
template <class Recorder>
ShotResult run_shot(const std::vector<CompiledStep> &plan, CounterRng &rng, Recorder &&record) {
    Ket psi = Ket::Zero();
    ShotResult result;
    for (const auto &c : plan) {
        switch (c.action) {
            case Action::Prepare: psi = c.prepared; break;
            case Action::Unitary: psi = c.unitary * psi; break;
            case Action::Measure: {
                bool tunnel = rng.uniform() < c.strength * std::norm(psi(1));
                record(tunnel);
                if (tunnel) {
                    result.background = true;
                    return result;
                }
                psi(1) *= c.null_factor;
                psi.normalize();
                break;
            }
            case Action::FullMeasure:
                result.detected = rng.uniform() < c.strength * std::norm(psi(1));
                break;
            case Action::None: break;
        }
        if (c.gamma > 0) {
            if (rng.uniform() < c.gamma * std::norm(psi(1))) {
                psi << 1.0, 0.0;
            } else {
                psi(1) *= std::sqrt(1 - c.gamma);
                psi.normalize();
            }
        }
        if (c.half_lambda > 0 && rng.uniform() < c.half_lambda) {
            psi(1) = -psi(1);
        }
    }
    return result;
}

struct Counts {
    std::uint64_t background = 0;
    std::array<std::uint64_t, 3> tunneled{};
};

std::array<std::vector<CompiledStep>, 3> compile_settings(const PulseSequence &seq, const ExperimentConfig &cfg) {
    if (seq.has_tomography()) {
        throw StructuralError("estimate_probabilities expects a sequence without a tomography suffix");
    }
    std::array<std::vector<CompiledStep>, 3> plans;
    for (std::size_t s = 0; s < 3; ++s) {
        plans[s] = compile(with_tomography(seq, kTomoAxes[s], cfg.timing), cfg);
    }
    return plans;
}

EstimateSet summarize(const Counts &counts, std::uint64_t n) {
    EstimateSet est;
    est.n_total = n;
    auto &rec = est.record;
    const double nd = static_cast<double>(n);
    std::array<double, 4> err{};
    for (std::size_t s = 0; s < 3; ++s) {
        double prob = counts.tunneled[s] / nd;
        rec[kTomoAxes[s]] = prob;
        err[s] = std::sqrt(prob * (1 - prob) / nd);
    }
    rec.p_b = counts.background / (3 * nd);
    err[3] = std::sqrt(rec.p_b * (1 - rec.p_b) / (3 * nd));
    rec.shots = n;
    rec.std_error = err;
    return est;
}

}  // namespace

bool ShotRecord::background() const {
    for (bool tunnel : outcomes) {
        if (tunnel) return true;
    }
    return false;
}

ShotRecord sample_sequence(const PulseSequence &seq, const ExperimentConfig &cfg, std::uint64_t seed) {
    auto plan = compile(seq, cfg);
    ShotRecord rec;
    rec.rng_seed = seed;
    CounterRng rng(seed);
    auto result = run_shot(plan, rng, [&](bool tunnel) { rec.outcomes.push_back(tunnel); });
    rec.final_detected = result.detected;
    return rec;
}

EstimateSet estimate_probabilities_serial(const PulseSequence &seq, const ExperimentConfig &cfg,
                                          std::uint64_t n_shots, std::uint64_t seed) {
    if (n_shots == 0) throw DomainError("n_shots must be at least 1");
    auto plans = compile_settings(seq, cfg);
    Counts counts;
    for (std::uint64_t s = 0; s < 3; ++s) {
        for (std::uint64_t i = 0; i < n_shots; ++i) {
            CounterRng rng(derive_seed(seed, s, i));
            auto r = run_shot(plans[s], rng, [](bool) {});
            counts.background += r.background;
            counts.tunneled[s] += r.background || r.detected;
        }
    }
    return summarize(counts, n_shots);
}

EstimateSet estimate_probabilities(const PulseSequence &seq, const ExperimentConfig &cfg, std::uint64_t n_shots,
                                   std::uint64_t seed, int workers) {
    if (n_shots == 0) throw DomainError("n_shots must be at least 1");
    auto plans = compile_settings(seq, cfg);
    const auto total = static_cast<std::int64_t>(3 * n_shots);
    std::uint64_t background = 0, tx = 0, ty = 0, tz = 0;
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads) reduction(+ : background, tx, ty, tz)
#endif
    for (std::int64_t k = 0; k < total; ++k) {
        const auto s = static_cast<std::uint64_t>(k) / n_shots;
        const auto i = static_cast<std::uint64_t>(k) % n_shots;
        CounterRng rng(derive_seed(seed, s, i));
        auto r = run_shot(plans[s], rng, [](bool) {});
        background += r.background;
        const std::uint64_t hit = r.background || r.detected;
        tx += s == 0 ? hit : 0;
        ty += s == 1 ? hit : 0;
        tz += s == 2 ? hit : 0;
    }
    (void)workers;
    Counts counts{background, {tx, ty, tz}};
    return summarize(counts, n_shots);
}

ProbeSet simulate_probes_montecarlo(const ExperimentConfig &cfg, std::uint64_t n_shots, std::uint64_t seed,
                                    int workers) {
    ProbeSet set = ProbeSet::standard_inputs();
    for (std::size_t k = 0; k < set.probes.size(); ++k) {
        auto &probe = set.probes[k];
        ExperimentConfig probe_cfg = cfg;
        probe_cfg.initial = probe.input;
        auto est = estimate_probabilities(build_uncollapse(probe_cfg), probe_cfg, n_shots,
                                          derive_seed(seed, 0xC0FFEE, k), workers);
        probe.output = bloch_reconstruct(est.record);
    }
    return set;
}

}  // namespace uncollapse
