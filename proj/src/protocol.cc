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

#include "uncollapse/protocol.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace uncollapse {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

PulseSequence &PulseSequence::append(StepKind kind, double duration_ns) {
    double start = steps_.empty() ? 0.0 : steps_.back().start_ns + steps_.back().duration_ns;
    steps_.push_back({std::move(kind), start, duration_ns});
    return *this;
}

double PulseSequence::duration_ns() const {
    if (steps_.empty()) return 0.0;
    return steps_.back().start_ns + steps_.back().duration_ns - steps_.front().start_ns;
}

bool PulseSequence::has_tomography() const {
    for (const auto &s : steps_) {
        if (std::holds_alternative<TomographyRotate>(s.kind)) return true;
    }
    return false;
}

void PulseSequence::validate() const {
    if (steps_.empty() || !std::holds_alternative<Prepare>(steps_.front().kind)) {
        throw StructuralError("sequence must start with a Prepare step");
    }
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        const auto &s = steps_[i];
        if (!(s.duration_ns >= 0) || !std::isfinite(s.start_ns)) {
            throw StructuralError("step " + std::to_string(i) + " has an invalid time");
        }
        if (i > 0) {
            const auto &prev = steps_[i - 1];
            if (!(s.start_ns > prev.start_ns)) {
                throw StructuralError("step start times must strictly increase");
            }
            if (s.start_ns < prev.start_ns + prev.duration_ns - kExactTol) {
                throw StructuralError("steps " + std::to_string(i - 1) + " and " + std::to_string(i) + " overlap");
            }
            if (std::holds_alternative<Prepare>(s.kind)) {
                throw StructuralError("Prepare may only appear first");
            }
            if (std::holds_alternative<FullMeasure>(prev.kind)) {
                throw StructuralError("FullMeasure must be the last step");
            }
        }
        if (std::holds_alternative<TomographyRotate>(s.kind)) {
            if (i + 2 != steps_.size() || !std::holds_alternative<FullMeasure>(steps_[i + 1].kind)) {
                throw StructuralError("TomographyRotate must be followed by the final FullMeasure");
            }
        }
    }
}

double Timing::uncollapse_total_ns() const {
    return prepare_ns + 2 * measure_ns + idle_ns + pi_ns + tomography_ns;
}

void Timing::validate() const {
    if (!(prepare_ns > 0 && measure_ns > 0 && pi_ns > 0 && tomography_ns > 0)) {
        throw DomainError("pulse durations must be positive");
    }
    if (!(idle_ns >= 0)) {
        throw DomainError("idle duration must be non-negative");
    }
}

double ExperimentConfig::measurement_phase(double strength) const {
    return phase_model ? phase_model(strength) : phi_m_rate * strength;
}

double ExperimentConfig::applied_strength() const {
    double applied = p;
    switch (strength_bias) {
        case StrengthBias::Off: break;
        case StrengthBias::Additive: applied = p + strength_bias_value; break;
        case StrengthBias::Multiplicative: applied = p * (1 + strength_bias_value); break;
    }
    return std::clamp(applied, 0.0, 1.0);
}

double ExperimentConfig::t2() const {
    return dephasing == DephasingTime::Echo ? device.t2_echo : device.t2_ramsey;
}

void ExperimentConfig::validate() const {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("p must lie in [0, 1]");
    }
    if (!std::isfinite(pi_fraction) || !std::isfinite(phi_m_rate)) {
        throw DomainError("pi_fraction and phi_m_rate must be finite");
    }
    if (!(initial.theta0 >= 0 && initial.theta0 <= std::numbers::pi)) {
        throw DomainError("initial theta0 must lie in [0, pi]");
    }
    device.validate();
    timing.validate();
}

PulseSequence build_partial_collapse(const ExperimentConfig &cfg) {
    cfg.validate();
    double strength = cfg.applied_strength();
    PulseSequence seq;
    seq.append(Prepare{cfg.initial}, cfg.timing.prepare_ns);
    seq.append(PartialMeasure{{strength, cfg.measurement_phase(strength)}}, cfg.timing.measure_ns);
    return seq;
}

PulseSequence build_uncollapse(const ExperimentConfig &cfg) {
    cfg.validate();
    double strength = cfg.applied_strength();
    PartialMeasurement m{strength, cfg.measurement_phase(strength)};
    PulseSequence seq;
    seq.append(Prepare{cfg.initial}, cfg.timing.prepare_ns);
    seq.append(PartialMeasure{m}, cfg.timing.measure_ns);
    if (cfg.timing.idle_ns > 0) {
        seq.append(Idle{}, cfg.timing.idle_ns);
    }
    seq.append(Rotate{RotationPulse::about_x(cfg.pi_fraction * std::numbers::pi, cfg.timing.pi_ns)},
               cfg.timing.pi_ns);
    seq.append(PartialMeasure{m}, cfg.timing.measure_ns);
    return seq;
}

PulseSequence build_sequence(SequenceKind kind, const ExperimentConfig &cfg) {
    return kind == SequenceKind::Collapse ? build_partial_collapse(cfg) : build_uncollapse(cfg);
}

RotationPulse tomography_pulse(TomoAxis axis, double duration_ns) {
    switch (axis) {
        case TomoAxis::X: return RotationPulse::about_y(std::numbers::pi / 2, duration_ns);
        case TomoAxis::Y: return RotationPulse::about_x(std::numbers::pi / 2, duration_ns);
        case TomoAxis::Z: break;
    }
    return RotationPulse::about_x(0.0, duration_ns);
}

RunOutcome run_exact(const PulseSequence &seq, const ExperimentConfig &cfg) {
    seq.validate();
    cfg.device.validate();
    QubitState q;
    const double t2 = cfg.t2();
    for (const auto &step : seq.steps()) {
        std::visit(Overloaded{
                       [&](const Prepare &s) { q = state_from_angles(s.state); },
                       [&](const Rotate &s) { q = apply_rotation(q, s.pulse); },
                       [&](const PartialMeasure &s) { q = apply_partial_null(q, s.measurement).first; },
                       [&](const Idle &) {},
                       [&](const TomographyRotate &s) { q = apply_rotation(q, tomography_pulse(s.axis)); },
                       [&](const FullMeasure &) {
                           q = apply_partial_null(q, PartialMeasurement{cfg.device.visibility, 0.0}).first;
                       },
                   },
                   step.kind);
        if (cfg.decoherence_enabled && step.duration_ns > 0) {
            q = apply_decoherence(q, DecoherenceStep::from_t2(step.duration_ns, cfg.device.t1, t2));
        }
        check_invariants(q);
    }
    RunOutcome out;
    out.conditional = q;
    out.p_success = q.trace();
    out.p_background = q.escaped;
    return out;
}

double success_probability(const ExperimentConfig &cfg) {
    return run_exact(build_uncollapse(cfg), cfg).p_success;
}

double theory_polar_angle(SequenceKind kind, double theta0, double p) {
    if (!(theta0 >= 0 && theta0 <= std::numbers::pi)) {
        throw DomainError("theta0 must lie in [0, pi]");
    }
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("p must lie in [0, 1]");
    }
    double s = std::sqrt(1 - p) * std::sin(theta0 / 2);
    double c = std::cos(theta0 / 2);
    if (s < kExactTol && c < kExactTol) {
        throw UndefinedStateError("state fully escapes at p = 1 for theta0 = pi");
    }
    if (kind == SequenceKind::Uncollapse) {
        if (p >= 1) {
            throw UndefinedStateError("uncollapse never succeeds at p = 1");
        }
        return std::numbers::pi - theta0;
    }
    return 2 * std::atan2(s, c);
}

}  // namespace uncollapse
