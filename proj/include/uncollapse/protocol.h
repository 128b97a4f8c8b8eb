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

#ifndef UNCOLLAPSE_PROTOCOL_H
#define UNCOLLAPSE_PROTOCOL_H

#include <functional>
#include <numbers>
#include <variant>
#include <vector>

#include "uncollapse/channels.h"
#include "uncollapse/qubit.h"

namespace uncollapse {

enum class TomoAxis { X, Y, Z };

/// Step payloads. Every step carries a duration; decoherence for that duration
/// is applied after the step's own action.
struct Prepare {
    PureState state;
};
struct Rotate {
    RotationPulse pulse;
};
struct PartialMeasure {
    PartialMeasurement measurement;
};
struct Idle {};
struct TomographyRotate {
    TomoAxis axis;
};
/// Full-strength readout; tunnels with probability visibility * rho11.
struct FullMeasure {};

using StepKind = std::variant<Prepare, Rotate, PartialMeasure, Idle, TomographyRotate, FullMeasure>;

struct SequenceStep {
    StepKind kind;
    double start_ns = 0.0;
    double duration_ns = 0.0;
};

class PulseSequence {
   public:
    /// Appends a step starting where the previous one ended.
    PulseSequence &append(StepKind kind, double duration_ns);

    const std::vector<SequenceStep> &steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }
    double duration_ns() const;
    bool has_tomography() const;

    /// Throws StructuralError unless the sequence starts with a Prepare, start
    /// times strictly increase, steps do not overlap, and the tomography suffix
    /// (if any) is a single TomographyRotate followed by a FullMeasure at the end.
    void validate() const;

   private:
    std::vector<SequenceStep> steps_;
};

/// Durations in ns. The defaults add up to the 44 ns uncollapse sequence
/// including one tomography pulse.
struct Timing {
    double prepare_ns = 10.0;
    double measure_ns = 3.0;
    double idle_ns = 8.0;
    double pi_ns = 10.0;
    double tomography_ns = 10.0;

    double uncollapse_total_ns() const;
    void validate() const;
};

/// Which dephasing time governs the free evolution.
enum class DephasingTime { Echo, Ramsey };

/// Optional systematic error on the applied strength p.
enum class StrengthBias { Off, Additive, Multiplicative };

struct ExperimentConfig {
    PureState initial{std::numbers::pi / 2, 0.0};
    double p = 0.0;
    double pi_fraction = 1.0;
    DeviceParams device;
    bool decoherence_enabled = true;
    /// Default measurement-phase model phi_M(p) = phi_m_rate * p.
    double phi_m_rate = 4 * std::numbers::pi;
    /// Overrides the linear phase model when set.
    std::function<double(double)> phase_model;
    Timing timing;
    DephasingTime dephasing = DephasingTime::Echo;
    StrengthBias strength_bias = StrengthBias::Off;
    double strength_bias_value = 0.05;

    double measurement_phase(double strength) const;
    /// Strength actually applied, after the configured bias, clamped to [0, 1].
    double applied_strength() const;
    /// Dephasing time selected by `dephasing`.
    double t2() const;
    void validate() const;
};

struct RunOutcome {
    QubitState conditional;
    double p_background = 0.0;
    double p_success = 1.0;
};

enum class SequenceKind { Collapse, Uncollapse };

/// Prepare -> PartialMeasure(p).
PulseSequence build_partial_collapse(const ExperimentConfig &cfg);

/// Prepare -> PartialMeasure(p) -> [Idle] -> Rotate(pi_fraction * pi about X) -> PartialMeasure(p).
PulseSequence build_uncollapse(const ExperimentConfig &cfg);

PulseSequence build_sequence(SequenceKind kind, const ExperimentConfig &cfg);

/// Rotation used by a tomography setting: pi/2 about Y for X, pi/2 about X for Y,
/// identity for Z. Maps +x (resp. -y, +z) onto the |1> pole (resp. |1>, |0>).
RotationPulse tomography_pulse(TomoAxis axis, double duration_ns = 0.0);

/// Density-matrix evolution of the null-result branch through the whole sequence.
RunOutcome run_exact(const PulseSequence &seq, const ExperimentConfig &cfg);

double success_probability(const ExperimentConfig &cfg);

/// Ideal polar angle of the post-selected state. Collapse: 2 atan(sqrt(1-p) tan(theta0/2));
/// uncollapse: pi - theta0.
double theory_polar_angle(SequenceKind kind, double theta0, double p);

}  // namespace uncollapse

#endif
