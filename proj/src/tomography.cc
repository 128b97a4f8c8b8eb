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

#include "uncollapse/tomography.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uncollapse/channels.h"

namespace uncollapse {

double &TomographyRecord::operator[](TomoAxis axis) {
    switch (axis) {
        case TomoAxis::X: return p_x;
        case TomoAxis::Y: return p_y;
        case TomoAxis::Z: break;
    }
    return p_z;
}

double TomographyRecord::operator[](TomoAxis axis) const { return const_cast<TomographyRecord &>(*this)[axis]; }

void TomographyRecord::validate(double tol) const {
    for (double v : {p_x, p_y, p_z, p_b}) {
        if (!(v >= -tol && v <= 1 + tol)) {
            throw DomainError("tomography probability outside [0, 1]");
        }
    }
    for (double v : {p_x, p_y, p_z}) {
        if (v < p_b - tol) {
            throw DomainError("tomography probability below background");
        }
    }
}

TomographyRecord tomo_probabilities(const QubitState &q, double p_b, const DeviceParams &d) {
    if (!(p_b >= 0 && p_b <= 1)) {
        throw DomainError("background probability must lie in [0, 1]");
    }
    QubitState normalized{q.normalized(), 0.0};
    TomographyRecord rec;
    rec.p_b = p_b;
    for (TomoAxis axis : kTomoAxes) {
        QubitState rotated = apply_rotation(normalized, tomography_pulse(axis));
        rec[axis] = p_b + (1 - p_b) * d.visibility * rotated.rho(1, 1).real();
    }
    return rec;
}

BlochVector bloch_reconstruct(const TomographyRecord &t) {
    if (t.p_b >= 1 - kExactTol) {
        throw DegenerateBackgroundError("background probability leaves no signal to reconstruct");
    }
    auto component = [&](double prob) { return 2 * (prob - t.p_b) / (1 - t.p_b) - 1; };
    return {component(t.p_x), -component(t.p_y), -component(t.p_z)};
}

PolarAngles polar_azimuth(const BlochVector &b) {
    double r = b.norm();
    if (!(r > kRoundoffTol)) {
        throw UndefinedStateError("direction of a near-zero Bloch vector is undefined");
    }
    double theta = std::acos(std::clamp(b.z / r, -1.0, 1.0));
    double phi = std::atan2(-b.y, b.x);
    if (phi < 0) phi += 2 * std::numbers::pi;
    return {theta, phi};
}

PulseSequence with_tomography(const PulseSequence &seq, TomoAxis axis, const Timing &timing) {
    PulseSequence out = seq;
    out.append(TomographyRotate{axis}, timing.tomography_ns);
    out.append(FullMeasure{}, 0.0);
    return out;
}

TomographyRecord measure_exact(const PulseSequence &seq, const ExperimentConfig &cfg) {
    if (seq.has_tomography()) {
        throw StructuralError("measure_exact expects a sequence without a tomography suffix");
    }
    TomographyRecord rec;
    rec.p_b = run_exact(seq, cfg).p_background;
    for (TomoAxis axis : kTomoAxes) {
        rec[axis] = run_exact(with_tomography(seq, axis, cfg.timing), cfg).p_background;
    }
    return rec;
}

}  // namespace uncollapse
