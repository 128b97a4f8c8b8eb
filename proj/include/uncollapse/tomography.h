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

#ifndef UNCOLLAPSE_TOMOGRAPHY_H
#define UNCOLLAPSE_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <optional>

#include "uncollapse/protocol.h"
#include "uncollapse/qubit.h"

namespace uncollapse {

inline constexpr std::array<TomoAxis, 3> kTomoAxes{TomoAxis::X, TomoAxis::Y, TomoAxis::Z};

/// Tunneling probabilities of the three tomography settings together with the
/// background probability of tunneling before tomography.
struct TomographyRecord {
    double p_x = 0.0;
    double p_y = 0.0;
    double p_z = 0.0;
    double p_b = 0.0;
    /// Shots per tomography setting (Monte Carlo estimates only).
    std::optional<std::uint64_t> shots;
    /// Standard errors in the order P_X, P_Y, P_Z, P_B.
    std::optional<std::array<double, 4>> std_error;

    double &operator[](TomoAxis axis);
    double operator[](TomoAxis axis) const;

    /// Throws DomainError unless every probability lies in [0, 1] and no setting
    /// falls below the background by more than `tol`.
    void validate(double tol = kRoundoffTol) const;
};

/// Forward model: P_s = p_b + (1 - p_b) * v * <1|R_s rho R_s^dagger|1> on the
/// normalized conditional state, v = d.visibility.
TomographyRecord tomo_probabilities(const QubitState &q, double p_b, const DeviceParams &d);

/// Linear inversion {X, -Y, -Z} = 2 (P_{X,Y,Z} - P_B) / (1 - P_B) - 1.
BlochVector bloch_reconstruct(const TomographyRecord &t);

struct PolarAngles {
    double theta = 0.0;
    /// Azimuth in [0, 2 pi), measured with the same sign as phi0 in PureState.
    double phi = 0.0;
};

PolarAngles polar_azimuth(const BlochVector &b);

/// Copy of `seq` with TomographyRotate(axis) and FullMeasure appended.
PulseSequence with_tomography(const PulseSequence &seq, TomoAxis axis, const Timing &timing);

/// Exact-mode tomography of the pre-tomography sequence `seq`: P_B is the
/// escaped weight before tomography, each P_s the total tunneling probability
/// of the sequence with the setting's suffix attached.
TomographyRecord measure_exact(const PulseSequence &seq, const ExperimentConfig &cfg);

}  // namespace uncollapse

#endif
