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

#ifndef UNCOLLAPSE_CHANNELS_H
#define UNCOLLAPSE_CHANNELS_H

#include <string>
#include <utility>
#include <vector>

#include "uncollapse/qubit.h"

namespace uncollapse {

/// Labeled Kraus operators; sum K^dagger K should equal I on the in-well subspace.
struct KrausSet {
    std::string label;
    std::vector<Mat2> ops;
};

/// Tunable partial measurement. `p` is the probability that |1> tunnels out,
/// `phi_m` the phase the |1> amplitude picks up relative to |0> on a null result.
struct PartialMeasurement {
    double p = 0.0;
    double phi_m = 0.0;

    void validate() const;
    /// diag(1, sqrt(1-p) e^{-i phi_m}).
    Mat2 null_operator() const;
    /// Both branches: {null, diag(0, sqrt(p))}.
    KrausSet kraus() const;
};

struct RotationPulse {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
    double angle = 0.0;
    double duration_ns = 0.0;

    /// exp(-i angle (axis . sigma) / 2).
    Mat2 unitary() const;

    static RotationPulse about_x(double angle, double duration_ns = 0.0);
    static RotationPulse about_y(double angle, double duration_ns = 0.0);
};

/// Amplitude damping toward |0> followed by pure dephasing over one step.
struct DecoherenceStep {
    double duration_ns = 0.0;
    double t1 = 450.0;
    /// Pure-dephasing time; +inf disables dephasing.
    double t_phi = 0.0;

    /// 1/T2 = 1/(2 T1) + 1/T_phi. T2 == 2 T1 gives t_phi = +inf.
    static DecoherenceStep from_t2(double duration_ns, double t1, double t2);

    /// gamma = 1 - exp(-duration/T1).
    double gamma() const;
    /// lambda = 1 - exp(-duration/T_phi); coherences are scaled by (1 - lambda).
    double lambda() const;

    KrausSet amplitude_damping() const;
    /// {sqrt(1 - lambda/2) I, sqrt(lambda/2) Z}.
    KrausSet dephasing() const;
};

/// Null-result branch. The returned rho is M0 rho M0^dagger (unnormalized); the
/// weight p*rho11 that tunneled is booked into `escaped`. Second member is the
/// conditional null probability trace(M0 rho M0^dagger)/trace(rho).
std::pair<QubitState, double> apply_partial_null(const QubitState &q, const PartialMeasurement &m);

/// Tunnel branch, for ensemble bookkeeping: the state is the same as for the
/// null branch; the second member is p*rho11/trace(rho).
std::pair<QubitState, double> apply_partial_tunnel(const QubitState &q, const PartialMeasurement &m);

QubitState apply_rotation(const QubitState &q, const RotationPulse &r);
QubitState apply_unitary(const QubitState &q, const Mat2 &u);

QubitState apply_decoherence(const QubitState &q, const DecoherenceStep &d);

/// Applies sum_k K rho K^dagger; escaped is untouched.
QubitState apply_kraus(const QubitState &q, const KrausSet &k);

/// Max-norm deviation of sum K^dagger K from I.
double kraus_completeness_check(const KrausSet &k);

}  // namespace uncollapse

#endif
