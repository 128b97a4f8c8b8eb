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

#ifndef UNCOLLAPSE_QUBIT_H
#define UNCOLLAPSE_QUBIT_H

#include <Eigen/Dense>
#include <complex>

#include "uncollapse/errors.h"

namespace uncollapse {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Ket = Eigen::Vector2cd;

inline constexpr double kExactTol = 1e-12;
inline constexpr double kRoundoffTol = 1e-9;

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
/// Index 0..3 in the order I, X, Y, Z.
Mat2 by_index(int k);
}  // namespace pauli

/// Pure state cos(theta0/2)|0> + exp(-i phi0) sin(theta0/2)|1>.
struct PureState {
    double theta0 = 0.0;
    double phi0 = 0.0;

    Ket amplitudes() const;
};

/// Conditional in-well density operator plus the probability that the qubit has
/// already tunneled out. `rho` is left unnormalized: trace(rho) + escaped == 1.
struct QubitState {
    Mat2 rho = Mat2::Zero();
    double escaped = 0.0;

    double trace() const { return rho.trace().real(); }
    /// rho / trace(rho); throws UndefinedStateError when the in-well weight vanished.
    Mat2 normalized() const;
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

/// Device constants. Times in ns, frequency in GHz (metadata only, the
/// dynamics run in the rotating frame).
struct DeviceParams {
    double t1 = 450.0;
    double t2_echo = 350.0;
    double t2_ramsey = 120.0;
    double e10_ghz = 6.75;
    double visibility = 1.0;

    /// Throws DomainError unless all times are positive, t2_echo <= 2 t1,
    /// t2_ramsey <= t2_echo and visibility lies in [0, 1].
    void validate() const;
};

QubitState state_from_angles(const PureState &s);
QubitState state_from_ket(const Ket &psi);
BlochVector bloch_from_state(const QubitState &q);
QubitState state_from_bloch(const BlochVector &b);

/// (I + x X + y Y + z Z) / 2 without the unit-ball check. Linear inversion of
/// noisy tomography data can land slightly outside the ball.
Mat2 density_from_bloch(const BlochVector &b);

/// Uhlmann fidelity (squared convention) between the normalized conditional states.
double state_fidelity(const QubitState &a, const QubitState &b);

double relaxation_probability(const DeviceParams &d, double duration_ns);

double purity(const QubitState &q);

/// Checks hermiticity, positivity and trace + escaped == 1. Throws std::logic_error
/// naming the violated invariant.
void check_invariants(const QubitState &q, double tol = kRoundoffTol);

}  // namespace uncollapse

#endif
