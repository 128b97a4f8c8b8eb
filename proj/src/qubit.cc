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

#include "uncollapse/qubit.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uncollapse {

namespace pauli {
Mat2 identity() { return Mat2::Identity(); }

Mat2 x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Mat2 y() {
    Mat2 m;
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

Mat2 z() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Mat2 by_index(int k) {
    switch (k) {
        case 0: return identity();
        case 1: return x();
        case 2: return y();
        case 3: return z();
    }
    throw std::out_of_range("Pauli index must be 0..3");
}
}  // namespace pauli

Ket PureState::amplitudes() const {
    Ket psi;
    psi << std::cos(theta0 / 2), std::polar(1.0, -phi0) * std::sin(theta0 / 2);
    return psi;
}

Mat2 QubitState::normalized() const {
    double t = trace();
    if (!(t > kExactTol)) {
        throw UndefinedStateError("conditional state has vanishing trace " + std::to_string(t));
    }
    return rho / t;
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

void DeviceParams::validate() const {
    if (!(t1 > 0 && t2_echo > 0 && t2_ramsey > 0)) {
        throw DomainError("device times must be positive");
    }
    if (t2_echo > 2 * t1 * (1 + kExactTol)) {
        throw DomainError("t2_echo must not exceed 2*t1");
    }
    if (t2_ramsey > t2_echo * (1 + kExactTol)) {
        throw DomainError("t2_ramsey must not exceed t2_echo");
    }
    if (!(visibility >= 0 && visibility <= 1)) {
        throw DomainError("visibility must lie in [0, 1]");
    }
}

QubitState state_from_angles(const PureState &s) {
    if (!(s.theta0 >= 0 && s.theta0 <= std::numbers::pi)) {
        throw DomainError("theta0 must lie in [0, pi], got " + std::to_string(s.theta0));
    }
    if (!std::isfinite(s.phi0)) {
        throw DomainError("phi0 must be finite");
    }
    return state_from_ket(s.amplitudes());
}

QubitState state_from_ket(const Ket &psi) {
    QubitState q;
    q.rho = psi * psi.adjoint();
    q.escaped = 0.0;
    return q;
}

BlochVector bloch_from_state(const QubitState &q) {
    Mat2 r = q.normalized();
    // rho = (I + x X + y Y + z Z)/2  =>  rho01 = (x - i y)/2.
    return {2 * r(0, 1).real(), -2 * r(0, 1).imag(), (r(0, 0) - r(1, 1)).real()};
}

Mat2 density_from_bloch(const BlochVector &b) {
    return (pauli::identity() + b.x * pauli::x() + b.y * pauli::y() + b.z * pauli::z()) / 2.0;
}

QubitState state_from_bloch(const BlochVector &b) {
    if (!(b.norm() <= 1 + kRoundoffTol)) {
        throw DomainError("Bloch vector lies outside the unit ball");
    }
    return {density_from_bloch(b), 0.0};
}

double state_fidelity(const QubitState &a, const QubitState &b) {
    Mat2 ra = a.normalized();
    Mat2 rb = b.normalized();
    // For 2x2 states: F = tr(ra rb) + 2 sqrt(det ra det rb).
    double overlap = (ra * rb).trace().real();
    double da = std::max(0.0, ra.determinant().real());
    double db = std::max(0.0, rb.determinant().real());
    return overlap + 2 * std::sqrt(da * db);
}

double relaxation_probability(const DeviceParams &d, double duration_ns) {
    if (!(duration_ns >= 0)) {
        throw DomainError("duration must be non-negative");
    }
    return -std::expm1(-duration_ns / d.t1);
}

double purity(const QubitState &q) {
    Mat2 r = q.normalized();
    return (r * r).trace().real();
}

void check_invariants(const QubitState &q, double tol) {
    const Mat2 &r = q.rho;
    if ((r - r.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw std::logic_error("state is not Hermitian");
    }
    // Smallest eigenvalue of a Hermitian 2x2.
    double mean = 0.5 * (r(0, 0).real() + r(1, 1).real());
    double half_gap = std::hypot(0.5 * (r(0, 0).real() - r(1, 1).real()), std::abs(r(0, 1)));
    if (mean - half_gap < -tol) {
        throw std::logic_error("state is not positive semidefinite");
    }
    if (std::abs(q.trace() + q.escaped - 1) > tol) {
        throw std::logic_error("trace + escaped != 1");
    }
    if (q.trace() < -tol || q.trace() > 1 + tol) {
        throw std::logic_error("trace outside [0, 1]");
    }
}

}  // namespace uncollapse
