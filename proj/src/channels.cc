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

#include "uncollapse/channels.h"

#include <cmath>
#include <limits>

namespace uncollapse {

void PartialMeasurement::validate() const {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("measurement strength p must lie in [0, 1], got " + std::to_string(p));
    }
    if (!std::isfinite(phi_m)) {
        throw DomainError("measurement phase must be finite");
    }
}

Mat2 PartialMeasurement::null_operator() const {
    Mat2 m = Mat2::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = std::sqrt(1 - p) * std::polar(1.0, -phi_m);
    return m;
}

KrausSet PartialMeasurement::kraus() const {
    Mat2 tunnel = Mat2::Zero();
    tunnel(1, 1) = std::sqrt(p);
    return {"partial-measurement", {null_operator(), tunnel}};
}

Mat2 RotationPulse::unitary() const {
    double n = axis.norm();
    if (std::abs(n - 1) > kExactTol) {
        throw DomainError("rotation axis must be a unit vector");
    }
    Mat2 generator = axis.x() * pauli::x() + axis.y() * pauli::y() + axis.z() * pauli::z();
    return std::cos(angle / 2) * pauli::identity() - Complex(0, std::sin(angle / 2)) * generator;
}

RotationPulse RotationPulse::about_x(double angle, double duration_ns) {
    return {Eigen::Vector3d::UnitX(), angle, duration_ns};
}

RotationPulse RotationPulse::about_y(double angle, double duration_ns) {
    return {Eigen::Vector3d::UnitY(), angle, duration_ns};
}

DecoherenceStep DecoherenceStep::from_t2(double duration_ns, double t1, double t2) {
    double rate = 1 / t2 - 1 / (2 * t1);
    if (rate < -kExactTol) {
        throw DomainError("T2 exceeds 2*T1");
    }
    double t_phi = rate > 0 ? 1 / rate : std::numeric_limits<double>::infinity();
    return {duration_ns, t1, t_phi};
}

double DecoherenceStep::gamma() const { return -std::expm1(-duration_ns / t1); }

double DecoherenceStep::lambda() const {
    if (std::isinf(t_phi)) return 0.0;
    return -std::expm1(-duration_ns / t_phi);
}

KrausSet DecoherenceStep::amplitude_damping() const {
    double g = gamma();
    Mat2 k0 = Mat2::Zero();
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - g);
    Mat2 k1 = Mat2::Zero();
    k1(0, 1) = std::sqrt(g);
    return {"amplitude-damping", {k0, k1}};
}

KrausSet DecoherenceStep::dephasing() const {
    double half = lambda() / 2;
    return {"dephasing", {std::sqrt(1 - half) * pauli::identity(), std::sqrt(half) * pauli::z()}};
}

std::pair<QubitState, double> apply_partial_null(const QubitState &q, const PartialMeasurement &m) {
    m.validate();
    double before = q.trace();
    Mat2 m0 = m.null_operator();
    double tunneled = m.p * q.rho(1, 1).real();
    QubitState out{m0 * q.rho * m0.adjoint(), q.escaped + tunneled};
    double prob_null = before > 0 ? out.trace() / before : 1.0;
    return {out, prob_null};
}

std::pair<QubitState, double> apply_partial_tunnel(const QubitState &q, const PartialMeasurement &m) {
    auto [out, prob_null] = apply_partial_null(q, m);
    double before = q.trace();
    double prob_tunnel = before > 0 ? m.p * q.rho(1, 1).real() / before : 0.0;
    return {out, prob_tunnel};
}

QubitState apply_unitary(const QubitState &q, const Mat2 &u) { return {u * q.rho * u.adjoint(), q.escaped}; }

QubitState apply_rotation(const QubitState &q, const RotationPulse &r) { return apply_unitary(q, r.unitary()); }

QubitState apply_kraus(const QubitState &q, const KrausSet &k) {
    Mat2 acc = Mat2::Zero();
    for (const auto &op : k.ops) {
        acc += op * q.rho * op.adjoint();
    }
    return {acc, q.escaped};
}

QubitState apply_decoherence(const QubitState &q, const DecoherenceStep &d) {
    if (!(d.duration_ns >= 0)) {
        throw DomainError("decoherence duration must be non-negative");
    }
    if (d.duration_ns == 0) return q;
    return apply_kraus(apply_kraus(q, d.amplitude_damping()), d.dephasing());
}

double kraus_completeness_check(const KrausSet &k) {
    Mat2 sum = Mat2::Zero();
    for (const auto &op : k.ops) {
        sum += op.adjoint() * op;
    }
    return (sum - Mat2::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace uncollapse
