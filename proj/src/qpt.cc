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

#include "uncollapse/qpt.h"

#include <numbers>

#include "uncollapse/tomography.h"

namespace uncollapse {

namespace {

using Mat16 = Eigen::Matrix<Complex, 16, 16>;
using Vec16 = Eigen::Matrix<Complex, 16, 1>;

std::array<Mat2, 4> paulis() { return {pauli::identity(), pauli::x(), pauli::y(), pauli::z()}; }

}  // namespace

ProbeSet ProbeSet::standard_inputs() {
    constexpr double pi = std::numbers::pi;
    ProbeSet set;
    set.probes[0].input = {pi, 0.0};
    set.probes[1].input = {pi / 2, pi / 2};
    set.probes[2].input = {pi / 2, 0.0};
    set.probes[3].input = {0.0, 0.0};
    return set;
}

ChiMatrix qpt_reconstruct(std::span<const Mat2> inputs, std::span<const Mat2> outputs) {
    if (inputs.size() != 4 || outputs.size() != 4) {
        throw SingularInversionError("process tomography needs exactly four probes");
    }
    const auto s = paulis();
    // Row (k, a, b), column (m, n): (s_m rho_k s_n)_ab.
    Mat16 design;
    Vec16 target;
    for (int k = 0; k < 4; ++k) {
        for (int m = 0; m < 4; ++m) {
            for (int n = 0; n < 4; ++n) {
                Mat2 term = s[m] * inputs[k] * s[n];
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        design(4 * k + 2 * a + b, 4 * m + n) = term(a, b);
                    }
                }
            }
        }
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                target(4 * k + 2 * a + b) = outputs[k](a, b);
            }
        }
    }
    Eigen::FullPivLU<Mat16> lu(design);
    lu.setThreshold(1e-10);
    if (lu.rank() < 16) {
        throw SingularInversionError("probe inputs are not linearly independent");
    }
    Vec16 solution = lu.solve(target);
    ChiMatrix chi;
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            chi.m(m, n) = solution(4 * m + n);
        }
    }
    return chi;
}

ChiMatrix qpt_reconstruct(const ProbeSet &probes) {
    std::array<Mat2, 4> inputs;
    std::array<Mat2, 4> outputs;
    for (int k = 0; k < 4; ++k) {
        inputs[k] = state_from_angles(probes.probes[k].input).rho;
        outputs[k] = density_from_bloch(probes.probes[k].output);
    }
    return qpt_reconstruct(inputs, outputs);
}

Mat2 apply_chi(const ChiMatrix &chi, const Mat2 &rho) {
    const auto s = paulis();
    Mat2 out = Mat2::Zero();
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            out += chi.m(m, n) * s[m] * rho * s[n];
        }
    }
    return out;
}

double process_fidelity(const ChiMatrix &chi) { return chi.m(1, 1).real(); }

CpDiagnostics cp_diagnostics(const ChiMatrix &chi, double tol) {
    CpDiagnostics d;
    d.hermiticity_residual = (chi.m - chi.m.adjoint()).cwiseAbs().maxCoeff();
    d.trace = chi.m.trace().real();
    Eigen::Matrix4cd herm = (chi.m + chi.m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 4; ++i) {
        d.eigenvalues[i] = solver.eigenvalues()(i);
    }
    d.min_eigenvalue = d.eigenvalues[0];
    d.completely_positive = d.min_eigenvalue >= -tol;
    return d;
}

ProbeSet simulate_probes_exact(const ExperimentConfig &cfg) {
    ProbeSet set = ProbeSet::standard_inputs();
    for (auto &probe : set.probes) {
        ExperimentConfig probe_cfg = cfg;
        probe_cfg.initial = probe.input;
        probe.output = bloch_reconstruct(measure_exact(build_uncollapse(probe_cfg), probe_cfg));
    }
    return set;
}

}  // namespace uncollapse
