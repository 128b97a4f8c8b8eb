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

#ifndef UNCOLLAPSE_QPT_H
#define UNCOLLAPSE_QPT_H

#include <array>
#include <span>

#include "uncollapse/protocol.h"
#include "uncollapse/qubit.h"

namespace uncollapse {

struct Probe {
    PureState input;
    BlochVector output;
};

/// Four input states with their reconstructed outputs.
struct ProbeSet {
    std::array<Probe, 4> probes;

    /// |1>, (|0> - i|1>)/sqrt2, (|0> + |1>)/sqrt2, |0>; outputs left at the origin.
    static ProbeSet standard_inputs();
};

/// Process matrix in the Pauli basis, index order (I, X, Y, Z).
struct ChiMatrix {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();

    Complex operator()(int row, int col) const { return m(row, col); }
};

/// Linear inversion: the unique chi with sum_mn chi_mn s_m rho_k s_n = out_k for
/// every probe k. Inputs must span the 2x2 operator space.
ChiMatrix qpt_reconstruct(std::span<const Mat2> inputs, std::span<const Mat2> outputs);
ChiMatrix qpt_reconstruct(const ProbeSet &probes);

/// sum_mn chi_mn s_m rho s_n.
Mat2 apply_chi(const ChiMatrix &chi, const Mat2 &rho);

/// Re chi(X, X): overlap with an ideal pi rotation about X.
double process_fidelity(const ChiMatrix &chi);

struct CpDiagnostics {
    /// Eigenvalues of the Hermitian part, ascending.
    std::array<double, 4> eigenvalues{};
    double min_eigenvalue = 0.0;
    double hermiticity_residual = 0.0;
    double trace = 0.0;
    bool completely_positive = true;
};

CpDiagnostics cp_diagnostics(const ChiMatrix &chi, double tol = kRoundoffTol);

/// Runs the uncollapse sequence of `cfg` on each standard probe in exact mode,
/// reconstructs the outputs by state tomography, and returns the probe set.
ProbeSet simulate_probes_exact(const ExperimentConfig &cfg);

}  // namespace uncollapse

#endif
