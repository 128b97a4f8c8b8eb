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

#ifndef UNCOLLAPSE_SWEEP_H
#define UNCOLLAPSE_SWEEP_H

#include <cstdint>
#include <span>
#include <vector>

#include "uncollapse/protocol.h"
#include "uncollapse/qpt.h"
#include "uncollapse/tomography.h"

namespace uncollapse {

/// One grid point of a strength sweep.
struct SweepRow {
    double p = 0.0;
    TomographyRecord record;
    BlochVector bloch;
    /// Polar angle of `bloch`; NaN when the vector is too short to have a direction.
    double theta = 0.0;
    double p_success = 0.0;
};

struct QptRow {
    double p = 0.0;
    ChiMatrix chi;
    double fidelity = 0.0;
    CpDiagnostics diagnostics;
};

/// Throws DomainError unless every value lies in [0, 1) and the grid strictly increases.
void validate_grid(std::span<const double> p_grid);

/// Exact engine at every p, parallel over grid points. Row order follows the grid.
std::vector<SweepRow> sweep_exact(SequenceKind kind, const ExperimentConfig &cfg, std::span<const double> p_grid);
std::vector<SweepRow> sweep_exact_serial(SequenceKind kind, const ExperimentConfig &cfg,
                                         std::span<const double> p_grid);

/// Monte Carlo estimate at every p. Grid point j is seeded with derive_seed(seed, kind, j).
std::vector<SweepRow> sweep_montecarlo(SequenceKind kind, const ExperimentConfig &cfg,
                                       std::span<const double> p_grid, std::uint64_t shots, std::uint64_t seed,
                                       int workers = 0);

std::vector<QptRow> sweep_qpt_exact(const ExperimentConfig &cfg, std::span<const double> p_grid);
std::vector<QptRow> sweep_qpt_montecarlo(const ExperimentConfig &cfg, std::span<const double> p_grid,
                                         std::uint64_t shots, std::uint64_t seed, int workers = 0);

}  // namespace uncollapse

#endif
