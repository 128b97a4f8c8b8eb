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

#ifndef UNCOLLAPSE_MONTECARLO_H
#define UNCOLLAPSE_MONTECARLO_H

#include <cstdint>
#include <vector>

#include "uncollapse/protocol.h"
#include "uncollapse/qpt.h"
#include "uncollapse/tomography.h"

namespace uncollapse {

struct ShotRecord {
    std::uint64_t rng_seed = 0;
    /// One flag per partial measurement that was executed; a shot stops at its
    /// first tunneling event.
    std::vector<bool> outcomes;
    /// Click of the tomography full measurement (false if none was reached).
    bool final_detected = false;

    /// Tunneled before tomography; such shots only count toward the background.
    bool background() const;
    /// The SQUID reports a tunneling event for this shot.
    bool tunneled() const { return background() || final_detected; }
};

struct EstimateSet {
    TomographyRecord record;
    std::uint64_t n_total = 0;
};

/// One stochastic run of `seq`: partial measurements tunnel with probability
/// p * |psi_1|^2, decoherence is unraveled into amplitude-damping and
/// phase-flip jumps of the same Kraus channels the exact engine uses.
ShotRecord sample_sequence(const PulseSequence &seq, const ExperimentConfig &cfg, std::uint64_t seed);

/// Tunneling probabilities of the three tomography settings attached to the
/// pre-tomography sequence `seq`, n_shots per setting. The shot with index i of
/// setting s uses derive_seed(seed, s, i), so the result is bit-identical for
/// any worker count. `workers` <= 0 uses the OpenMP default.
EstimateSet estimate_probabilities(const PulseSequence &seq, const ExperimentConfig &cfg, std::uint64_t n_shots,
                                   std::uint64_t seed, int workers = 0);

/// Single-threaded reference of estimate_probabilities.
EstimateSet estimate_probabilities_serial(const PulseSequence &seq, const ExperimentConfig &cfg,
                                          std::uint64_t n_shots, std::uint64_t seed);

/// Monte Carlo counterpart of simulate_probes_exact; P_B is the pooled
/// pre-tomography tunneling rate.
ProbeSet simulate_probes_montecarlo(const ExperimentConfig &cfg, std::uint64_t n_shots, std::uint64_t seed,
                                    int workers = 0);

}  // namespace uncollapse

#endif
