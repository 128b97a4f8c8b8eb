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

#include "uncollapse/sweep.h"

#include <cmath>
#include <exception>
#include <limits>

#include "uncollapse/montecarlo.h"
#include "uncollapse/rng.h"

namespace uncollapse {

namespace {

double direction_theta(const BlochVector &b) {
    if (b.norm() <= kRoundoffTol) return std::numeric_limits<double>::quiet_NaN();
    return polar_azimuth(b).theta;
}

SweepRow exact_row(SequenceKind kind, ExperimentConfig cfg, double p) {
    cfg.p = p;
    auto seq = build_sequence(kind, cfg);
    SweepRow row;
    row.p = p;
    row.record = measure_exact(seq, cfg);
    row.bloch = bloch_reconstruct(row.record);
    row.theta = direction_theta(row.bloch);
    row.p_success = 1 - row.record.p_b;
    return row;
}

QptRow qpt_row(double p, const ProbeSet &probes) {
    QptRow row;
    row.p = p;
    row.chi = qpt_reconstruct(probes);
    row.fidelity = process_fidelity(row.chi);
    row.diagnostics = cp_diagnostics(row.chi);
    return row;
}

/// Runs body(j) for every grid index in parallel and rethrows the first failure
/// (by grid order) after the loop.
template <class Body>
void parallel_over_grid(std::size_t n, Body &&body) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < count; ++j) {
        try {
            body(static_cast<std::size_t>(j));
        } catch (...) {
            errors[j] = std::current_exception();
        }
    }
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

void validate_grid(std::span<const double> p_grid) {
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
        if (!(p_grid[j] >= 0 && p_grid[j] < 1)) {
            throw DomainError("grid strengths must lie in [0, 1)");
        }
        if (j > 0 && !(p_grid[j] > p_grid[j - 1])) {
            throw DomainError("grid strengths must strictly increase");
        }
    }
}

std::vector<SweepRow> sweep_exact(SequenceKind kind, const ExperimentConfig &cfg, std::span<const double> p_grid) {
    validate_grid(p_grid);
    cfg.validate();
    std::vector<SweepRow> rows(p_grid.size());
    parallel_over_grid(rows.size(), [&](std::size_t j) { rows[j] = exact_row(kind, cfg, p_grid[j]); });
    return rows;
}

std::vector<SweepRow> sweep_exact_serial(SequenceKind kind, const ExperimentConfig &cfg,
                                         std::span<const double> p_grid) {
    validate_grid(p_grid);
    std::vector<SweepRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) {
        rows.push_back(exact_row(kind, cfg, p));
    }
    return rows;
}

std::vector<SweepRow> sweep_montecarlo(SequenceKind kind, const ExperimentConfig &cfg,
                                       std::span<const double> p_grid, std::uint64_t shots, std::uint64_t seed,
                                       int workers) {
    validate_grid(p_grid);
    std::vector<SweepRow> rows;
    rows.reserve(p_grid.size());
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
        ExperimentConfig point = cfg;
        point.p = p_grid[j];
        auto est = estimate_probabilities(build_sequence(kind, point), point, shots,
                                          derive_seed(seed, static_cast<std::uint64_t>(kind), j), workers);
        SweepRow row;
        row.p = point.p;
        row.record = est.record;
        row.bloch = bloch_reconstruct(row.record);
        row.theta = direction_theta(row.bloch);
        row.p_success = 1 - row.record.p_b;
        rows.push_back(row);
    }
    return rows;
}

std::vector<QptRow> sweep_qpt_exact(const ExperimentConfig &cfg, std::span<const double> p_grid) {
    validate_grid(p_grid);
    cfg.validate();
    std::vector<QptRow> rows(p_grid.size());
    parallel_over_grid(rows.size(), [&](std::size_t j) {
        ExperimentConfig point = cfg;
        point.p = p_grid[j];
        rows[j] = qpt_row(point.p, simulate_probes_exact(point));
    });
    return rows;
}

std::vector<QptRow> sweep_qpt_montecarlo(const ExperimentConfig &cfg, std::span<const double> p_grid,
                                         std::uint64_t shots, std::uint64_t seed, int workers) {
    validate_grid(p_grid);
    std::vector<QptRow> rows;
    rows.reserve(p_grid.size());
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
        ExperimentConfig point = cfg;
        point.p = p_grid[j];
        rows.push_back(qpt_row(point.p, simulate_probes_montecarlo(point, shots, derive_seed(seed, 2, j), workers)));
    }
    return rows;
}

}  // namespace uncollapse
