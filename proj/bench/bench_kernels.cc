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

#include <benchmark/benchmark.h>

#include <numbers>

#include "uncollapse/montecarlo.h"
#include "uncollapse/sweep.h"

using namespace uncollapse;

namespace {

ExperimentConfig bench_config() {
    ExperimentConfig cfg;
    cfg.p = 0.47;
    return cfg;
}

void BM_EstimateSerial(benchmark::State &state) {
    auto cfg = bench_config();
    auto seq = build_uncollapse(cfg);
    const auto shots = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_probabilities_serial(seq, cfg, shots, 7));
    }
    state.SetItemsProcessed(state.iterations() * 3 * state.range(0));
}
BENCHMARK(BM_EstimateSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EstimateParallel(benchmark::State &state) {
    auto cfg = bench_config();
    auto seq = build_uncollapse(cfg);
    const auto shots = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_probabilities(seq, cfg, shots, 7));
    }
    state.SetItemsProcessed(state.iterations() * 3 * state.range(0));
}
BENCHMARK(BM_EstimateParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_QptSweepSerial(benchmark::State &state) {
    auto cfg = bench_config();
    std::vector<double> grid;
    for (int j = 0; j < 20; ++j) grid.push_back(j / 20.0);
    for (auto _ : state) {
        for (double p : grid) {
            cfg.p = p;
            benchmark::DoNotOptimize(qpt_reconstruct(simulate_probes_exact(cfg)));
        }
    }
}
BENCHMARK(BM_QptSweepSerial)->Unit(benchmark::kMillisecond);

void BM_QptSweepParallel(benchmark::State &state) {
    auto cfg = bench_config();
    std::vector<double> grid;
    for (int j = 0; j < 20; ++j) grid.push_back(j / 20.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_qpt_exact(cfg, grid));
    }
}
BENCHMARK(BM_QptSweepParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
