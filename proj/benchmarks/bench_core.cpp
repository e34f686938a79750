// SPDX-License-Identifier: Apache-2.0
//
// ceaad - cross-entropy diagnosis of blocked antennas in mmWave MIMO arrays
// Copyright (C) 2026 ceaad contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "ceaad/baselines.hpp"
#include "ceaad/harness.hpp"

using namespace ceaad;

namespace
{
    ExperimentConfig bench_config(Index k, BlockageMode mode)
    {
        ExperimentConfig cfg;
        cfg.blockage_probability = 0.1;
        cfg.mode = mode;
        cfg.sweep_values = {static_cast<double>(k)};
        cfg.snr_db = 5.0;
        cfg.master_seed = 17;
        return cfg;
    }
} // namespace

static void BM_LsSolve(benchmark::State &state)
{
    const Index k = state.range(0), n = state.range(1);
    Rng rng(1);
    const CMat a = gen_precoder(k, n, rng);
    CVec y(k);
    for (Index i = 0; i < k; i++)
        y(i) = rng.complex_normal(1.0);
    for (auto _ : state)
    {
        auto sol = ls_solve(a, y);
        benchmark::DoNotOptimize(sol.x.data());
    }
}
BENCHMARK(BM_LsSolve)->Args({50, 10})->Args({50, 25})->Args({90, 25})->Args({90, 50});

static void BM_Objective(benchmark::State &state)
{
    const auto cfg = bench_config(state.range(0), BlockageMode::partial);
    const auto data = gen_tx_trial_data(cfg, state.range(0), noise_var_from_snr(5.0), 0);
    const CVec h = vec(data.channel.H);
    Rng rng(2);
    auto prob = init_prob(10, 10, 2, 2);
    const auto cands = sample_candidates(prob, 64, rng);
    size_t i = 0;
    for (auto _ : state)
    {
        const auto res = objective(data.y, data.F, cands[i % cands.size()].support, 0.6,
                                   BlockageMode::partial, h);
        benchmark::DoNotOptimize(res.zeta);
        i++;
    }
}
BENCHMARK(BM_Objective)->Arg(50)->Arg(90);

static void BM_CeAadComplete(benchmark::State &state)
{
    auto cfg = bench_config(60, BlockageMode::complete);
    cfg.cluster.shape = {{2, 2}};
    cfg.cluster.align_rows = cfg.cluster.align_cols = 2;
    cfg.blockage_probability = 0.04;
    const auto data = gen_tx_trial_data(cfg, 60, 0.0, 0);
    const CVec h = vec(data.channel.H);
    CeConfig solver;
    solver.mode = BlockageMode::complete;
    for (auto _ : state)
    {
        Rng rng(3);
        const auto rep = run_ce_aad(data.y, data.F, h, 10, 10, solver, rng);
        benchmark::DoNotOptimize(rep.best_objective);
    }
}
BENCHMARK(BM_CeAadComplete)->Unit(benchmark::kMillisecond);

static void BM_CeAadPartial(benchmark::State &state)
{
    const auto cfg = bench_config(state.range(0), BlockageMode::partial);
    const auto data = gen_tx_trial_data(cfg, state.range(0), noise_var_from_snr(5.0), 0);
    const CVec h = vec(data.channel.H);
    CeConfig solver;
    for (auto _ : state)
    {
        Rng rng(4);
        const auto rep = run_ce_aad(data.y, data.F, h, 10, 10, solver, rng);
        benchmark::DoNotOptimize(rep.best_objective);
    }
}
BENCHMARK(BM_CeAadPartial)->Arg(50)->Arg(90)->Unit(benchmark::kMillisecond);

static void BM_Omp(benchmark::State &state)
{
    const auto cfg = bench_config(state.range(0), BlockageMode::partial);
    const auto data = gen_tx_trial_data(cfg, state.range(0), noise_var_from_snr(5.0), 0);
    const double rho = std::sqrt(static_cast<double>(state.range(0)) * data.noise_var);
    for (auto _ : state)
    {
        const auto r = omp(data.y, data.F, 25, rho);
        benchmark::DoNotOptimize(r.q_hat.data());
    }
}
BENCHMARK(BM_Omp)->Arg(50)->Arg(90);

static void BM_UpaChannel(benchmark::State &state)
{
    const UpaGeometry g{10, 10, 0.5, 0.5};
    for (auto _ : state)
    {
        Rng rng(5);
        const auto ch = gen_upa_channel(g, 10, rng);
        benchmark::DoNotOptimize(ch.H.data());
    }
}
BENCHMARK(BM_UpaChannel);

BENCHMARK_MAIN();
