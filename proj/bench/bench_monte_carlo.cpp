// SPDX-License-Identifier: Apache-2.0
//
// hmimo: wavenumber-domain channel simulation for multi-user holographic MIMO surfaces
// Copyright (C) 2026 The hmimo authors
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

// Serial reference kernels against the OpenMP versions.
// Run with OMP_NUM_THREADS set to compare scaling.

#include "hmimo/rate.hpp"
#include "hmimo/reference.hpp"

#include <benchmark/benchmark.h>

#include <array>

namespace
{
    const hmimo::MultiUserLink &bench_link()
    {
        static const auto link = hmimo::make_link({10, 10, 1.0 / 6.0}, {4, 4, 1.0 / 6.0}, 3);
        return link;
    }

    constexpr std::array<double, 3> snr{-10.0, 10.0, 30.0};

    hmimo::MonteCarloOptions bench_options(std::size_t trials)
    {
        hmimo::MonteCarloOptions opt;
        opt.n_trials = trials;
        opt.seed = 7;
        return opt;
    }

    void BM_MonteCarloSerial(benchmark::State &state)
    {
        const auto opt = bench_options(std::size_t(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(hmimo::reference::monte_carlo_se(bench_link(), hmimo::Scheme::zf, snr, opt));
        state.SetItemsProcessed(state.iterations() * state.range(0));
    }

    void BM_MonteCarloParallel(benchmark::State &state)
    {
        const auto opt = bench_options(std::size_t(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(hmimo::monte_carlo_se(bench_link(), hmimo::Scheme::zf, snr, opt));
        state.SetItemsProcessed(state.iterations() * state.range(0));
    }

    void BM_CellVariancesSerial(benchmark::State &state)
    {
        const auto basis = hmimo::build_harmonic_matrix({int(state.range(0)), int(state.range(0)), 1.0 / 3.0},
                                                        hmimo::LinkSide::transmit);
        for (auto _ : state)
            benchmark::DoNotOptimize(hmimo::reference::cell_variances(basis));
    }

    void BM_CellVariancesParallel(benchmark::State &state)
    {
        const auto basis = hmimo::build_harmonic_matrix({int(state.range(0)), int(state.range(0)), 1.0 / 3.0},
                                                        hmimo::LinkSide::transmit);
        for (auto _ : state)
            benchmark::DoNotOptimize(hmimo::cell_variances(basis));
    }
}

BENCHMARK(BM_MonteCarloSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CellVariancesSerial)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CellVariancesParallel)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
