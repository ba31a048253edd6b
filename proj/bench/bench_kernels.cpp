// Copyright 2026 The scot-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial vs OpenMP evaluation of the exact cheating probability, plus one
// see-saw step.

#include <benchmark/benchmark.h>

#include "scot/adversary.hpp"
#include "scot/dqacm.hpp"

namespace {

using namespace scot;

dqacm::DqacmConfig config_for(const benchmark::State& state) {
    return dqacm::make_config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
}

void run_exact(benchmark::State& state, adv::Exec exec) {
    const auto cfg = config_for(state);
    const auto strat = adv::random_strategy(cfg, 0, 1, 2, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(adv::cheat_probability_exact(cfg, strat, exec));
    }
}

void BM_ExactSerial(benchmark::State& state) { run_exact(state, adv::Exec::Serial); }
void BM_ExactParallel(benchmark::State& state) { run_exact(state, adv::Exec::Parallel); }

void run_seesaw(benchmark::State& state, adv::Exec exec) {
    const auto cfg = config_for(state);
    adv::SeesawOptions opts;
    opts.iterations = 1;
    opts.exec = exec;
    for (auto _ : state) {
        benchmark::DoNotOptimize(adv::seesaw_optimize(cfg, opts).p);
    }
}

void BM_SeesawStepSerial(benchmark::State& state) { run_seesaw(state, adv::Exec::Serial); }
void BM_SeesawStepParallel(benchmark::State& state) { run_seesaw(state, adv::Exec::Parallel); }

BENCHMARK(BM_ExactSerial)->Args({2, 1})->Args({2, 2})->Args({3, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactParallel)->Args({2, 1})->Args({2, 2})->Args({3, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeesawStepSerial)->Args({2, 2})->Args({3, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeesawStepParallel)->Args({2, 2})->Args({3, 1})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
