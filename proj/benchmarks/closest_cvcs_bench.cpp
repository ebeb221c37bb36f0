// Copyright 2026 The cvcs Authors
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

#include <benchmark/benchmark.h>

#include <vector>

#include "cvcs/analysis.hpp"
#include "cvcs/gaussian.hpp"
#include "cvcs/scenarios.hpp"

namespace {

void BM_ClosestCvcsLadder(benchmark::State& state) {
  const double r = state.range(0) / 100.0;
  const auto s = cvcs::schedule_symplectic(cvcs::ladder_schedule(17, r));
  cvcs::SearchOptions options;
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvcs::closest_cvcs(s, options));
  }
}
BENCHMARK(BM_ClosestCvcsLadder)->Args({15, 1})->Args({415, 1})->Unit(benchmark::kMillisecond);

void BM_ClosestCvcsGreedy(benchmark::State& state) {
  const auto s = cvcs::schedule_symplectic(cvcs::lattice_schedule(4, 4, 4.15));
  cvcs::SearchOptions options;
  options.mode = cvcs::SearchMode::kGreedy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvcs::closest_cvcs(s, options));
  }
}
BENCHMARK(BM_ClosestCvcsGreedy)->Unit(benchmark::kMillisecond);

void BM_ApplySymplectic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = cvcs::tms_symplectic(n, 1, n, 0.7);
  const auto z = cvcs::vacuum_state(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvcs::apply_symplectic(s, z));
  }
}
BENCHMARK(BM_ApplySymplectic)->Arg(4)->Arg(16)->Arg(64);

void BM_RunSchedule(benchmark::State& state) {
  const auto schedule = cvcs::ladder_schedule(17, 0.15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvcs::run_schedule(schedule));
  }
}
BENCHMARK(BM_RunSchedule);

}  // namespace

BENCHMARK_MAIN();
