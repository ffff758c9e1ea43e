// Copyright 2026 The nfl-lab Authors
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

#include "nfllab/algorithms.hpp"
#include "nfllab/experiments.hpp"
#include "nfllab/mco.hpp"
#include "nfllab/verify.hpp"

namespace {

using namespace nfllab;

void BM_NflSum(benchmark::State& state) {
  const FiniteSpace space(static_cast<int>(state.range(0)), {0.0, 1.0});
  const auto algorithm = make_algorithm("hill_descend(start=0)");
  const PerformanceMeasure measure = PerformanceMeasure::Min();
  for (auto _ : state) {
    benchmark::DoNotOptimize(nfl_sum(*algorithm, space, 2, measure));
  }
}
BENCHMARK(BM_NflSum)->Arg(4)->Arg(8)->Arg(12);

void BM_NflSumThreaded(benchmark::State& state) {
  const FiniteSpace space(14, {0.0, 1.0});
  const auto algorithm = make_algorithm("hill_descend(start=0)");
  const PerformanceMeasure measure = PerformanceMeasure::Min();
  for (auto _ : state) {
    benchmark::DoNotOptimize(nfl_sum(*algorithm, space, 2, measure,
                                     static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_NflSumThreaded)->Arg(1)->Arg(2)->Arg(4);

void BM_FitQ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> levels(8);
  for (int i = 0; i < 8; ++i) levels[static_cast<std::size_t>(i)] = i;
  const FiniteSpace space(n, levels, UINT64_MAX);
  const ObjectiveTable f = make_smooth_objective(space, 17);
  SearchTrace d;
  for (int i = 0; i < 8; ++i) {
    const int x = i * n / 8;
    d.append(x, f.y_index()[static_cast<std::size_t>(x)]);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_q(d, space, 1.0));
  }
}
BENCHMARK(BM_FitQ)->Arg(64)->Arg(512)->Arg(4096);

void BM_RunMco(benchmark::State& state) {
  std::vector<double> levels(8);
  for (int i = 0; i < 8; ++i) levels[static_cast<std::size_t>(i)] = i;
  const FiniteSpace space(64, levels, UINT64_MAX);
  const ObjectiveTable f = make_smooth_objective(space, 23);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_mco(space, f, 16, {0.25, 1.0, 4.0}, 2, 4, 11));
  }
}
BENCHMARK(BM_RunMco);

}  // namespace

BENCHMARK_MAIN();
