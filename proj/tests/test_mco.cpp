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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "nfllab/experiments.hpp"
#include "nfllab/mco.hpp"
#include "nfllab/rng.hpp"

using namespace nfllab;

namespace {

const FiniteSpace kRing4(4, {0.0, 1.0, 2.0, 3.0});

}  // namespace

TEST_CASE("flat data gives uniform q at every temperature") {
  const FiniteSpace space(5, {1.0});
  SearchTrace d;
  d.append(0, 0);
  d.append(2, 0);
  for (double t : {0.01, 1.0, 100.0}) {
    const SamplingDistribution q = fit_q(d, space, t);
    CHECK(q.weights[0] == 0.0);
    CHECK(q.weights[2] == 0.0);
    for (int x : {1, 3, 4}) {
      CHECK(q.weights[static_cast<std::size_t>(x)] ==
            doctest::Approx(1.0 / 3));
    }
  }
}

TEST_CASE("Boltzmann ratio q(3)/q(2) = e on the interpolated ramp") {
  SearchTrace d;
  d.append(0, 0);
  d.append(1, 1);
  const SamplingDistribution q = fit_q(d, kRing4, 1.0);
  CHECK(q.weights[3] / q.weights[2] == doctest::Approx(std::exp(1.0)));
  CHECK(q.weights[0] == 0.0);
  CHECK(q.weights[1] == 0.0);
}

TEST_CASE("high temperature approaches uniform over unvisited") {
  SearchTrace d;
  d.append(0, 0);
  d.append(1, 3);
  const SamplingDistribution q = fit_q(d, kRing4, 1e9);
  CHECK(std::abs(q.weights[2] - 0.5) <= 1e-6);
  CHECK(std::abs(q.weights[3] - 0.5) <= 1e-6);
}

TEST_CASE("entropy is non-decreasing in temperature") {
  SplitMix64 rng(101);
  const FiniteSpace space(12, {0, 1, 2, 3, 4, 5, 6, 7}, UINT64_MAX);
  for (int rep = 0; rep < 50; ++rep) {
    SearchTrace d;
    int placed = 0;
    while (placed < 5) {
      const int x = static_cast<int>(rng.next_below(12));
      if (d.contains_x(x)) continue;
      d.append(x, static_cast<int>(rng.next_below(8)));
      ++placed;
    }
    double prev = -1.0;
    for (int k = 0; k < 10; ++k) {
      const double t = 0.05 * std::pow(3.0, k);
      const double h = fit_q(d, space, t).entropy();
      CHECK(h >= prev - 1e-12);
      prev = h;
    }
  }
}

TEST_CASE("mco_step is deterministic and lands on the point mass") {
  const ObjectiveTable f(kRing4, {3, 2, 0, 1});
  SearchTrace d;
  d.append(0, 3);
  d.append(2, 0);
  // T -> 0: all mass on the surrogate minimizer among unvisited
  const auto [x_cold, trace_cold] = mco_step(d, kRing4, f, 1e-9, 5);
  const std::vector<double> g = ring_surrogate(d, kRing4);
  const auto [x2, t2] = mco_step(d, kRing4, f, 1e-9, 5);
  CHECK(x_cold == x2);
  CHECK(g[static_cast<std::size_t>(x_cold)] ==
        std::min(g[1], g[3]));
  CHECK(trace_cold.size() == 3);
  CHECK(trace_cold.last_x() == x_cold);
}

TEST_CASE("seeded samples match q within 3 sigma") {
  const FiniteSpace space(4, {0.0, 1.0, 2.0, 3.0});
  const ObjectiveTable f(space, {0, 1, 2, 3});
  SearchTrace d;
  d.append(0, 0);
  const SamplingDistribution q = fit_q(d, space, 1.0);
  std::vector<int> counts(4, 0);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto [x, t] = mco_step(d, space, f, 1.0, derive_stream(55, i));
    // vary the seed only; d is fixed, so draws are independent samples of q
    counts[static_cast<std::size_t>(x)]++;
  }
  CHECK(counts[0] == 0);
  for (int x = 1; x < 4; ++x) {
    const double p = q.weights[static_cast<std::size_t>(x)];
    const double sigma = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(counts[static_cast<std::size_t>(x)] - n * p) <=
          3 * sigma);
  }
}

TEST_CASE("cv_temperature tie-breaks to the smallest candidate on flat data") {
  const FiniteSpace space(6, {1.0});
  SearchTrace d;
  for (int x = 0; x < 4; ++x) d.append(x, 0);
  CHECK(cv_temperature(d, space, {0.5, 2.0, 8.0}, 2) == 0.5);
}

TEST_CASE("cv_temperature prefers low T on a smooth ramp") {
  const FiniteSpace space(6, {0, 1, 2, 3, 4, 5});
  SearchTrace d;
  for (int x = 0; x < 4; ++x) d.append(x, x);
  CHECK(cv_temperature(d, space, {0.1, 10.0}, 2) == 0.1);
}

TEST_CASE("loo folds run for m >= 2") {
  const FiniteSpace space(6, {0, 1, 2, 3, 4, 5});
  SearchTrace d;
  d.append(0, 5);
  d.append(3, 1);
  CHECK_NOTHROW(cv_temperature(d, space, {0.5, 2.0}, d.size()));
}

TEST_CASE("run_mco exhausts X at m_total = |X| and never retunes on f") {
  const ObjectiveTable f(kRing4, {2, 3, 1, 0});
  const McoResult result = run_mco(kRing4, f, 4, {0.5, 2.0}, 2, 1, 9);
  CHECK(result.tuning_evaluations == 0);
  std::vector<int> xs;
  for (const auto& [x, y] : result.trace.pairs()) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  CHECK(xs == std::vector<int>{0, 1, 2, 3});
  CHECK(result.schedule.size() == 4);
  CHECK(result.schedule.back().best_so_far == 0.0);
}

TEST_CASE("refit_every <= 0 behaves as fixed largest-T MCO") {
  const FiniteSpace space(8, {0, 1, 2, 3});
  const ObjectiveTable f = make_smooth_objective(space, 3);
  const McoResult fixed = run_mco(space, f, 6, {4.0}, 2, 1, 21);
  const McoResult never = run_mco(space, f, 6, {0.1, 4.0}, 2, 0, 21);
  CHECK(fixed.trace.pairs() == never.trace.pairs());
  for (const auto& record : never.schedule) {
    if (record.step > 0) CHECK(record.temperature == 4.0);
  }
}

TEST_CASE("q support excludes visited points on every step of seeded runs") {
  const FiniteSpace space(16, {0, 1, 2, 3, 4, 5, 6, 7}, UINT64_MAX);
  for (int s = 0; s < 20; ++s) {
    const ObjectiveTable f = make_smooth_objective(space, derive_stream(7, s));
    const McoResult result =
        run_mco(space, f, 8, {0.25, 1.0, 4.0}, 2, 2, derive_stream(8, s));
    CHECK(result.tuning_evaluations == 0);
    SearchTrace prefix;
    for (int i = 0; i < result.trace.size(); ++i) {
      if (i > 0) {
        const SamplingDistribution q = fit_q(
            prefix, space, result.schedule[static_cast<std::size_t>(i)]
                               .temperature);
        double total = 0;
        for (int x = 0; x < space.x_size(); ++x) {
          if (prefix.contains_x(x)) {
            CHECK(q.weights[static_cast<std::size_t>(x)] == 0.0);
          }
          total += q.weights[static_cast<std::size_t>(x)];
        }
        CHECK(total == doctest::Approx(1.0));
        CHECK(q.weights[static_cast<std::size_t>(
                  result.trace.x_at(i))] > 0.0);
      }
      prefix.append(result.trace.x_at(i), result.trace.y_index_at(i));
    }
  }
}

TEST_CASE("greedy surrogate and mco search algorithms are pure") {
  const FiniteSpace space(6, {0, 1, 2});
  const ObjectiveTable f = make_smooth_objective(space, 77);
  for (const char* spec :
       {"greedy_surrogate(T=0.5,seed=4)",
        "mco(candidates=[0.5,2],folds=2,refit_every=2,seed=4)"}) {
    const auto algorithm = make_algorithm(spec);
    const SearchTrace a = run_search(*algorithm, f, 6);
    const SearchTrace b = run_search(*algorithm, f, 6);
    CHECK(a.pairs() == b.pairs());
  }
}
