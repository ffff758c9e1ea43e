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

// Acceptance gate: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nfllab/algorithms.hpp"
#include "nfllab/experiments.hpp"
#include "nfllab/mco.hpp"
#include "nfllab/parallel.hpp"
#include "nfllab/rng.hpp"
#include "nfllab/supervised.hpp"
#include "nfllab/verify.hpp"

using namespace nfllab;
using json = nlohmann::json;

namespace {

constexpr double kFloatTolerance = 1e-12;

std::vector<std::shared_ptr<const SearchAlgorithm>> criterion_algorithms() {
  std::vector<std::shared_ptr<const SearchAlgorithm>> out;
  out.push_back(make_algorithm("enumerate"));
  for (int seed : {3, 7, 11}) {
    out.push_back(
        make_algorithm("random(seed=" + std::to_string(seed) + ")"));
  }
  for (int start = 0; start < 4; ++start) {
    out.push_back(make_algorithm("hill_descend(start=" +
                                 std::to_string(start) + ")"));
    out.push_back(make_algorithm("hill_ascend(start=" +
                                 std::to_string(start) + ")"));
  }
  return out;
}

// 1. NFL sum constancy across algorithms, plus the hand-derivable cell.
bool criterion_1() {
  const FiniteSpace space(4, {0.0, 1.0});
  const auto algorithms = criterion_algorithms();
  for (const PerformanceMeasure& measure :
       {PerformanceMeasure::Min(), PerformanceMeasure::Mean()}) {
    for (int m = 1; m <= 4; ++m) {
      const Rational reference = nfl_sum(*algorithms[0], space, m, measure);
      for (const auto& a : algorithms) {
        if (nfl_sum(*a, space, m, measure) != reference) return false;
      }
    }
  }
  const FiniteSpace small(3, {0.0, 1.0});
  return nfl_sum(*algorithms[0], small, 1, PerformanceMeasure::Min()) ==
         Rational(4);
}

// 2. Inner-product identity, rational-uniform exact and 20 Dirichlet priors.
bool criterion_2() {
  const FiniteSpace space(4, {0.0, 1.0});
  const PerformanceMeasure measure = PerformanceMeasure::Min();
  for (const auto& a : criterion_algorithms()) {
    const InnerProductReport exact = inner_product_check(
        *a, space, 2, measure, PriorVector::Uniform(space.num_functions()));
    if (!exact.pass || exact.max_deviation != 0.0) return false;
    for (int i = 0; i < 20; ++i) {
      const InnerProductReport mc = inner_product_check(
          *a, space, 2, measure,
          PriorVector::Dirichlet(space.num_functions(), derive_stream(2, i)));
      if (!mc.pass || mc.max_deviation > kFloatTolerance) return false;
    }
  }
  return true;
}

// 3. Win/loss balance: sum of paired expectation differences is exactly 0.
bool criterion_3() {
  for (int x_size : {4, 5}) {
    for (int y_size : {2, 3}) {
      std::vector<double> ys(static_cast<std::size_t>(y_size));
      for (int i = 0; i < y_size; ++i) ys[static_cast<std::size_t>(i)] = i;
      const FiniteSpace space(x_size, ys);
      const auto algorithms = criterion_algorithms();
      const auto descend = make_algorithm("hill_descend(start=0)");
      const auto ascend = make_algorithm("hill_ascend(start=0)");
      const auto random = make_algorithm("random(seed=3)");
      for (int m = 1; m <= x_size; ++m) {
        const PerformanceMeasure measure = PerformanceMeasure::Min();
        const Rational reference = nfl_sum(*random, space, m, measure);
        if (nfl_sum(*descend, space, m, measure) !=
            nfl_sum(*ascend, space, m, measure)) {
          return false;
        }
        for (const auto& a : algorithms) {
          if (nfl_sum(*a, space, m, measure) != reference) return false;
        }
      }
    }
  }
  return true;
}

// 4. Prior-averaged NFL over 10^4 flat-Dirichlet samples.
bool criterion_4() {
  const FiniteSpace space(4, {0.0, 1.0});
  std::vector<std::shared_ptr<const SearchAlgorithm>> algorithms = {
      make_algorithm("enumerate"), make_algorithm("random(seed=7)"),
      make_algorithm("hill_descend(start=0)"),
      make_algorithm("hill_ascend(start=0)")};
  const PriorAveragedReport report = prior_averaged_nfl_check(
      algorithms, space, 2, PerformanceMeasure::Min(), 10000, 4,
      resolve_thread_count(0));
  return report.pass;
}

// 5. Supervised NFL: E(Phi|d) = 1/2 exactly for every learner and every d,
// and the ternary variant gives 2/3.
bool criterion_5() {
  const std::string theta =
      "(candidates=[constant(0),constant(1),majority],folds=loo)";
  const std::vector<LearnerPtr> learners = {
      make_learner("majority"),
      make_learner("anti_majority"),
      make_learner("constant(0)"),
      make_learner("constant(1)"),
      make_learner("nearest_neighbor"),
      make_learner("cv_select" + theta),
      make_learner("anti_cv_select" + theta)};
  const FiniteSpace binary(5, {0.0, 1.0});
  const SupervisedNflReport report = nfl_supervised_check(
      learners, binary, 3, LossFunction::ZeroOne(binary));
  if (!report.pass || report.common_per_d_value != Rational(1, 2)) {
    return false;
  }
  for (const auto& pl : report.per_learner) {
    if (pl.expected_given_m != Rational(1, 2)) return false;
  }
  const FiniteSpace ternary(4, {0.0, 1.0, 2.0});
  const SupervisedNflReport ternary_report = nfl_supervised_check(
      learners, ternary, 2, LossFunction::ZeroOne(ternary));
  return ternary_report.pass &&
         ternary_report.common_per_d_value == Rational(2, 3);
}

// 6. Supervised inner-product formula equals direct enumeration; M symmetry
// tracks loss symmetry.
bool criterion_6() {
  const FiniteSpace space(3, {0.0, 1.0});
  const PriorVector prior = PriorVector::Uniform(space.num_functions());
  const std::vector<LearnerPtr> learners = {
      make_learner("memorize_plus_default(0)"), make_learner("majority"),
      make_learner("nearest_neighbor")};
  const std::vector<LossFunction> symmetric_losses = {
      LossFunction::ZeroOne(space), LossFunction::Absolute(space),
      LossFunction::Squared(space)};
  // all size-2 training sets representable without contradictory repeats
  for (int x0 = 0; x0 < 3; ++x0) {
    for (int x1 = 0; x1 < 3; ++x1) {
      for (int y0 = 0; y0 < 2; ++y0) {
        for (int y1 = 0; y1 < 2; ++y1) {
          if (x0 == x1 && y0 != y1) continue;
          TrainingSet d;
          d.append(x0, y0);
          d.append(x1, y1);
          for (const auto& learner : learners) {
            for (const auto& loss : symmetric_losses) {
              const SupervisedInnerProductReport report =
                  supervised_inner_product_check(*learner, d, loss, prior,
                                                 space);
              if (!report.pass || !report.routes_equal ||
                  !report.m_symmetric) {
                return false;
              }
            }
          }
          const LossFunction planted = LossFunction::FromMatrix(
              {{Rational(0), Rational(2)}, {Rational(1), Rational(0)}});
          if (m_matrix_symmetric(space, d, planted)) return false;
        }
      }
    }
  }
  return true;
}

// 7. Conditioning contrast: whole-space dominance with exact OTS tie.
bool criterion_7() {
  const FiniteSpace space(4, {0.0, 1.0});
  const ConditioningContrastReport report = conditioning_contrast_experiment(
      *make_learner("memorize_plus_default(0)"), *make_learner("uniform_guess"),
      space, 3);
  return report.pass && report.strict_for_all_f && report.ots_equal;
}

// 8. Meta-induction tie on the 16-universe outer space.
bool criterion_8() {
  const json config = {
      {"schema_version", 1},
      {"experiment", "meta_induction"},
      {"inner_space", {{"x_size", 2}, {"y_values", {0.0, 1.0}}}},
      {"smith", "hill_descend(start=0)"},
      {"jones", "random(seed=5)"},
      {"m_inner", 1},
      {"train_count", 2},
      {"seed", 3}};
  const ExperimentReport report = run_experiment(config, {});
  const json& r = report.body.at("results");
  return report.pass && r.at("outer_universes") == 16 &&
         r.at("universe_average_majority") == 0.5 &&
         r.at("universe_average_anti_majority") == 0.5;
}

// 9. MCO properties: support/zero-evaluation invariants, entropy
// monotonicity, CV benchmark, and the exact NFL sanity sum.
bool criterion_9() {
  // (a) q-support and zero extra evaluations on 100 seeded runs
  const FiniteSpace ring16(16, {0, 1, 2, 3, 4, 5, 6, 7}, UINT64_MAX);
  for (int s = 0; s < 100; ++s) {
    const ObjectiveTable f =
        make_smooth_objective(ring16, derive_stream(91, s));
    const McoResult result =
        run_mco(ring16, f, 8, {0.25, 1.0, 4.0}, 2, 2, derive_stream(92, s));
    if (result.tuning_evaluations != 0) return false;
    SearchTrace prefix;
    for (int i = 0; i < result.trace.size(); ++i) {
      if (i > 0) {
        const SamplingDistribution q =
            fit_q(prefix, ring16,
                  result.schedule[static_cast<std::size_t>(i)].temperature);
        for (int x = 0; x < 16; ++x) {
          const double w = q.weights[static_cast<std::size_t>(x)];
          if (prefix.contains_x(x) ? w != 0.0 : w < 0.0) return false;
        }
      }
      prefix.append(result.trace.x_at(i), result.trace.y_index_at(i));
    }
  }

  // (b) entropy non-decreasing in T, 10-point grid, 50 random data sets
  SplitMix64 rng(93);
  const FiniteSpace ring12(12, {0, 1, 2, 3, 4, 5, 6, 7}, UINT64_MAX);
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
      const double h = fit_q(d, ring12, 0.05 * std::pow(3.0, k)).entropy();
      if (h < prev - kFloatTolerance) return false;
      prev = h;
    }
  }

  // (c) CV-scheduled MCO vs the worst fixed temperature, 200 paired seeds
  const json benchmark = {{"schema_version", 1},
                          {"experiment", "mco_benchmark"},
                          {"x_size", 64},
                          {"y_levels", 8},
                          {"num_seeds", 200},
                          {"m_total", 16},
                          {"candidates", {0.05, 0.25, 1.0, 64.0}},
                          {"folds", 2},
                          {"refit_every", 4},
                          {"seed", 9}};
  if (!run_experiment(benchmark, {}).pass) return false;

  // (d) NFL sanity: run_mco's uniform average over all f matches nfl_sum
  const FiniteSpace space(4, {0.0, 1.0});
  const auto mco = make_algorithm(
      "mco(candidates=[0.5,4],folds=2,refit_every=2,seed=1)");
  const PerformanceMeasure measure = PerformanceMeasure::Min();
  const Rational reference =
      nfl_sum(*make_algorithm("enumerate"), space, 2, measure);
  return nfl_sum(*mco, space, 2, measure) == reference;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool()>>> criteria = {
      {"1 nfl sum constancy", criterion_1},
      {"2 inner-product identity", criterion_2},
      {"3 win/loss balance", criterion_3},
      {"4 prior-averaged nfl", criterion_4},
      {"5 supervised nfl and (anti-)cv", criterion_5},
      {"6 supervised inner-product formula", criterion_6},
      {"7 conditioning contrast", criterion_7},
      {"8 meta-induction tie", criterion_8},
      {"9 mco properties", criterion_9},
  };
  int failures = 0;
  for (const auto& [label, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      note = std::string("  (") + e.what() + ")";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("criterion %-36s %s  [%.2fs]%s\n", label.c_str(),
                ok ? "PASS" : "FAIL", secs, note.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
