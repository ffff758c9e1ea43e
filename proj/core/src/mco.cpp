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

#include "nfllab/mco.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nfllab/rng.hpp"

namespace nfllab {
namespace {

// Seeded inverse-CDF sample from q, walking unvisited x in ascending order.
int sample_from_q(const SamplingDistribution& q, const FiniteSpace& space,
                  std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 rng(derive_stream(seed, stream));
  const double u = rng.next_double();
  double cumulative = 0;
  int last_positive = -1;
  for (int x = 0; x < space.x_size(); ++x) {
    const double w = q.weights[static_cast<std::size_t>(x)];
    if (w <= 0) continue;
    last_positive = x;
    cumulative += w;
    if (u < cumulative) return x;
  }
  if (last_positive < 0) throw Error("sampling distribution has no support");
  return last_positive;  // guards against rounding at cumulative ~ 1
}

std::vector<double> sorted_candidates(std::vector<double> candidates) {
  if (candidates.empty()) throw Error("temperature candidates are empty");
  std::sort(candidates.begin(), candidates.end());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i] <= 0) throw Error("temperatures must be positive");
    if (i > 0 && candidates[i] == candidates[i - 1]) {
      throw Error("temperature candidates must be distinct");
    }
  }
  return candidates;
}

}  // namespace

double SamplingDistribution::entropy() const {
  double h = 0;
  for (double w : weights) {
    if (w > 0) h -= w * std::log(w);
  }
  return h;
}

SamplingDistribution fit_q(const SearchTrace& d, const FiniteSpace& space,
                           double temperature) {
  if (d.empty()) throw Error("fit_q requires a non-empty data set");
  if (temperature <= 0) throw Error("fit_q requires T > 0");
  if (d.size() >= space.x_size()) throw Error("no unvisited points left");
  const std::vector<double> g = ring_surrogate(d, space);
  double g_min = std::numeric_limits<double>::infinity();
  for (int x = 0; x < space.x_size(); ++x) {
    if (!d.contains_x(x)) {
      g_min = std::min(g_min, g[static_cast<std::size_t>(x)]);
    }
  }
  SamplingDistribution q;
  q.weights.assign(static_cast<std::size_t>(space.x_size()), 0.0);
  double total = 0;
  for (int x = 0; x < space.x_size(); ++x) {
    if (d.contains_x(x)) continue;
    const double w =
        std::exp(-(g[static_cast<std::size_t>(x)] - g_min) / temperature);
    q.weights[static_cast<std::size_t>(x)] = w;
    total += w;
  }
  for (double& w : q.weights) w /= total;
  return q;
}

std::pair<int, SearchTrace> mco_step(const SearchTrace& d,
                                     const FiniteSpace& space,
                                     const ObjectiveTable& f,
                                     double temperature, std::uint64_t seed) {
  const SamplingDistribution q = fit_q(d, space, temperature);
  const int x =
      sample_from_q(q, space, seed, static_cast<std::uint64_t>(d.size()));
  SearchTrace extended = d;
  extended.append(x, f.y_index_at(x));
  return {x, std::move(extended)};
}

double cv_temperature(const SearchTrace& d, const FiniteSpace& space,
                      const std::vector<double>& candidates, int folds) {
  const std::vector<double> temps = sorted_candidates(candidates);
  const int m = d.size();
  if (folds < 2 || folds > m) {
    throw Error("cv_temperature requires 2 <= folds <= m");
  }
  double best_temp = temps.back();  // most exploratory fallback
  double best_score = std::numeric_limits<double>::infinity();
  for (double temp : temps) {
    double score_sum = 0;
    int scored_folds = 0;
    for (int fold = 0; fold < folds; ++fold) {
      const int lo = m * fold / folds;
      const int hi = m * (fold + 1) / folds;
      SearchTrace train;
      for (int i = 0; i < m; ++i) {
        if (i < lo || i >= hi) train.append(d.x_at(i), d.y_index_at(i));
      }
      if (train.empty()) continue;
      const SamplingDistribution q = fit_q(train, space, temp);
      // Expected objective under q restricted to the held-out points.
      double mass = 0;
      double value = 0;
      for (int i = lo; i < hi; ++i) {
        const double w = q.weights[static_cast<std::size_t>(d.x_at(i))];
        mass += w;
        value += w * space.y_value(d.y_index_at(i));
      }
      if (mass <= 0) continue;
      score_sum += value / mass;
      ++scored_folds;
    }
    if (scored_folds == 0) continue;
    const double score = score_sum / scored_folds;
    if (score < best_score) {
      best_score = score;
      best_temp = temp;
    }
  }
  return best_temp;
}

GreedySurrogateSearch::GreedySurrogateSearch(double temperature,
                                             std::uint64_t seed,
                                             std::string name)
    : SearchAlgorithm(std::move(name)), temperature_(temperature),
      seed_(seed) {}

int GreedySurrogateSearch::step(const SearchTrace& trace,
                                const FiniteSpace& space) const {
  if (trace.empty()) {
    SplitMix64 rng(derive_stream(seed_, 0));
    return static_cast<int>(
        rng.next_below(static_cast<std::uint64_t>(space.x_size())));
  }
  const SamplingDistribution q = fit_q(trace, space, temperature_);
  return sample_from_q(q, space, seed_,
                       static_cast<std::uint64_t>(trace.size()));
}

McoSearch::McoSearch(std::vector<double> candidates, int folds,
                     int refit_every, std::uint64_t seed, std::string name)
    : SearchAlgorithm(std::move(name)),
      candidates_(sorted_candidates(std::move(candidates))),
      folds_(folds),
      refit_every_(refit_every),
      seed_(seed) {}

double McoSearch::temperature_at(const SearchTrace& trace,
                                 const FiniteSpace& space) const {
  const int m = trace.size();
  if (refit_every_ <= 0 || candidates_.size() == 1) return candidates_.back();
  // Temperature chosen at the most recent refit point, recomputed from the
  // trace prefix so the rule stays pure.
  const int refit_m = m - (m % refit_every_);
  if (refit_m < folds_ || folds_ < 2) return candidates_.back();
  SearchTrace prefix;
  for (int i = 0; i < refit_m; ++i) prefix.append(trace.x_at(i), trace.y_index_at(i));
  return cv_temperature(prefix, space, candidates_, folds_);
}

int McoSearch::step(const SearchTrace& trace, const FiniteSpace& space) const {
  if (trace.empty()) {
    SplitMix64 rng(derive_stream(seed_, 0));
    return static_cast<int>(
        rng.next_below(static_cast<std::uint64_t>(space.x_size())));
  }
  const SamplingDistribution q =
      fit_q(trace, space, temperature_at(trace, space));
  return sample_from_q(q, space, seed_,
                       static_cast<std::uint64_t>(trace.size()));
}

McoResult run_mco(const FiniteSpace& space, const ObjectiveTable& f,
                  int m_total, const std::vector<double>& candidates,
                  int folds, int refit_every, std::uint64_t seed) {
  if (m_total < 1 || m_total > space.x_size()) {
    throw Error("m_total must satisfy 1 <= m_total <= |X|");
  }
  McoSearch algorithm(candidates, folds, refit_every, seed, "mco");
  McoResult result;
  double best = std::numeric_limits<double>::infinity();
  for (int step = 0; step < m_total; ++step) {
    McoStepRecord record;
    record.step = step;
    if (result.trace.empty()) {
      record.temperature = std::numeric_limits<double>::quiet_NaN();
      record.q_entropy = std::numeric_limits<double>::quiet_NaN();
    } else {
      record.temperature = algorithm.temperature_at(result.trace, space);
      record.q_entropy =
          fit_q(result.trace, space, record.temperature).entropy();
    }
    const int x = algorithm.step(result.trace, space);
    result.trace.append(x, f.y_index_at(x));
    best = std::min(best, f.value(x));
    record.best_so_far = best;
    result.schedule.push_back(record);
  }
  result.tuning_evaluations = 0;  // cv_temperature never touches f
  return result;
}

}  // namespace nfllab
