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

#include "nfllab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nfllab/parallel.hpp"
#include "nfllab/rng.hpp"

namespace nfllab {
namespace {

using json = nlohmann::json;

constexpr double kFloatTolerance = 1e-12;

// Kahan-compensated accumulator for float-mode sums.
class CompensatedSum {
 public:
  void add(double v) {
    const double y = v - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0;
  double compensation_ = 0;
};

}  // namespace

PriorVector PriorVector::Uniform(std::uint64_t num_functions) {
  PriorVector prior;
  prior.weights.assign(num_functions, 1.0 / static_cast<double>(num_functions));
  prior.exact.emplace(num_functions,
                      Rational(1, BigInt(num_functions)));
  return prior;
}

PriorVector PriorVector::Delta(std::uint64_t num_functions,
                               std::uint64_t rank) {
  if (rank >= num_functions) throw Error("delta prior rank out of range");
  PriorVector prior;
  prior.weights.assign(num_functions, 0.0);
  prior.weights[rank] = 1.0;
  prior.exact.emplace(num_functions, Rational(0));
  (*prior.exact)[rank] = 1;
  return prior;
}

PriorVector PriorVector::Dirichlet(std::uint64_t num_functions,
                                   std::uint64_t seed) {
  SplitMix64 rng(seed);
  PriorVector prior;
  prior.weights.resize(num_functions);
  double total = 0;
  for (auto& w : prior.weights) {
    w = rng.next_exponential();
    total += w;
  }
  for (auto& w : prior.weights) w /= total;
  return prior;
}

void PriorVector::validate() const {
  CompensatedSum sum;
  for (double w : weights) {
    if (w < 0) throw Error("prior weight is negative");
    sum.add(w);
  }
  if (std::abs(sum.value() - 1.0) > kFloatTolerance) {
    throw Error("prior weights do not sum to 1");
  }
  if (exact) {
    Rational total = 0;
    for (const auto& w : *exact) {
      if (w < 0) throw Error("exact prior weight is negative");
      total += w;
    }
    if (total != 1) throw Error("exact prior weights do not sum to 1");
  }
}

double PerformanceDistribution::mass_at(const Rational& phi) const {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] == phi) return mass[i];
  }
  return 0;
}

double PerformanceDistribution::total_mass() const {
  CompensatedSum sum;
  for (double m : mass) sum.add(m);
  return sum.value();
}

FunctionSubset FunctionSubset::Empty(std::uint64_t num_functions) {
  return FunctionSubset{std::vector<bool>(num_functions, false)};
}

FunctionSubset FunctionSubset::Full(std::uint64_t num_functions) {
  return FunctionSubset{std::vector<bool>(num_functions, true)};
}

FunctionSubset FunctionSubset::FromPredicate(
    const FiniteSpace& space,
    const std::function<bool(const ObjectiveTable&)>& predicate) {
  FunctionSubset subset = Empty(space.num_functions());
  std::uint64_t rank = 0;
  for_each_function(space, [&](const ObjectiveTable& f) {
    subset.membership[rank++] = predicate(f);
  });
  return subset;
}

std::uint64_t FunctionSubset::count() const {
  std::uint64_t n = 0;
  for (bool b : membership) n += b ? 1 : 0;
  return n;
}

Rational expected_performance_exact(const SearchAlgorithm& algorithm,
                                    const ObjectiveTable& f, int m,
                                    const PerformanceMeasure& measure) {
  const SearchTrace trace = run_search(algorithm, f, m);
  return measure.evaluate_exact(trace, f.space());
}

std::vector<std::uint64_t> default_seed_set(int count) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) seeds[static_cast<std::size_t>(i)] = i + 1;
  return seeds;
}

Rational expected_performance(const AlgorithmSpec& spec,
                              const ObjectiveTable& f, int m,
                              const PerformanceMeasure& measure,
                              const std::vector<std::uint64_t>& seeds) {
  if (spec.kind != AlgorithmSpec::Kind::kRandom) {
    return expected_performance_exact(*make_algorithm(spec), f, m, measure);
  }
  if (seeds.empty()) throw Error("seed set for random search is empty");
  Rational sum = 0;
  for (std::uint64_t seed : seeds) {
    AlgorithmSpec seeded = spec;
    seeded.seed = seed;
    sum += expected_performance_exact(*make_algorithm(seeded), f, m, measure);
  }
  return sum / static_cast<int>(seeds.size());
}

Rational nfl_sum(const SearchAlgorithm& algorithm, const FiniteSpace& space,
                 int m, const PerformanceMeasure& measure, int threads) {
  return parallel_map_reduce<Rational>(
      space.num_functions(), threads, Rational(0),
      [&](std::uint64_t lo, std::uint64_t hi, int) {
        Rational partial = 0;
        FunctionEnumerator en(space, lo, hi);
        while (auto f = en.next()) {
          partial += expected_performance_exact(algorithm, *f, m, measure);
        }
        return partial;
      },
      [](Rational acc, Rational part) { return acc + part; });
}

PerformanceDistribution performance_distribution_direct(
    const SearchAlgorithm& algorithm, const FiniteSpace& space, int m,
    const PerformanceMeasure& measure, const PriorVector& prior) {
  if (prior.weights.size() != space.num_functions()) {
    throw Error("prior dimension does not match |Y|^|X|");
  }
  std::map<Rational, Rational> exact_mass;
  std::map<Rational, CompensatedSum> float_mass;
  std::uint64_t rank = 0;
  for_each_function(space, [&](const ObjectiveTable& f) {
    const Rational phi = expected_performance_exact(algorithm, f, m, measure);
    if (prior.is_exact()) {
      exact_mass[phi] += (*prior.exact)[rank];
    } else {
      float_mass[phi].add(prior.weights[rank]);
    }
    ++rank;
  });
  PerformanceDistribution dist;
  if (prior.is_exact()) {
    for (const auto& [phi, mass] : exact_mass) {
      dist.support.push_back(phi);
      dist.mass_exact.push_back(mass);
      dist.mass.push_back(to_double(mass));
    }
  } else {
    for (const auto& [phi, mass] : float_mass) {
      dist.support.push_back(phi);
      dist.mass.push_back(mass.value());
    }
  }
  return dist;
}

DVector d_vector(const SearchAlgorithm& algorithm, const FiniteSpace& space,
                 int m, const PerformanceMeasure& measure,
                 const Rational& phi) {
  DVector d;
  d.phi = phi;
  d.algorithm = algorithm.name();
  d.m = m;
  d.entries.reserve(space.num_functions());
  for_each_function(space, [&](const ObjectiveTable& f) {
    const Rational achieved =
        expected_performance_exact(algorithm, f, m, measure);
    d.entries.push_back(achieved == phi ? 1 : 0);
  });
  return d;
}

json InnerProductReport::to_json() const {
  return json{{"check", "inner_product"},
              {"algorithm", algorithm},
              {"m", m},
              {"measure", measure},
              {"exact", exact},
              {"max_deviation", max_deviation},
              {"pass", pass}};
}

InnerProductReport inner_product_check(const SearchAlgorithm& algorithm,
                                       const FiniteSpace& space, int m,
                                       const PerformanceMeasure& measure,
                                       const PriorVector& prior) {
  prior.validate();
  const PerformanceDistribution direct =
      performance_distribution_direct(algorithm, space, m, measure, prior);
  InnerProductReport report;
  report.algorithm = algorithm.name();
  report.m = m;
  report.measure = measure.name();
  report.exact = prior.is_exact();
  double max_dev = 0;
  bool exact_ok = true;
  for (std::size_t i = 0; i < direct.support.size(); ++i) {
    // Independent route: build the D-vector for this phi and take the inner
    // product with the prior.
    const DVector d = d_vector(algorithm, space, m, measure,
                               direct.support[i]);
    if (report.exact) {
      Rational ip = 0;
      for (std::uint64_t r = 0; r < space.num_functions(); ++r) {
        if (d.entries[r]) ip += (*prior.exact)[r];
      }
      if (ip != direct.mass_exact[i]) exact_ok = false;
      max_dev = std::max(max_dev,
                         std::abs(to_double(ip - direct.mass_exact[i])));
    } else {
      CompensatedSum ip;
      for (std::uint64_t r = 0; r < space.num_functions(); ++r) {
        if (d.entries[r]) ip.add(prior.weights[r]);
      }
      max_dev = std::max(max_dev, std::abs(ip.value() - direct.mass[i]));
    }
  }
  report.max_deviation = max_dev;
  report.pass = report.exact ? exact_ok : max_dev <= kFloatTolerance;
  return report;
}

json SubsetIdentityReport::to_json() const {
  return json{{"check", "nfl_subset_identity"},
              {"inside_sum", to_double(inside_sum)},
              {"outside_sum", to_double(outside_sum)},
              {"constant", to_double(constant)},
              {"pass", pass}};
}

SubsetIdentityReport nfl_subset_identity(const SearchAlgorithm& algorithm,
                                         const FiniteSpace& space, int m,
                                         const PerformanceMeasure& measure,
                                         const FunctionSubset& subset) {
  if (subset.membership.size() != space.num_functions()) {
    throw Error("subset dimension does not match |Y|^|X|");
  }
  SubsetIdentityReport report;
  report.inside_sum = 0;
  report.outside_sum = 0;
  std::uint64_t rank = 0;
  for_each_function(space, [&](const ObjectiveTable& f) {
    const Rational e = expected_performance_exact(algorithm, f, m, measure);
    if (subset.membership[rank]) {
      report.inside_sum += e;
    } else {
      report.outside_sum += e;
    }
    ++rank;
  });
  report.constant = report.inside_sum + report.outside_sum;
  report.pass = report.constant == nfl_sum(algorithm, space, m, measure);
  return report;
}

json PriorAveragedReport::to_json() const {
  json per = json::array();
  for (const auto& a : per_algorithm) {
    per.push_back(json{{"algorithm", a.name},
                       {"mc_mean", a.mc_mean},
                       {"mc_se", a.mc_se},
                       {"subset_partial", a.subset_partial},
                       {"complement_partial", a.complement_partial},
                       {"within_three_se", a.within_three_se}});
  }
  json pr = json::array();
  for (const auto& p : pairs) {
    pr.push_back(json{{"a", p.a},
                      {"b", p.b},
                      {"mean_diff", p.mean_diff},
                      {"se_diff", p.se_diff},
                      {"within_three_se", p.within_three_se}});
  }
  return json{{"check", "prior_averaged_nfl"},
              {"analytic_value", analytic_value},
              {"n_samples", n_samples},
              {"generator", generator},
              {"per_algorithm", per},
              {"paired_differences", pr},
              {"pass", pass}};
}

PriorAveragedReport prior_averaged_nfl_check(
    const std::vector<std::shared_ptr<const SearchAlgorithm>>& algorithms,
    const FiniteSpace& space, int m, const PerformanceMeasure& measure,
    int n_samples, std::uint64_t seed, int threads) {
  if (n_samples < 100) throw Error("prior_averaged_nfl_check needs >= 100 samples");
  if (algorithms.empty()) throw Error("no algorithms given");
  const std::uint64_t n_fns = space.num_functions();

  // Per-algorithm E(Phi | f, m, A) tables, computed once.
  std::vector<std::vector<double>> e_tables;
  for (const auto& alg : algorithms) {
    std::vector<double> table;
    table.reserve(n_fns);
    for_each_function(space, [&](const ObjectiveTable& f) {
      table.push_back(
          to_double(expected_performance_exact(*alg, f, m, measure)));
    });
    e_tables.push_back(std::move(table));
  }
  const Rational total = nfl_sum(*algorithms.front(), space, m, measure,
                                 threads);

  // e_pi[a][s] = E_pi(Phi | m, A_a) for prior sample s. The Pi predicate for
  // the complementarity table: pi puts above-average mass on function rank 0.
  const std::size_t n_algs = algorithms.size();
  std::vector<std::vector<double>> e_pi(
      n_algs, std::vector<double>(static_cast<std::size_t>(n_samples)));
  std::vector<bool> in_subset(static_cast<std::size_t>(n_samples));
  for (int s = 0; s < n_samples; ++s) {
    const PriorVector pi =
        PriorVector::Dirichlet(n_fns, derive_stream(seed, s));
    in_subset[static_cast<std::size_t>(s)] =
        pi.weights[0] > 1.0 / static_cast<double>(n_fns);
    for (std::size_t a = 0; a < n_algs; ++a) {
      CompensatedSum dot;
      for (std::uint64_t r = 0; r < n_fns; ++r) {
        dot.add(pi.weights[r] * e_tables[a][r]);
      }
      e_pi[a][static_cast<std::size_t>(s)] = dot.value();
    }
  }

  PriorAveragedReport report;
  report.analytic_value = to_double(total / BigInt(n_fns));
  report.n_samples = n_samples;
  report.generator = kGeneratorName;
  bool pass = true;
  for (std::size_t a = 0; a < n_algs; ++a) {
    PriorAveragedReport::PerAlgorithm pa;
    pa.name = algorithms[a]->name();
    CompensatedSum sum;
    for (double v : e_pi[a]) sum.add(v);
    pa.mc_mean = sum.value() / n_samples;
    CompensatedSum sq;
    CompensatedSum sub;
    CompensatedSum comp;
    for (int s = 0; s < n_samples; ++s) {
      const double v = e_pi[a][static_cast<std::size_t>(s)];
      sq.add((v - pa.mc_mean) * (v - pa.mc_mean));
      if (in_subset[static_cast<std::size_t>(s)]) {
        sub.add(v);
      } else {
        comp.add(v);
      }
    }
    pa.mc_se = std::sqrt(sq.value() / (n_samples - 1)) / std::sqrt(n_samples);
    pa.subset_partial = sub.value() / n_samples;
    pa.complement_partial = comp.value() / n_samples;
    pa.within_three_se =
        std::abs(pa.mc_mean - report.analytic_value) <= 3 * pa.mc_se ||
        pa.mc_se == 0;
    pass = pass && pa.within_three_se;
    report.per_algorithm.push_back(pa);
  }
  for (std::size_t a = 0; a < n_algs; ++a) {
    for (std::size_t b = a + 1; b < n_algs; ++b) {
      PriorAveragedReport::PairedDifference pd;
      pd.a = algorithms[a]->name();
      pd.b = algorithms[b]->name();
      CompensatedSum sum;
      for (int s = 0; s < n_samples; ++s) {
        sum.add(e_pi[a][static_cast<std::size_t>(s)] -
                e_pi[b][static_cast<std::size_t>(s)]);
      }
      pd.mean_diff = sum.value() / n_samples;
      CompensatedSum sq;
      for (int s = 0; s < n_samples; ++s) {
        const double d = e_pi[a][static_cast<std::size_t>(s)] -
                         e_pi[b][static_cast<std::size_t>(s)] - pd.mean_diff;
        sq.add(d * d);
      }
      pd.se_diff =
          std::sqrt(sq.value() / (n_samples - 1)) / std::sqrt(n_samples);
      pd.within_three_se =
          std::abs(pd.mean_diff) <= 3 * pd.se_diff || pd.se_diff == 0;
      pass = pass && pd.within_three_se;
      report.pairs.push_back(pd);
    }
  }
  report.samples = std::move(e_pi);
  report.pass = pass;
  return report;
}

}  // namespace nfllab
