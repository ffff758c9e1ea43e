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

#ifndef NFLLAB_VERIFY_HPP
#define NFLLAB_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nfllab/algorithms.hpp"
#include "nfllab/core.hpp"
#include "nfllab/rational.hpp"

namespace nfllab {

enum class ArithmeticMode { kRational, kFloat };

// P(f): a point on the simplex over the |Y|^|X| objective functions. Uniform
// and delta priors carry exact rational weights so theorem checks can assert
// equality instead of closeness.
struct PriorVector {
  std::vector<double> weights;
  std::optional<std::vector<Rational>> exact;

  static PriorVector Uniform(std::uint64_t num_functions);
  static PriorVector Delta(std::uint64_t num_functions, std::uint64_t rank);
  // Flat Dirichlet via normalized unit-rate exponential draws (splitmix64).
  static PriorVector Dirichlet(std::uint64_t num_functions,
                               std::uint64_t seed);

  bool is_exact() const { return exact.has_value(); }
  void validate() const;  // simplex membership within 1e-12
};

// P(phi | A, m): support is the sorted set of achievable performance values.
struct PerformanceDistribution {
  std::vector<Rational> support;
  std::vector<double> mass;
  std::vector<Rational> mass_exact;  // empty in float mode

  bool is_exact() const { return !mass_exact.empty(); }
  double mass_at(const Rational& phi) const;
  double total_mass() const;
};

// D(f; phi, A, m): the per-function indicator that algorithm A achieves
// performance phi. Binary for deterministic algorithms.
struct DVector {
  Rational phi;
  std::string algorithm;
  int m = 0;
  std::vector<std::uint8_t> entries;  // indexed by function rank
};

// B, a subset of Y^X, as a membership bitset over function ranks.
struct FunctionSubset {
  std::vector<bool> membership;

  static FunctionSubset Empty(std::uint64_t num_functions);
  static FunctionSubset Full(std::uint64_t num_functions);
  static FunctionSubset FromPredicate(
      const FiniteSpace& space,
      const std::function<bool(const ObjectiveTable&)>& predicate);
  std::uint64_t count() const;
};

// E(Phi | f, m, A) for a deterministic algorithm: Phi of the unique trace.
Rational expected_performance_exact(const SearchAlgorithm& algorithm,
                                    const ObjectiveTable& f, int m,
                                    const PerformanceMeasure& measure);

// Seed-set expectation: random search averages Phi over one deterministic
// run per seed; all other kinds ignore the seed set.
Rational expected_performance(const AlgorithmSpec& spec,
                              const ObjectiveTable& f, int m,
                              const PerformanceMeasure& measure,
                              const std::vector<std::uint64_t>& seeds);
std::vector<std::uint64_t> default_seed_set(int count = 64);

// Sum over all f of E(Phi | f, m, A) -- the quantity the NFL theorem says is
// independent of A.
Rational nfl_sum(const SearchAlgorithm& algorithm, const FiniteSpace& space,
                 int m, const PerformanceMeasure& measure, int threads = 1);

// Exact/float distribution computed by running the algorithm on every f and
// accumulating prior-weighted indicator mass.
PerformanceDistribution performance_distribution_direct(
    const SearchAlgorithm& algorithm, const FiniteSpace& space, int m,
    const PerformanceMeasure& measure, const PriorVector& prior);

DVector d_vector(const SearchAlgorithm& algorithm, const FiniteSpace& space,
                 int m, const PerformanceMeasure& measure,
                 const Rational& phi);

struct InnerProductReport {
  std::string algorithm;
  int m = 0;
  std::string measure;
  bool exact = false;
  double max_deviation = 0;
  bool pass = false;
  nlohmann::json to_json() const;
};

// Verifies P(phi | A, m) = sum_f P(f) D(f; phi, A, m) at every phi in the
// support: exact equality with a rational prior, <= 1e-12 otherwise.
InnerProductReport inner_product_check(const SearchAlgorithm& algorithm,
                                       const FiniteSpace& space, int m,
                                       const PerformanceMeasure& measure,
                                       const PriorVector& prior);

struct SubsetIdentityReport {
  Rational inside_sum;
  Rational outside_sum;
  Rational constant;  // inside + outside, equal to the full NFL sum
  bool pass = false;
  nlohmann::json to_json() const;
};

// Checks sum_{f in B} E + sum_{f not in B} E = nfl_sum (the B-independent
// constant of the NFL identity).
SubsetIdentityReport nfl_subset_identity(const SearchAlgorithm& algorithm,
                                         const FiniteSpace& space, int m,
                                         const PerformanceMeasure& measure,
                                         const FunctionSubset& subset);

struct PriorAveragedReport {
  struct PerAlgorithm {
    std::string name;
    double mc_mean = 0;
    double mc_se = 0;
    double subset_partial = 0;      // mean over samples with pi in Pi
    double complement_partial = 0;  // mean over the remaining samples
    bool within_three_se = false;
  };
  struct PairedDifference {
    std::string a;
    std::string b;
    double mean_diff = 0;
    double se_diff = 0;
    bool within_three_se = false;
  };

  double analytic_value = 0;  // nfl_sum / |Y^X|
  int n_samples = 0;
  std::string generator;
  std::vector<PerAlgorithm> per_algorithm;
  std::vector<PairedDifference> pairs;
  // Raw E_pi values, indexed [algorithm][sample]; kept out of the JSON body
  // but exported as plot data.
  std::vector<std::vector<double>> samples;
  bool pass = false;
  nlohmann::json to_json() const;
};

// Monte Carlo check of the prior-averaged NFL identity: draws flat-Dirichlet
// priors, compares per-algorithm means pairwise and against the analytic
// simplex average nfl_sum / |Y^X|.
PriorAveragedReport prior_averaged_nfl_check(
    const std::vector<std::shared_ptr<const SearchAlgorithm>>& algorithms,
    const FiniteSpace& space, int m, const PerformanceMeasure& measure,
    int n_samples, std::uint64_t seed, int threads = 1);

}  // namespace nfllab

#endif  // NFLLAB_VERIFY_HPP
