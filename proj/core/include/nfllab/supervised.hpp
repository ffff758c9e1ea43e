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

#ifndef NFLLAB_SUPERVISED_HPP
#define NFLLAB_SUPERVISED_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nfllab/core.hpp"
#include "nfllab/rational.hpp"
#include "nfllab/verify.hpp"

namespace nfllab {

// A conditional distribution over Y, one row per x. Rows are exact rationals
// so uniform-prior theorem checks can assert equality. Deterministic tables
// are rows of one-hot vectors.
class ConditionalTable {
 public:
  using Row = std::vector<Rational>;

  ConditionalTable(const FiniteSpace& space, std::vector<Row> rows);
  static ConditionalTable Deterministic(const ObjectiveTable& f);
  static ConditionalTable UniformRows(const FiniteSpace& space);

  int x_size() const { return static_cast<int>(rows_.size()); }
  int y_size() const {
    return static_cast<int>(rows_.empty() ? 0 : rows_[0].size());
  }
  const Row& row(int x) const { return rows_[static_cast<std::size_t>(x)]; }
  void set_row(int x, Row row);

  bool deterministic() const;
  int one_hot_index(int x) const;  // throws unless the row is one-hot

  friend bool operator==(const ConditionalTable&, const ConditionalTable&) =
      default;

 private:
  std::vector<Row> rows_;
};

// f(y_f | x) and h(y_h | x).
using TargetDistribution = ConditionalTable;
using HypothesisDistribution = ConditionalTable;

// d = (d^m_X, d^m_Y); unlike a SearchTrace, repeated x values are permitted.
// y is stored as a Y index.
class TrainingSet {
 public:
  TrainingSet() = default;
  explicit TrainingSet(std::vector<std::pair<int, int>> pairs)
      : pairs_(std::move(pairs)) {}

  void append(int x, int y_index) { pairs_.emplace_back(x, y_index); }
  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int x_at(int i) const { return pairs_[static_cast<std::size_t>(i)].first; }
  int y_index_at(int i) const {
    return pairs_[static_cast<std::size_t>(i)].second;
  }
  bool contains_x(int x) const;
  std::vector<int> distinct_x() const;  // ascending
  // True when every (x, y) pair matches the deterministic target f.
  bool consistent_with(const ObjectiveTable& f) const;

  friend bool operator<(const TrainingSet& a, const TrainingSet& b) {
    return a.pairs_ < b.pairs_;
  }

 private:
  std::vector<std::pair<int, int>> pairs_;
};

// L(y_h, y_f) over Y x Y.
class LossFunction {
 public:
  static LossFunction ZeroOne(const FiniteSpace& space);
  static LossFunction Absolute(const FiniteSpace& space);
  static LossFunction Squared(const FiniteSpace& space);
  static LossFunction FromMatrix(std::vector<std::vector<Rational>> matrix);

  const Rational& at(int y_h, int y_f) const {
    return matrix_[static_cast<std::size_t>(y_h)][static_cast<std::size_t>(y_f)];
  }
  bool symmetric() const { return symmetric_; }
  int y_size() const { return static_cast<int>(matrix_.size()); }

 private:
  explicit LossFunction(std::vector<std::vector<Rational>> matrix);

  std::vector<std::vector<Rational>> matrix_;
  bool symmetric_;
};

// P(q): mass only on X \ d^m_X. The default is renormalized uniform.
class OffTrainingSampler {
 public:
  static OffTrainingSampler UniformOff(const FiniteSpace& space,
                                       const TrainingSet& d);

  const std::vector<Rational>& weights() const { return weights_; }

 private:
  explicit OffTrainingSampler(std::vector<Rational> weights)
      : weights_(std::move(weights)) {}

  std::vector<Rational> weights_;
};

// Off-training-set cost C(f, h, d): expected loss over X \ d^m_X.
Rational ots_cost(const TargetDistribution& f, const HypothesisDistribution& h,
                  const TrainingSet& d, const LossFunction& loss,
                  const OffTrainingSampler& sampler);
Rational ots_cost(const TargetDistribution& f, const HypothesisDistribution& h,
                  const TrainingSet& d, const LossFunction& loss,
                  const FiniteSpace& space);

// Phi': expected loss over the entire space X, uniformly weighted.
Rational full_space_cost(const TargetDistribution& f,
                         const HypothesisDistribution& h,
                         const LossFunction& loss, const FiniteSpace& space);

// P(h | d) as a deterministic map: total over all training sets, including
// the empty one.
class LearningAlgorithm {
 public:
  virtual ~LearningAlgorithm() = default;
  const std::string& name() const { return name_; }
  virtual HypothesisDistribution learn(const TrainingSet& d,
                                       const FiniteSpace& space) const = 0;

 protected:
  explicit LearningAlgorithm(std::string name) : name_(std::move(name)) {}

 private:
  std::string name_;
};

using LearnerPtr = std::shared_ptr<const LearningAlgorithm>;

// folds value meaning leave-one-out (folds = m).
inline constexpr int kLeaveOneOut = -1;

// Config grammar: "constant(0)", "majority", "anti_majority",
// "memorize_plus_default(0)", "nearest_neighbor", "uniform_guess",
// "cv_select(candidates=[constant(0),constant(1),majority],folds=loo)",
// "anti_cv_select(...)".
LearnerPtr make_learner(const std::string& spec);

// Mean held-out loss over contiguous folds, training on each complement.
Rational cv_error(const LearningAlgorithm& learner, const TrainingSet& d,
                  int folds, const LossFunction& loss,
                  const FiniteSpace& space);

struct SupervisedInnerProductReport {
  std::vector<std::pair<Rational, Rational>> formula;  // (c, P(c|d))
  std::vector<std::pair<Rational, Rational>> direct;
  bool routes_equal = false;
  bool loss_symmetric = false;
  bool m_symmetric = false;
  bool pass = false;
  nlohmann::json to_json() const;
};

// Verifies P(c|d) = sum_{f,h} P(h|d) P(f|d) M_{c,d}(f,h) against direct
// enumeration, with the noise-free likelihood P(d|f) = [d consistent with f]
// and P(h|d) the learner's point mass. Also checks M(f,h) = M(h,f) over the
// deterministic grids when the loss is symmetric.
SupervisedInnerProductReport supervised_inner_product_check(
    const LearningAlgorithm& learner, const TrainingSet& d,
    const LossFunction& loss, const PriorVector& prior,
    const FiniteSpace& space);

// Standalone grid symmetry probe for M_{c,d}: true iff ots_cost(f,h,d) ==
// ots_cost(h,f,d) for all deterministic pairs.
bool m_matrix_symmetric(const FiniteSpace& space, const TrainingSet& d,
                        const LossFunction& loss);

struct SupervisedNflReport {
  struct PerLearner {
    std::string name;
    Rational expected_given_m;  // E(Phi | m, learner)
  };
  Rational common_per_d_value;  // E(Phi | d) shared by all learners
  bool per_d_equal = false;     // equality across learners for every d
  int training_sets = 0;
  std::vector<PerLearner> per_learner;
  bool pass = false;
  nlohmann::json to_json() const;
};

// Exhaustive supervised NFL check under the uniform deterministic-target
// prior: E(Phi | d) is identical across learners for every size-m training
// set, hence so is E(Phi | m).
SupervisedNflReport nfl_supervised_check(const std::vector<LearnerPtr>& learners,
                                         const FiniteSpace& space, int m,
                                         const LossFunction& loss);

struct ConditioningContrastReport {
  struct PerTarget {
    std::uint64_t rank;
    Rational full_space_a;  // E(Phi' | m, A, f)
    Rational full_space_b;
  };
  std::vector<PerTarget> per_target;
  Rational ots_mean_a;  // E(Phi | m, A)
  Rational ots_mean_b;
  bool strict_for_all_f = false;  // E(Phi'|m,A,f) < E(Phi'|m,B,f) for all f
  bool ots_equal = false;
  bool pass = false;
  nlohmann::json to_json() const;
};

// Exhibits the Phi vs Phi' conditioning distinction: a learner pair where the
// whole-space expectation conditioned on f favors A for every f, while the
// off-training-set expectation conditioned only on m ties exactly.
ConditioningContrastReport conditioning_contrast_experiment(
    const LearningAlgorithm& learner_a, const LearningAlgorithm& learner_b,
    const FiniteSpace& space, int m);

}  // namespace nfllab

#endif  // NFLLAB_SUPERVISED_HPP
