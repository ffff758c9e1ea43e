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

#include "nfllab/supervised.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nfllab/algorithms.hpp"
#include "nfllab/specparse.hpp"

namespace nfllab {
namespace {

using json = nlohmann::json;

ConditionalTable::Row one_hot(int y_index, int y_size) {
  ConditionalTable::Row row(static_cast<std::size_t>(y_size), Rational(0));
  row[static_cast<std::size_t>(y_index)] = 1;
  return row;
}

// Last observed y per trained x.
std::map<int, int> memorized(const TrainingSet& d) {
  std::map<int, int> seen;
  for (const auto& [x, y] : d.pairs()) seen[x] = y;
  return seen;
}

// Walks every x-tuple of length m (with replacement) in odometer order.
void for_each_x_tuple(int x_size, int m,
                      const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> tuple(static_cast<std::size_t>(m), 0);
  while (true) {
    fn(tuple);
    int i = 0;
    for (; i < m; ++i) {
      if (++tuple[static_cast<std::size_t>(i)] < x_size) break;
      tuple[static_cast<std::size_t>(i)] = 0;
    }
    if (i == m) break;
  }
}

class ConstantLearner : public LearningAlgorithm {
 public:
  explicit ConstantLearner(int y_index)
      : LearningAlgorithm("constant(" + std::to_string(y_index) + ")"),
        y_index_(y_index) {}

  HypothesisDistribution learn(const TrainingSet&,
                               const FiniteSpace& space) const override {
    std::vector<ConditionalTable::Row> rows(
        static_cast<std::size_t>(space.x_size()),
        one_hot(y_index_, space.y_size()));
    return HypothesisDistribution(space, std::move(rows));
  }

 private:
  int y_index_;
};

class MajorityLearner : public LearningAlgorithm {
 public:
  explicit MajorityLearner(bool anti)
      : LearningAlgorithm(anti ? "anti_majority" : "majority"), anti_(anti) {}

  HypothesisDistribution learn(const TrainingSet& d,
                               const FiniteSpace& space) const override {
    std::vector<int> counts(static_cast<std::size_t>(space.y_size()), 0);
    for (const auto& [x, y] : d.pairs()) ++counts[static_cast<std::size_t>(y)];
    // Majority: modal y; anti-majority: least frequent y. Ties go to the
    // lower Y index, which also covers the empty training set.
    int winner = 0;
    for (int y = 1; y < space.y_size(); ++y) {
      const int c = counts[static_cast<std::size_t>(y)];
      const int w = counts[static_cast<std::size_t>(winner)];
      if (anti_ ? c < w : c > w) winner = y;
    }
    const auto seen = memorized(d);
    std::vector<ConditionalTable::Row> rows;
    rows.reserve(static_cast<std::size_t>(space.x_size()));
    for (int x = 0; x < space.x_size(); ++x) {
      const auto it = seen.find(x);
      rows.push_back(one_hot(it != seen.end() ? it->second : winner,
                             space.y_size()));
    }
    return HypothesisDistribution(space, std::move(rows));
  }

 private:
  bool anti_;
};

class MemorizeDefaultLearner : public LearningAlgorithm {
 public:
  explicit MemorizeDefaultLearner(int y_index)
      : LearningAlgorithm("memorize_plus_default(" + std::to_string(y_index) +
                          ")"),
        y_index_(y_index) {}

  HypothesisDistribution learn(const TrainingSet& d,
                               const FiniteSpace& space) const override {
    const auto seen = memorized(d);
    std::vector<ConditionalTable::Row> rows;
    rows.reserve(static_cast<std::size_t>(space.x_size()));
    for (int x = 0; x < space.x_size(); ++x) {
      const auto it = seen.find(x);
      rows.push_back(one_hot(it != seen.end() ? it->second : y_index_,
                             space.y_size()));
    }
    return HypothesisDistribution(space, std::move(rows));
  }

 private:
  int y_index_;
};

class NearestNeighborLearner : public LearningAlgorithm {
 public:
  NearestNeighborLearner() : LearningAlgorithm("nearest_neighbor") {}

  HypothesisDistribution learn(const TrainingSet& d,
                               const FiniteSpace& space) const override {
    if (d.empty()) return ConditionalTable::UniformRows(space);
    const auto seen = memorized(d);
    std::vector<ConditionalTable::Row> rows;
    rows.reserve(static_cast<std::size_t>(space.x_size()));
    for (int x = 0; x < space.x_size(); ++x) {
      int best = space.x_size() + 1;
      for (const auto& [tx, ty] : seen) {
        best = std::min(best, ring_distance(x, tx, space.x_size()));
      }
      // Equidistant neighbors contribute equally: the row is the uniform
      // mixture of their labels.
      std::vector<int> labels;
      for (const auto& [tx, ty] : seen) {
        if (ring_distance(x, tx, space.x_size()) == best) labels.push_back(ty);
      }
      ConditionalTable::Row row(static_cast<std::size_t>(space.y_size()),
                                Rational(0));
      const Rational share(1, static_cast<int>(labels.size()));
      for (int y : labels) row[static_cast<std::size_t>(y)] += share;
      rows.push_back(std::move(row));
    }
    return HypothesisDistribution(space, std::move(rows));
  }
};

class UniformGuessLearner : public LearningAlgorithm {
 public:
  UniformGuessLearner() : LearningAlgorithm("uniform_guess") {}

  HypothesisDistribution learn(const TrainingSet&,
                               const FiniteSpace& space) const override {
    return ConditionalTable::UniformRows(space);
  }
};

class CvSelectLearner : public LearningAlgorithm {
 public:
  CvSelectLearner(std::vector<LearnerPtr> candidates, int folds, bool anti)
      : LearningAlgorithm(describe(candidates, folds, anti)),
        candidates_(std::move(candidates)),
        folds_(folds),
        anti_(anti) {
    if (candidates_.empty()) {
      throw Error("cv_select requires a non-empty candidate set");
    }
    if (folds_ != kLeaveOneOut && folds_ < 2) {
      throw Error("cv_select requires folds >= 2 (or loo)");
    }
  }

  HypothesisDistribution learn(const TrainingSet& d,
                               const FiniteSpace& space) const override {
    const int m = d.size();
    const int folds = folds_ == kLeaveOneOut ? m : folds_;
    std::size_t winner = 0;
    if (folds >= 2 && folds <= m) {
      const LossFunction loss = LossFunction::ZeroOne(space);
      Rational best = cv_error(*candidates_[0], d, folds, loss, space);
      for (std::size_t i = 1; i < candidates_.size(); ++i) {
        const Rational err = cv_error(*candidates_[i], d, folds, loss, space);
        // Ties keep the earlier candidate, identically for cv and anti-cv.
        if (anti_ ? err > best : err < best) {
          best = err;
          winner = i;
        }
      }
    }
    return candidates_[winner]->learn(d, space);
  }

 private:
  static std::string describe(const std::vector<LearnerPtr>& candidates,
                              int folds, bool anti) {
    std::ostringstream out;
    out << (anti ? "anti_cv_select" : "cv_select") << "(candidates=[";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (i) out << ',';
      out << candidates[i]->name();
    }
    out << "],folds=";
    if (folds == kLeaveOneOut) {
      out << "loo";
    } else {
      out << folds;
    }
    out << ')';
    return out.str();
  }

  std::vector<LearnerPtr> candidates_;
  int folds_;
  bool anti_;
};

LearnerPtr make_learner_node(const SpecNode& node) {
  if (node.name == "constant") {
    node.reject_unknown({"y"});
    return std::make_shared<ConstantLearner>(
        static_cast<int>(node.require("y", 0).integer()));
  }
  if (node.name == "majority") return std::make_shared<MajorityLearner>(false);
  if (node.name == "anti_majority") {
    return std::make_shared<MajorityLearner>(true);
  }
  if (node.name == "memorize_plus_default") {
    node.reject_unknown({"y"});
    return std::make_shared<MemorizeDefaultLearner>(
        static_cast<int>(node.require("y", 0).integer()));
  }
  if (node.name == "nearest_neighbor") {
    return std::make_shared<NearestNeighborLearner>();
  }
  if (node.name == "uniform_guess") {
    return std::make_shared<UniformGuessLearner>();
  }
  if (node.name == "cv_select" || node.name == "anti_cv_select") {
    node.reject_unknown({"candidates", "folds"});
    std::vector<LearnerPtr> candidates;
    for (const auto& v : node.require("candidates", 0).list()) {
      candidates.push_back(make_learner_node(v.node()));
    }
    int folds = kLeaveOneOut;
    if (const SpecValue* v = node.find("folds")) {
      if (v->is_node() && v->node().name == "loo") {
        folds = kLeaveOneOut;
      } else {
        folds = static_cast<int>(v->integer());
      }
    }
    return std::make_shared<CvSelectLearner>(std::move(candidates), folds,
                                             node.name == "anti_cv_select");
  }
  throw Error("unknown learner spec: " + node.name);
}

}  // namespace

ConditionalTable::ConditionalTable(const FiniteSpace& space,
                                   std::vector<Row> rows)
    : rows_(std::move(rows)) {
  if (static_cast<int>(rows_.size()) != space.x_size()) {
    throw Error("conditional table must have one row per x");
  }
  for (const Row& row : rows_) {
    if (static_cast<int>(row.size()) != space.y_size()) {
      throw Error("conditional table row width must equal |Y|");
    }
    Rational total = 0;
    for (const Rational& p : row) {
      if (p < 0) throw Error("conditional table entry is negative");
      total += p;
    }
    if (total != 1) throw Error("conditional table row does not sum to 1");
  }
}

ConditionalTable ConditionalTable::Deterministic(const ObjectiveTable& f) {
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(f.space().x_size()));
  for (int x = 0; x < f.space().x_size(); ++x) {
    rows.push_back(one_hot(f.y_index_at(x), f.space().y_size()));
  }
  return ConditionalTable(f.space(), std::move(rows));
}

ConditionalTable ConditionalTable::UniformRows(const FiniteSpace& space) {
  Row row(static_cast<std::size_t>(space.y_size()),
          Rational(1, space.y_size()));
  std::vector<Row> rows(static_cast<std::size_t>(space.x_size()), row);
  return ConditionalTable(space, std::move(rows));
}

void ConditionalTable::set_row(int x, Row row) {
  if (row.size() != rows_[static_cast<std::size_t>(x)].size()) {
    throw Error("row width mismatch");
  }
  Rational total = 0;
  for (const Rational& p : row) total += p;
  if (total != 1) throw Error("conditional table row does not sum to 1");
  rows_[static_cast<std::size_t>(x)] = std::move(row);
}

bool ConditionalTable::deterministic() const {
  for (const Row& row : rows_) {
    for (const Rational& p : row) {
      if (p != 0 && p != 1) return false;
    }
  }
  return true;
}

int ConditionalTable::one_hot_index(int x) const {
  const Row& row = rows_[static_cast<std::size_t>(x)];
  for (std::size_t y = 0; y < row.size(); ++y) {
    if (row[y] == 1) return static_cast<int>(y);
  }
  throw Error("row is not one-hot");
}

bool TrainingSet::contains_x(int x) const {
  for (const auto& [px, py] : pairs_) {
    if (px == x) return true;
  }
  return false;
}

std::vector<int> TrainingSet::distinct_x() const {
  std::vector<int> xs;
  for (const auto& [x, y] : pairs_) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool TrainingSet::consistent_with(const ObjectiveTable& f) const {
  for (const auto& [x, y] : pairs_) {
    if (f.y_index_at(x) != y) return false;
  }
  return true;
}

LossFunction::LossFunction(std::vector<std::vector<Rational>> matrix)
    : matrix_(std::move(matrix)) {
  symmetric_ = true;
  for (std::size_t a = 0; a < matrix_.size(); ++a) {
    if (matrix_[a].size() != matrix_.size()) {
      throw Error("loss matrix must be square");
    }
    for (std::size_t b = 0; b < a; ++b) {
      symmetric_ = symmetric_ && matrix_[a][b] == matrix_[b][a];
    }
  }
}

LossFunction LossFunction::ZeroOne(const FiniteSpace& space) {
  const std::size_t n = static_cast<std::size_t>(space.y_size());
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
  return LossFunction(std::move(m));
}

LossFunction LossFunction::Absolute(const FiniteSpace& space) {
  const std::size_t n = static_cast<std::size_t>(space.y_size());
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Rational diff = Rational(space.y_value(static_cast<int>(a))) -
                            Rational(space.y_value(static_cast<int>(b)));
      m[a][b] = diff < 0 ? -diff : diff;
    }
  }
  return LossFunction(std::move(m));
}

LossFunction LossFunction::Squared(const FiniteSpace& space) {
  const std::size_t n = static_cast<std::size_t>(space.y_size());
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Rational diff = Rational(space.y_value(static_cast<int>(a))) -
                            Rational(space.y_value(static_cast<int>(b)));
      m[a][b] = diff * diff;
    }
  }
  return LossFunction(std::move(m));
}

LossFunction LossFunction::FromMatrix(
    std::vector<std::vector<Rational>> matrix) {
  return LossFunction(std::move(matrix));
}

OffTrainingSampler OffTrainingSampler::UniformOff(const FiniteSpace& space,
                                                  const TrainingSet& d) {
  std::vector<Rational> weights(static_cast<std::size_t>(space.x_size()),
                                Rational(0));
  int off_count = 0;
  for (int x = 0; x < space.x_size(); ++x) {
    if (!d.contains_x(x)) ++off_count;
  }
  if (off_count == 0) {
    throw Error("training set covers all of X; off-training-set cost undefined");
  }
  for (int x = 0; x < space.x_size(); ++x) {
    if (!d.contains_x(x)) {
      weights[static_cast<std::size_t>(x)] = Rational(1, off_count);
    }
  }
  return OffTrainingSampler(std::move(weights));
}

Rational ots_cost(const TargetDistribution& f, const HypothesisDistribution& h,
                  const TrainingSet& d, const LossFunction& loss,
                  const OffTrainingSampler& sampler) {
  Rational cost = 0;
  for (int q = 0; q < f.x_size(); ++q) {
    const Rational& pq = sampler.weights()[static_cast<std::size_t>(q)];
    if (pq == 0) continue;
    if (d.contains_x(q)) {
      throw Error("off-training sampler puts mass on a trained x");
    }
    Rational point = 0;
    for (int yh = 0; yh < h.y_size(); ++yh) {
      const Rational& ph = h.row(q)[static_cast<std::size_t>(yh)];
      if (ph == 0) continue;
      for (int yf = 0; yf < f.y_size(); ++yf) {
        const Rational& pf = f.row(q)[static_cast<std::size_t>(yf)];
        if (pf == 0) continue;
        point += loss.at(yh, yf) * pf * ph;
      }
    }
    cost += pq * point;
  }
  return cost;
}

Rational ots_cost(const TargetDistribution& f, const HypothesisDistribution& h,
                  const TrainingSet& d, const LossFunction& loss,
                  const FiniteSpace& space) {
  return ots_cost(f, h, d, loss, OffTrainingSampler::UniformOff(space, d));
}

Rational full_space_cost(const TargetDistribution& f,
                         const HypothesisDistribution& h,
                         const LossFunction& loss, const FiniteSpace& space) {
  Rational cost = 0;
  for (int q = 0; q < space.x_size(); ++q) {
    for (int yh = 0; yh < h.y_size(); ++yh) {
      const Rational& ph = h.row(q)[static_cast<std::size_t>(yh)];
      if (ph == 0) continue;
      for (int yf = 0; yf < f.y_size(); ++yf) {
        const Rational& pf = f.row(q)[static_cast<std::size_t>(yf)];
        if (pf == 0) continue;
        cost += loss.at(yh, yf) * pf * ph;
      }
    }
  }
  return cost / space.x_size();
}

LearnerPtr make_learner(const std::string& spec) {
  return make_learner_node(parse_spec(spec));
}

Rational cv_error(const LearningAlgorithm& learner, const TrainingSet& d,
                  int folds, const LossFunction& loss,
                  const FiniteSpace& space) {
  const int m = d.size();
  if (folds == kLeaveOneOut) folds = m;
  if (folds < 2 || folds > m) {
    throw Error("cv_error requires 2 <= folds <= m");
  }
  Rational total = 0;
  for (int fold = 0; fold < folds; ++fold) {
    // Contiguous blocks by position.
    const int lo = m * fold / folds;
    const int hi = m * (fold + 1) / folds;
    TrainingSet train;
    for (int i = 0; i < m; ++i) {
      if (i < lo || i >= hi) train.append(d.x_at(i), d.y_index_at(i));
    }
    const HypothesisDistribution h = learner.learn(train, space);
    Rational fold_loss = 0;
    for (int i = lo; i < hi; ++i) {
      const int x = d.x_at(i);
      const int y_true = d.y_index_at(i);
      for (int yh = 0; yh < space.y_size(); ++yh) {
        const Rational& ph = h.row(x)[static_cast<std::size_t>(yh)];
        if (ph != 0) fold_loss += ph * loss.at(yh, y_true);
      }
    }
    total += fold_loss / (hi - lo);
  }
  return total / folds;
}

json SupervisedInnerProductReport::to_json() const {
  auto dist = [](const std::vector<std::pair<Rational, Rational>>& d) {
    json arr = json::array();
    for (const auto& [c, p] : d) {
      arr.push_back(json{{"cost", to_double(c)}, {"probability", to_double(p)}});
    }
    return arr;
  };
  return json{{"check", "supervised_inner_product"},
              {"formula", dist(formula)},
              {"direct", dist(direct)},
              {"routes_equal", routes_equal},
              {"loss_symmetric", loss_symmetric},
              {"m_symmetric", m_symmetric},
              {"pass", pass}};
}

bool m_matrix_symmetric(const FiniteSpace& space, const TrainingSet& d,
                        const LossFunction& loss) {
  const OffTrainingSampler sampler = OffTrainingSampler::UniformOff(space, d);
  std::vector<ConditionalTable> grid;
  for_each_function(space, [&](const ObjectiveTable& f) {
    grid.push_back(ConditionalTable::Deterministic(f));
  });
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if (ots_cost(grid[a], grid[b], d, loss, sampler) !=
          ots_cost(grid[b], grid[a], d, loss, sampler)) {
        return false;
      }
    }
  }
  return true;
}

SupervisedInnerProductReport supervised_inner_product_check(
    const LearningAlgorithm& learner, const TrainingSet& d,
    const LossFunction& loss, const PriorVector& prior,
    const FiniteSpace& space) {
  if (!prior.is_exact()) {
    throw Error("supervised inner-product check requires an exact prior");
  }
  if (prior.exact->size() != space.num_functions()) {
    throw Error("prior dimension does not match |Y|^|X|");
  }
  // Posterior over deterministic targets: noise-free likelihood, so
  // P(f | d) is the renormalized prior over the f's that reproduce d.
  std::vector<Rational> posterior(prior.exact->begin(), prior.exact->end());
  Rational z = 0;
  std::uint64_t rank = 0;
  for_each_function(space, [&](const ObjectiveTable& f) {
    if (!d.consistent_with(f)) posterior[rank] = 0;
    z += posterior[rank];
    ++rank;
  });
  if (z == 0) {
    throw Error("prior assigns zero mass to every f consistent with d");
  }

  const HypothesisDistribution h = learner.learn(d, space);
  const OffTrainingSampler sampler = OffTrainingSampler::UniformOff(space, d);

  // Route (a): the inner-product formula. M_{c,d}(f, h) is the indicator
  // that the cost of (f, h) equals c; P(h|d) is the learner's point mass.
  std::map<Rational, Rational> by_formula;
  rank = 0;
  for_each_function(space, [&](const ObjectiveTable& f) {
    if (posterior[rank] != 0) {
      const Rational c =
          ots_cost(ConditionalTable::Deterministic(f), h, d, loss, sampler);
      by_formula[c] += posterior[rank] / z;
    }
    ++rank;
  });

  // Route (b): direct enumeration of realized costs, one consistent target
  // at a time with its posterior weight.
  std::map<Rational, Rational> by_direct;
  rank = 0;
  for_each_function(space, [&](const ObjectiveTable& f) {
    if (d.consistent_with(f) && (*prior.exact)[rank] != 0) {
      Rational c = 0;
      const ConditionalTable target = ConditionalTable::Deterministic(f);
      for (int q = 0; q < space.x_size(); ++q) {
        const Rational& pq = sampler.weights()[static_cast<std::size_t>(q)];
        if (pq == 0) continue;
        for (int yh = 0; yh < space.y_size(); ++yh) {
          c += pq * h.row(q)[static_cast<std::size_t>(yh)] *
               loss.at(yh, target.one_hot_index(q));
        }
      }
      by_direct[c] += (*prior.exact)[rank] / z;
    }
    ++rank;
  });

  SupervisedInnerProductReport report;
  for (const auto& [c, p] : by_formula) report.formula.emplace_back(c, p);
  for (const auto& [c, p] : by_direct) report.direct.emplace_back(c, p);
  report.routes_equal = by_formula == by_direct;
  report.loss_symmetric = loss.symmetric();
  report.m_symmetric = m_matrix_symmetric(space, d, loss);
  report.pass = report.routes_equal &&
                report.m_symmetric == report.loss_symmetric;
  return report;
}

json SupervisedNflReport::to_json() const {
  json per = json::array();
  for (const auto& pl : per_learner) {
    per.push_back(json{{"learner", pl.name},
                       {"expected_given_m", to_double(pl.expected_given_m)}});
  }
  return json{{"check", "supervised_nfl"},
              {"common_per_d_value", to_double(common_per_d_value)},
              {"per_d_equal", per_d_equal},
              {"training_sets", training_sets},
              {"per_learner", per},
              {"pass", pass}};
}

SupervisedNflReport nfl_supervised_check(const std::vector<LearnerPtr>& learners,
                                         const FiniteSpace& space, int m,
                                         const LossFunction& loss) {
  if (learners.empty()) throw Error("no learners given");
  if (m < 1 || m >= space.x_size()) {
    throw Error("supervised NFL check requires 1 <= m < |X|");
  }
  const std::uint64_t n_fns = space.num_functions();

  // Pre-build the deterministic target grid.
  std::vector<ObjectiveTable> targets;
  std::vector<ConditionalTable> target_tables;
  for_each_function(space, [&](const ObjectiveTable& f) {
    targets.push_back(f);
    target_tables.push_back(ConditionalTable::Deterministic(f));
  });

  SupervisedNflReport report;
  report.per_d_equal = true;
  std::vector<Rational> sums(learners.size(), Rational(0));
  bool first_d = true;
  int d_count = 0;

  // d^m_X uniform with replacement; every ordered (x-tuple, y-assignment)
  // pair is a distinct training set.
  for_each_x_tuple(space.x_size(), m, [&](const std::vector<int>& xs) {
    std::vector<int> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    // y assignment per distinct x, odometer over |Y|^(#distinct).
    std::vector<int> assign(distinct.size(), 0);
    while (true) {
      TrainingSet d;
      for (int x : xs) {
        const std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(distinct.begin(), distinct.end(), x) -
            distinct.begin());
        d.append(x, assign[idx]);
      }
      ++d_count;

      // Consistent targets under the uniform prior.
      std::vector<std::uint64_t> consistent;
      for (std::uint64_t r = 0; r < n_fns; ++r) {
        if (d.consistent_with(targets[r])) consistent.push_back(r);
      }
      // P(d) = (1/|X|^m) * |consistent| / |Y^X|.
      Rational p_d = Rational(static_cast<int>(consistent.size()), 1);
      for (int i = 0; i < m; ++i) p_d /= space.x_size();
      p_d /= BigInt(n_fns);

      Rational reference = 0;
      for (std::size_t l = 0; l < learners.size(); ++l) {
        const HypothesisDistribution h = learners[l]->learn(d, space);
        Rational e_given_d = 0;
        for (std::uint64_t r : consistent) {
          e_given_d += ots_cost(target_tables[r], h, d, loss, space);
        }
        e_given_d /= static_cast<int>(consistent.size());
        if (l == 0) {
          reference = e_given_d;
          if (first_d) {
            report.common_per_d_value = e_given_d;
            first_d = false;
          }
        } else if (e_given_d != reference) {
          report.per_d_equal = false;
        }
        sums[l] += p_d * e_given_d;
      }

      int i = 0;
      for (; i < static_cast<int>(assign.size()); ++i) {
        if (++assign[static_cast<std::size_t>(i)] < space.y_size()) break;
        assign[static_cast<std::size_t>(i)] = 0;
      }
      if (i == static_cast<int>(assign.size())) break;
    }
  });

  report.training_sets = d_count;
  bool sums_equal = true;
  for (std::size_t l = 0; l < learners.size(); ++l) {
    report.per_learner.push_back({learners[l]->name(), sums[l]});
    sums_equal = sums_equal && sums[l] == sums[0];
  }
  report.pass = report.per_d_equal && sums_equal;
  return report;
}

json ConditioningContrastReport::to_json() const {
  json per = json::array();
  for (const auto& t : per_target) {
    per.push_back(json{{"rank", t.rank},
                       {"full_space_a", to_double(t.full_space_a)},
                       {"full_space_b", to_double(t.full_space_b)}});
  }
  return json{{"check", "conditioning_contrast"},
              {"per_target", per},
              {"ots_mean_a", to_double(ots_mean_a)},
              {"ots_mean_b", to_double(ots_mean_b)},
              {"strict_for_all_f", strict_for_all_f},
              {"ots_equal", ots_equal},
              {"pass", pass}};
}

ConditioningContrastReport conditioning_contrast_experiment(
    const LearningAlgorithm& learner_a, const LearningAlgorithm& learner_b,
    const FiniteSpace& space, int m) {
  if (m < 0 || m >= space.x_size()) {
    throw Error("conditioning contrast requires 0 <= m < |X|");
  }
  const LossFunction loss = LossFunction::ZeroOne(space);
  ConditioningContrastReport report;
  report.strict_for_all_f = true;
  report.ots_mean_a = 0;
  report.ots_mean_b = 0;
  Rational tuple_count = 1;
  for (int i = 0; i < m; ++i) tuple_count *= space.x_size();

  std::uint64_t rank = 0;
  for_each_function(space, [&](const ObjectiveTable& f) {
    const ConditionalTable target = ConditionalTable::Deterministic(f);
    Rational full_a = 0;
    Rational full_b = 0;
    Rational ots_a = 0;
    Rational ots_b = 0;
    for_each_x_tuple(space.x_size(), m, [&](const std::vector<int>& xs) {
      TrainingSet d;
      for (int x : xs) d.append(x, f.y_index_at(x));
      const HypothesisDistribution ha = learner_a.learn(d, space);
      const HypothesisDistribution hb = learner_b.learn(d, space);
      full_a += full_space_cost(target, ha, loss, space);
      full_b += full_space_cost(target, hb, loss, space);
      ots_a += ots_cost(target, ha, d, loss, space);
      ots_b += ots_cost(target, hb, d, loss, space);
    });
    full_a /= tuple_count;
    full_b /= tuple_count;
    report.per_target.push_back({rank, full_a, full_b});
    if (!(full_a < full_b)) report.strict_for_all_f = false;
    report.ots_mean_a += ots_a / tuple_count;
    report.ots_mean_b += ots_b / tuple_count;
    ++rank;
  });
  report.ots_mean_a /= BigInt(space.num_functions());
  report.ots_mean_b /= BigInt(space.num_functions());
  report.ots_equal = report.ots_mean_a == report.ots_mean_b;
  report.pass = report.strict_for_all_f && report.ots_equal;
  return report;
}

}  // namespace nfllab
