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

#include "nfllab/supervised.hpp"

using namespace nfllab;

namespace {

const FiniteSpace kBinary3(3, {0.0, 1.0});
const FiniteSpace kBinary4(4, {0.0, 1.0});

ObjectiveTable table(const FiniteSpace& space, std::vector<int> idx) {
  return ObjectiveTable(space, std::move(idx));
}

}  // namespace

TEST_CASE("conditional tables are checked and comparable") {
  const ConditionalTable det =
      ConditionalTable::Deterministic(table(kBinary3, {1, 0, 1}));
  CHECK(det.deterministic());
  CHECK(det.one_hot_index(0) == 1);
  CHECK(det.one_hot_index(1) == 0);
  const ConditionalTable uniform = ConditionalTable::UniformRows(kBinary3);
  CHECK_FALSE(uniform.deterministic());
  CHECK(uniform.row(0)[0] == Rational(1, 2));
  CHECK_THROWS_AS(ConditionalTable(kBinary3,
                                   {{Rational(1, 2), Rational(1, 4)},
                                    {Rational(1), Rational(0)},
                                    {Rational(0), Rational(1)}}),
                  Error);
}

TEST_CASE("ots cost basics") {
  const ObjectiveTable f_table = table(kBinary4, {1, 0, 1, 0});
  const TargetDistribution f = ConditionalTable::Deterministic(f_table);
  const LossFunction loss = LossFunction::ZeroOne(kBinary4);
  TrainingSet d;
  d.append(0, 1);
  // perfect hypothesis
  CHECK(ots_cost(f, f, d, loss, kBinary4) == Rational(0));
  // coin-flip hypothesis
  CHECK(ots_cost(f, ConditionalTable::UniformRows(kBinary4), d, loss,
                 kBinary4) == Rational(1, 2));
  TrainingSet full;
  for (int x = 0; x < 4; ++x) full.append(x, 0);
  CHECK_THROWS_AS(ots_cost(f, f, full, loss, kBinary4), Error);
}

TEST_CASE("ots cost worked instance on |X|=3") {
  const TargetDistribution f =
      ConditionalTable::Deterministic(table(kBinary3, {1, 1, 1}));
  ConditionalTable h = ConditionalTable::Deterministic(table(kBinary3, {1, 1, 0}));
  TrainingSet d;
  d.append(0, 1);
  CHECK(ots_cost(f, h, d, LossFunction::ZeroOne(kBinary3), kBinary3) ==
        Rational(1, 2));
}

TEST_CASE("full-space cost and its split against ots") {
  const LossFunction loss = LossFunction::ZeroOne(kBinary4);
  const TargetDistribution f =
      ConditionalTable::Deterministic(table(kBinary4, {1, 0, 1, 0}));
  CHECK(full_space_cost(f, f, loss, kBinary4) == Rational(0));
  const HypothesisDistribution h =
      ConditionalTable::Deterministic(table(kBinary4, {1, 0, 1, 1}));
  CHECK(full_space_cost(f, h, loss, kBinary4) == Rational(1, 4));

  // h matching d on-set: Phi' = Phi * (|X|-m)/|X|
  const FiniteSpace wide(16, {0.0, 1.0});
  std::vector<int> fi(16, 0), hi(16, 0);
  for (int x = 0; x < 16; x += 3) fi[static_cast<std::size_t>(x)] = 1;
  hi[0] = fi[0];
  hi[1] = fi[1];
  const TargetDistribution fw =
      ConditionalTable::Deterministic(table(wide, fi));
  const HypothesisDistribution hw =
      ConditionalTable::Deterministic(table(wide, hi));
  TrainingSet d;
  d.append(0, fi[0]);
  d.append(1, fi[1]);
  const LossFunction loss16 = LossFunction::ZeroOne(wide);
  CHECK(full_space_cost(fw, hw, loss16, wide) ==
        ots_cost(fw, hw, d, loss16, wide) * Rational(14, 16));
}

TEST_CASE("loss symmetry") {
  CHECK(LossFunction::ZeroOne(kBinary3).symmetric());
  CHECK(LossFunction::Absolute(kBinary3).symmetric());
  CHECK(LossFunction::Squared(kBinary3).symmetric());
  const LossFunction planted = LossFunction::FromMatrix(
      {{Rational(0), Rational(2)}, {Rational(1), Rational(0)}});
  CHECK_FALSE(planted.symmetric());
}

TEST_CASE("learner predictions") {
  TrainingSet d;
  d.append(0, 1);
  d.append(1, 1);
  d.append(2, 0);

  const HypothesisDistribution maj =
      make_learner("majority")->learn(d, kBinary4);
  CHECK(maj.one_hot_index(3) == 1);
  const HypothesisDistribution anti =
      make_learner("anti_majority")->learn(d, kBinary4);
  CHECK(anti.one_hot_index(3) == 0);
  // both memorize the training inputs
  CHECK(maj.one_hot_index(2) == 0);
  CHECK(anti.one_hot_index(2) == 0);

  const HypothesisDistribution memo =
      make_learner("memorize_plus_default(0)")->learn(d, kBinary4);
  CHECK(memo.one_hot_index(0) == 1);
  CHECK(memo.one_hot_index(3) == 0);

  // empty history falls back to the majority tie rule (lower Y index)
  const HypothesisDistribution cold =
      make_learner("majority")->learn(TrainingSet(), kBinary4);
  CHECK(cold.one_hot_index(0) == 0);
}

TEST_CASE("nearest neighbor mixes equidistant neighbors") {
  const FiniteSpace ring5(5, {0.0, 1.0});
  TrainingSet d;
  d.append(0, 1);
  d.append(2, 0);
  const HypothesisDistribution h =
      make_learner("nearest_neighbor")->learn(d, ring5);
  // x=1 sits between a 1-label and a 0-label at ring distance 1
  CHECK(h.row(1)[0] == Rational(1, 2));
  CHECK(h.row(1)[1] == Rational(1, 2));
  CHECK(h.one_hot_index(4) == 1);  // unique nearest is x=0
}

TEST_CASE("cv error oracles") {
  const LossFunction loss = LossFunction::ZeroOne(kBinary4);
  TrainingSet all1;
  all1.append(0, 1);
  all1.append(1, 1);
  CHECK(cv_error(*make_learner("constant(1)"), all1, 2, loss, kBinary4) ==
        Rational(0));
  TrainingSet mixed;
  mixed.append(0, 1);
  mixed.append(1, 0);
  CHECK(cv_error(*make_learner("constant(1)"), mixed, 2, loss, kBinary4) ==
        Rational(1, 2));

  const FiniteSpace ring3(3, {0.0, 1.0});
  TrainingSet nn;
  nn.append(0, 1);
  nn.append(1, 1);
  nn.append(2, 0);
  CHECK(cv_error(*make_learner("nearest_neighbor"), nn, kLeaveOneOut, loss,
                 ring3) == Rational(2, 3));
}

TEST_CASE("cv_select picks the lower-LOO-error candidate") {
  TrainingSet d;
  d.append(0, 1);
  d.append(1, 1);
  d.append(2, 0);
  const LearnerPtr cv =
      make_learner("cv_select(candidates=[constant(0),constant(1)],folds=loo)");
  const HypothesisDistribution h = cv->learn(d, kBinary4);
  CHECK(h.one_hot_index(3) == 1);  // constant(1): LOO error 1/3 vs 2/3
  const LearnerPtr anti = make_learner(
      "anti_cv_select(candidates=[constant(0),constant(1)],folds=loo)");
  CHECK(anti->learn(d, kBinary4).one_hot_index(3) == 0);
}

TEST_CASE("m-matrix symmetry tracks loss symmetry") {
  TrainingSet d;
  d.append(0, 1);
  d.append(1, 0);
  CHECK(m_matrix_symmetric(kBinary3, d, LossFunction::ZeroOne(kBinary3)));
  CHECK(m_matrix_symmetric(kBinary3, d, LossFunction::Absolute(kBinary3)));
  CHECK(m_matrix_symmetric(kBinary3, d, LossFunction::Squared(kBinary3)));
  const LossFunction planted = LossFunction::FromMatrix(
      {{Rational(0), Rational(2)}, {Rational(1), Rational(0)}});
  CHECK_FALSE(m_matrix_symmetric(kBinary3, d, planted));
}

TEST_CASE("supervised inner product: formula equals direct enumeration") {
  const PriorVector prior = PriorVector::Uniform(kBinary3.num_functions());
  TrainingSet d;
  d.append(0, 1);
  d.append(1, 0);
  for (const char* learner :
       {"memorize_plus_default(0)", "majority", "nearest_neighbor"}) {
    const SupervisedInnerProductReport report = supervised_inner_product_check(
        *make_learner(learner), d, LossFunction::ZeroOne(kBinary3), prior,
        kBinary3);
    CHECK(report.routes_equal);
    CHECK(report.pass);
    CHECK(report.m_symmetric);
  }
}

TEST_CASE("supervised inner product: point-mass prior") {
  TrainingSet d;
  d.append(0, 1);
  d.append(1, 0);
  const ObjectiveTable f0 = ObjectiveTable(kBinary3, {1, 0, 1});
  const PriorVector prior =
      PriorVector::Delta(kBinary3.num_functions(), f0.rank());
  const LearnerPtr learner = make_learner("memorize_plus_default(0)");
  const SupervisedInnerProductReport report = supervised_inner_product_check(
      *learner, d, LossFunction::ZeroOne(kBinary3), prior, kBinary3);
  CHECK(report.routes_equal);
  const Rational expected =
      ots_cost(ConditionalTable::Deterministic(f0),
               learner->learn(d, kBinary3), d,
               LossFunction::ZeroOne(kBinary3), kBinary3);
  Rational mass_at_expected = 0;
  for (const auto& [c, p] : report.direct) {
    if (c == expected) mass_at_expected += p;
  }
  CHECK(mass_at_expected == Rational(1));
}

TEST_CASE("supervised NFL: E(Phi|d) is 1/2 for every learner, binary Y") {
  const std::vector<LearnerPtr> learners = {
      make_learner("constant(0)"), make_learner("constant(1)"),
      make_learner("majority"), make_learner("anti_majority"),
      make_learner("nearest_neighbor")};
  const SupervisedNflReport report = nfl_supervised_check(
      learners, kBinary4, 2, LossFunction::ZeroOne(kBinary4));
  CHECK(report.pass);
  CHECK(report.per_d_equal);
  CHECK(report.common_per_d_value == Rational(1, 2));
  for (const auto& pl : report.per_learner) {
    CHECK(pl.expected_given_m == Rational(1, 2));
  }
}

TEST_CASE("supervised NFL: ternary Y gives 2/3") {
  const FiniteSpace ternary(4, {0.0, 1.0, 2.0});
  const std::vector<LearnerPtr> learners = {make_learner("constant(0)"),
                                            make_learner("majority"),
                                            make_learner("nearest_neighbor")};
  const SupervisedNflReport report = nfl_supervised_check(
      learners, ternary, 2, LossFunction::ZeroOne(ternary));
  CHECK(report.pass);
  CHECK(report.common_per_d_value == Rational(2, 3));
}

TEST_CASE("conditioning contrast instance on |X|=4") {
  const ConditioningContrastReport report = conditioning_contrast_experiment(
      *make_learner("memorize_plus_default(0)"), *make_learner("uniform_guess"),
      kBinary4, 3);
  CHECK(report.pass);
  CHECK(report.strict_for_all_f);
  CHECK(report.ots_equal);
  CHECK(report.ots_mean_a == Rational(1, 2));
  CHECK(report.ots_mean_b == Rational(1, 2));
}

TEST_CASE("conditioning contrast degenerates at m=0") {
  // with no training data Phi and Phi' coincide, so no strict instance exists
  const ConditioningContrastReport report = conditioning_contrast_experiment(
      *make_learner("constant(0)"), *make_learner("uniform_guess"), kBinary4,
      0);
  CHECK_FALSE(report.strict_for_all_f);
}
