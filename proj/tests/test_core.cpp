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

#include "nfllab/core.hpp"
#include "nfllab/rng.hpp"
#include "nfllab/specparse.hpp"

using namespace nfllab;

TEST_CASE("space counts functions") {
  CHECK(FiniteSpace(3, {0.0, 1.0}).num_functions() == 8);
  CHECK(FiniteSpace(1, {0, 1, 2, 3, 4}).num_functions() == 5);
  CHECK(FiniteSpace(4, {0.0, 1.0, 2.0}).num_functions() == 81);
}

TEST_CASE("space invariants rejected") {
  CHECK_THROWS_AS(FiniteSpace(0, {0.0}), Error);
  CHECK_THROWS_AS(FiniteSpace(2, {}), Error);
  CHECK_THROWS_AS(FiniteSpace(2, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(FiniteSpace(2, {2.0, 1.0}), Error);
  // default cap 2^24 rejects 2^25 functions
  CHECK_THROWS_AS(FiniteSpace(25, {0.0, 1.0}), Error);
  CHECK_NOTHROW(FiniteSpace(24, {0.0, 1.0}));
  // explicit max cap admits non-enumerable spaces
  CHECK_NOTHROW(FiniteSpace(64, {0, 1, 2, 3, 4, 5, 6, 7}, UINT64_MAX));
}

TEST_CASE("rank is a base-|Y| numeral, x=0 least significant") {
  const FiniteSpace s22(2, {0.0, 1.0});
  CHECK(rank_to_function(s22, 0).y_index() == std::vector<int>{0, 0});
  CHECK(rank_to_function(s22, 3).y_index() == std::vector<int>{1, 1});
  const FiniteSpace s32(3, {0.0, 1.0});
  CHECK(rank_to_function(s32, 5).y_index() == std::vector<int>{1, 0, 1});
  const FiniteSpace s43(4, {0.0, 1.0, 2.0});
  CHECK(rank_to_function(s43, 80).y_index() == std::vector<int>{2, 2, 2, 2});
}

TEST_CASE("rank round-trips over random draws") {
  const FiniteSpace space(5, {0.0, 1.0, 2.0});
  SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t r = rng.next_below(space.num_functions());
    CHECK(rank_to_function(space, r).rank() == r);
  }
  CHECK_THROWS_AS(rank_to_function(space, space.num_functions()), Error);
}

TEST_CASE("enumerator visits every rank once, in order") {
  const FiniteSpace space(3, {0.0, 1.0, 2.0});
  FunctionEnumerator en(space);
  std::uint64_t expect = 0;
  while (auto f = en.next()) CHECK(f->rank() == expect++);
  CHECK(expect == 27);
  FunctionEnumerator ranged(space, 10, 14);
  CHECK(ranged.next()->rank() == 10);
}

TEST_CASE("trace rejects repeated x") {
  SearchTrace t;
  t.append(1, 0);
  CHECK_THROWS_AS(t.append(1, 1), Error);
  CHECK(t.contains_x(1));
  CHECK(t.last_x() == 1);
}

TEST_CASE("performance measures") {
  const FiniteSpace space(4, {0.0, 1.0, 2.0, 3.0});
  SearchTrace t;  // y-values 3, 1, 2
  t.append(0, 3);
  t.append(1, 1);
  t.append(2, 2);
  CHECK(PerformanceMeasure::Min().evaluate(t, space) == 1.0);
  CHECK(PerformanceMeasure::Final().evaluate(t, space) == 2.0);
  CHECK(PerformanceMeasure::BestAtStep(2).evaluate(t, space) == 1.0);

  const FiniteSpace binary(2, {0.0, 1.0});
  SearchTrace u;
  u.append(0, 0);
  u.append(1, 1);
  CHECK(PerformanceMeasure::Mean().evaluate_exact(u, binary) ==
        Rational(1, 2));

  SearchTrace empty;
  CHECK_THROWS_AS(PerformanceMeasure::Min().evaluate(empty, space), Error);
  CHECK_THROWS_AS(PerformanceMeasure::BestAtStep(4).evaluate(t, space), Error);
}

TEST_CASE("measure parse round-trip") {
  for (const char* name : {"min", "mean", "final", "best_at_step(3)"}) {
    CHECK(PerformanceMeasure::Parse(name).name() == name);
  }
  CHECK_THROWS_AS(PerformanceMeasure::Parse("median"), Error);
}

TEST_CASE("objective json round-trip") {
  const FiniteSpace space(3, {0.0, 0.5, 1.0});
  const ObjectiveTable f = rank_to_function(space, 7);
  const ObjectiveTable g = objective_from_json(objective_to_json(f));
  CHECK(g.y_index() == f.y_index());
  CHECK(g.space().y_values() == space.y_values());
}

TEST_CASE("trace json round-trip stores y values, not indices") {
  const FiniteSpace space(3, {0.0, 0.5, 1.0});
  SearchTrace t;
  t.append(2, 1);
  t.append(0, 2);
  const std::string text = trace_to_json(t, space);
  CHECK(text == "[[2,0.5],[0,1.0]]");
  const SearchTrace back = trace_from_json(text, space);
  CHECK(back.pairs() == t.pairs());
}

TEST_CASE("splitmix64 streams are deterministic and decorrelated") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  CHECK(derive_stream(42, 0) != derive_stream(42, 1));
  SplitMix64 c(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(c.next_below(13) < 13);
  }
}

TEST_CASE("spec grammar rejects unknown keys") {
  const SpecNode node = parse_spec("thing(a=1,b=[2,3],c=inner(x=4))");
  CHECK(node.name == "thing");
  CHECK(node.require("a", 0).integer() == 1);
  CHECK(node.require("b", 1).list().size() == 2);
  CHECK_NOTHROW(node.reject_unknown({"a", "b", "c"}));
  CHECK_THROWS_AS(node.reject_unknown({"a", "b"}), Error);
  CHECK_THROWS_AS(parse_spec("f(x="), Error);
  CHECK_THROWS_WITH_AS(parse_spec("f()").require("start", 0),
                       doctest::Contains("start"), Error);
}
