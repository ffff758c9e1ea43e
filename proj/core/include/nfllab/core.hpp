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

#ifndef NFLLAB_CORE_HPP
#define NFLLAB_CORE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nfllab/rational.hpp"

namespace nfllab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A finite search/learning universe: inputs X = {0, ..., x_size-1} and an
// ordered set of real output values Y. All enumerations over the |Y|^|X|
// objective functions run over this pair.
class FiniteSpace {
 public:
  static constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

  FiniteSpace(int x_size, std::vector<double> y_values,
              std::uint64_t enumeration_cap = kDefaultEnumerationCap);

  int x_size() const { return x_size_; }
  int y_size() const { return static_cast<int>(y_values_.size()); }
  const std::vector<double>& y_values() const { return y_values_; }
  double y_value(int y_index) const;
  int index_of_y(double y) const;  // exact match; throws if absent

  // |Y|^|X|, guaranteed <= enumeration_cap by construction.
  std::uint64_t num_functions() const { return num_functions_; }
  std::uint64_t enumeration_cap() const { return enumeration_cap_; }

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  int x_size_;
  std::vector<double> y_values_;
  std::uint64_t enumeration_cap_;
  std::uint64_t num_functions_;
};

// A total objective function f : X -> Y, stored as one Y index per x.
// Interpreting y_index as a base-|Y| numeral with x=0 least significant gives
// the canonical rank, a bijection with [0, |Y|^|X|).
class ObjectiveTable {
 public:
  ObjectiveTable(FiniteSpace space, std::vector<int> y_index);

  const FiniteSpace& space() const { return space_; }
  const std::vector<int>& y_index() const { return y_index_; }
  int y_index_at(int x) const { return y_index_[static_cast<std::size_t>(x)]; }
  double value(int x) const { return space_.y_value(y_index_at(x)); }

  std::uint64_t rank() const;

  friend bool operator==(const ObjectiveTable&, const ObjectiveTable&) = default;

 private:
  FiniteSpace space_;
  std::vector<int> y_index_;
};

ObjectiveTable rank_to_function(const FiniteSpace& space, std::uint64_t rank);
std::uint64_t function_to_rank(const ObjectiveTable& table);

// Streams all |Y|^|X| objective tables in ascending canonical rank. Ranges
// may be split across workers; each split is independent.
class FunctionEnumerator {
 public:
  explicit FunctionEnumerator(FiniteSpace space);
  FunctionEnumerator(FiniteSpace space, std::uint64_t begin_rank,
                     std::uint64_t end_rank);

  // Returns the next table, or nullopt once the range is exhausted.
  std::optional<ObjectiveTable> next();

 private:
  FiniteSpace space_;
  std::uint64_t next_rank_;
  std::uint64_t end_rank_;
  std::vector<int> digits_;
};

void for_each_function(const FiniteSpace& space,
                       const std::function<void(const ObjectiveTable&)>& fn);

// The ordered data set d^m grown by a search run. All x values are distinct:
// search is off-data-set by construction.
class SearchTrace {
 public:
  SearchTrace() = default;

  void append(int x, int y_index);
  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  bool contains_x(int x) const;
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int x_at(int i) const { return pairs_[static_cast<std::size_t>(i)].first; }
  int y_index_at(int i) const {
    return pairs_[static_cast<std::size_t>(i)].second;
  }
  int last_x() const;

 private:
  std::vector<std::pair<int, int>> pairs_;
};

// Phi : d^m_Y -> R. Depends only on the y-sequence, never on the sampled x's.
// FINAL is order-dependent by design.
class PerformanceMeasure {
 public:
  enum class Kind { kMin, kMean, kBestAtStep, kFinal };

  static PerformanceMeasure Min() { return PerformanceMeasure(Kind::kMin, 0); }
  static PerformanceMeasure Mean() {
    return PerformanceMeasure(Kind::kMean, 0);
  }
  static PerformanceMeasure BestAtStep(int k);
  static PerformanceMeasure Final() {
    return PerformanceMeasure(Kind::kFinal, 0);
  }

  // Accepts "min", "mean", "final", "best_at_step(k)".
  static PerformanceMeasure Parse(const std::string& text);

  Kind kind() const { return kind_; }
  int step() const { return step_; }
  std::string name() const;

  Rational evaluate_exact(const SearchTrace& trace,
                          const FiniteSpace& space) const;
  double evaluate(const SearchTrace& trace, const FiniteSpace& space) const;

 private:
  PerformanceMeasure(Kind kind, int step) : kind_(kind), step_(step) {}

  Kind kind_;
  int step_;
};

// JSON serialization (nlohmann dump of the structures below):
//   ObjectiveTable: {"x_size": n, "y_values": [...], "y_index": [...]}
//   SearchTrace:    [[x, y_value], ...]
std::string objective_to_json(const ObjectiveTable& table);
ObjectiveTable objective_from_json(const std::string& text,
                                   std::uint64_t enumeration_cap =
                                       FiniteSpace::kDefaultEnumerationCap);
std::string trace_to_json(const SearchTrace& trace, const FiniteSpace& space);
SearchTrace trace_from_json(const std::string& text, const FiniteSpace& space);

}  // namespace nfllab

#endif  // NFLLAB_CORE_HPP
