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

#include "nfllab/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace nfllab {
namespace {

using json = nlohmann::json;

// |Y|^|X| checked against the cap; saturates at UINT64_MAX so an explicit
// cap of UINT64_MAX admits non-enumerable benchmark spaces.
std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
  unsigned __int128 result = 1;
  for (int i = 0; i < exp; ++i) {
    result *= base;
    if (result > UINT64_MAX) {
      result = UINT64_MAX;
      break;
    }
  }
  if (static_cast<std::uint64_t>(result) > cap) {
    throw Error("enumeration too large: |Y|^|X| exceeds the cap of " +
                std::to_string(cap) + " functions");
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

FiniteSpace::FiniteSpace(int x_size, std::vector<double> y_values,
                         std::uint64_t enumeration_cap)
    : x_size_(x_size),
      y_values_(std::move(y_values)),
      enumeration_cap_(enumeration_cap) {
  if (x_size_ < 1) throw Error("x_size must be >= 1");
  if (y_values_.empty()) throw Error("y_values must be non-empty");
  for (std::size_t i = 0; i + 1 < y_values_.size(); ++i) {
    if (!(y_values_[i] < y_values_[i + 1])) {
      throw Error("y_values must be strictly increasing");
    }
  }
  for (double y : y_values_) {
    if (!std::isfinite(y)) throw Error("y_values must be finite");
  }
  num_functions_ =
      checked_pow(y_values_.size(), x_size_, enumeration_cap_);
}

double FiniteSpace::y_value(int y_index) const {
  if (y_index < 0 || y_index >= y_size()) {
    throw Error("y index out of range: " + std::to_string(y_index));
  }
  return y_values_[static_cast<std::size_t>(y_index)];
}

int FiniteSpace::index_of_y(double y) const {
  auto it = std::lower_bound(y_values_.begin(), y_values_.end(), y);
  if (it == y_values_.end() || *it != y) {
    throw Error("value not in Y: " + std::to_string(y));
  }
  return static_cast<int>(it - y_values_.begin());
}

ObjectiveTable::ObjectiveTable(FiniteSpace space, std::vector<int> y_index)
    : space_(std::move(space)), y_index_(std::move(y_index)) {
  if (static_cast<int>(y_index_.size()) != space_.x_size()) {
    throw Error("y_index length must equal x_size");
  }
  for (int idx : y_index_) {
    if (idx < 0 || idx >= space_.y_size()) {
      throw Error("y_index entry out of range");
    }
  }
}

std::uint64_t ObjectiveTable::rank() const { return function_to_rank(*this); }

ObjectiveTable rank_to_function(const FiniteSpace& space, std::uint64_t rank) {
  if (rank >= space.num_functions()) {
    throw Error("rank out of range: " + std::to_string(rank));
  }
  // Base-|Y| numeral, x=0 least significant.
  std::vector<int> digits(static_cast<std::size_t>(space.x_size()));
  const std::uint64_t base = static_cast<std::uint64_t>(space.y_size());
  for (int x = 0; x < space.x_size(); ++x) {
    digits[static_cast<std::size_t>(x)] = static_cast<int>(rank % base);
    rank /= base;
  }
  return ObjectiveTable(space, std::move(digits));
}

std::uint64_t function_to_rank(const ObjectiveTable& table) {
  const std::uint64_t base =
      static_cast<std::uint64_t>(table.space().y_size());
  std::uint64_t rank = 0;
  const auto& digits = table.y_index();
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    rank = rank * base + static_cast<std::uint64_t>(*it);
  }
  return rank;
}

FunctionEnumerator::FunctionEnumerator(FiniteSpace space)
    : FunctionEnumerator(space, 0, space.num_functions()) {}

FunctionEnumerator::FunctionEnumerator(FiniteSpace space,
                                       std::uint64_t begin_rank,
                                       std::uint64_t end_rank)
    : space_(std::move(space)), next_rank_(begin_rank), end_rank_(end_rank) {
  if (end_rank_ > space_.num_functions() || begin_rank > end_rank_) {
    throw Error("enumeration range out of bounds");
  }
  if (next_rank_ < end_rank_) {
    digits_ = rank_to_function(space_, next_rank_).y_index();
  }
}

std::optional<ObjectiveTable> FunctionEnumerator::next() {
  if (next_rank_ >= end_rank_) return std::nullopt;
  ObjectiveTable table(space_, digits_);
  ++next_rank_;
  // Odometer increment in base |Y|.
  for (auto& d : digits_) {
    if (++d < space_.y_size()) break;
    d = 0;
  }
  return table;
}

void for_each_function(const FiniteSpace& space,
                       const std::function<void(const ObjectiveTable&)>& fn) {
  FunctionEnumerator en(space);
  while (auto table = en.next()) fn(*table);
}

void SearchTrace::append(int x, int y_index) {
  if (contains_x(x)) {
    throw Error("trace already contains x=" + std::to_string(x));
  }
  pairs_.emplace_back(x, y_index);
}

bool SearchTrace::contains_x(int x) const {
  for (const auto& [px, py] : pairs_) {
    if (px == x) return true;
  }
  return false;
}

int SearchTrace::last_x() const {
  if (pairs_.empty()) throw Error("empty trace has no last x");
  return pairs_.back().first;
}

PerformanceMeasure PerformanceMeasure::BestAtStep(int k) {
  if (k < 1) throw Error("best_at_step requires k >= 1");
  return PerformanceMeasure(Kind::kBestAtStep, k);
}

PerformanceMeasure PerformanceMeasure::Parse(const std::string& text) {
  if (text == "min") return Min();
  if (text == "mean") return Mean();
  if (text == "final") return Final();
  const std::string prefix = "best_at_step(";
  if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
    const std::string arg = text.substr(prefix.size(),
                                        text.size() - prefix.size() - 1);
    return BestAtStep(std::stoi(arg));
  }
  throw Error("unknown performance measure: " + text);
}

std::string PerformanceMeasure::name() const {
  switch (kind_) {
    case Kind::kMin:
      return "min";
    case Kind::kMean:
      return "mean";
    case Kind::kFinal:
      return "final";
    case Kind::kBestAtStep:
      return "best_at_step(" + std::to_string(step_) + ")";
  }
  return "?";
}

Rational PerformanceMeasure::evaluate_exact(const SearchTrace& trace,
                                            const FiniteSpace& space) const {
  if (trace.empty()) throw Error("performance of an empty trace is undefined");
  const int m = trace.size();
  auto y_at = [&](int i) {
    return Rational(space.y_value(trace.y_index_at(i)));
  };
  switch (kind_) {
    case Kind::kMin: {
      Rational best = y_at(0);
      for (int i = 1; i < m; ++i) best = std::min(best, y_at(i));
      return best;
    }
    case Kind::kMean: {
      Rational sum = 0;
      for (int i = 0; i < m; ++i) sum += y_at(i);
      return sum / m;
    }
    case Kind::kBestAtStep: {
      if (step_ > m) {
        throw Error("best_at_step(" + std::to_string(step_) +
                    ") exceeds trace length " + std::to_string(m));
      }
      Rational best = y_at(0);
      for (int i = 1; i < step_; ++i) best = std::min(best, y_at(i));
      return best;
    }
    case Kind::kFinal:
      return y_at(m - 1);
  }
  throw Error("unreachable performance kind");
}

double PerformanceMeasure::evaluate(const SearchTrace& trace,
                                    const FiniteSpace& space) const {
  return to_double(evaluate_exact(trace, space));
}

std::string objective_to_json(const ObjectiveTable& table) {
  json j;
  j["x_size"] = table.space().x_size();
  j["y_values"] = table.space().y_values();
  j["y_index"] = table.y_index();
  return j.dump();
}

ObjectiveTable objective_from_json(const std::string& text,
                                   std::uint64_t enumeration_cap) {
  json j = json::parse(text);
  FiniteSpace space(j.at("x_size").get<int>(),
                    j.at("y_values").get<std::vector<double>>(),
                    enumeration_cap);
  return ObjectiveTable(space, j.at("y_index").get<std::vector<int>>());
}

std::string trace_to_json(const SearchTrace& trace, const FiniteSpace& space) {
  json j = json::array();
  for (const auto& [x, yi] : trace.pairs()) {
    j.push_back(json::array({x, space.y_value(yi)}));
  }
  return j.dump();
}

SearchTrace trace_from_json(const std::string& text,
                            const FiniteSpace& space) {
  json j = json::parse(text);
  SearchTrace trace;
  for (const auto& entry : j) {
    trace.append(entry.at(0).get<int>(),
                 space.index_of_y(entry.at(1).get<double>()));
  }
  return trace;
}

}  // namespace nfllab
