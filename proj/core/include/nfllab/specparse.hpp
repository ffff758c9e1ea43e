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

#ifndef NFLLAB_SPECPARSE_HPP
#define NFLLAB_SPECPARSE_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace nfllab {

// Grammar for algorithm/learner config strings:
//   spec   := name | name '(' args ')'
//   args   := arg (',' arg)*       (may be empty)
//   arg    := (key '=')? value
//   value  := number | spec | '[' value (',' value)* ']'
// Examples: "enumerate", "hill_descend(start=3)", "random(seed=42)",
//   "cv_select(candidates=[constant(0),constant(1),majority], folds=loo)".
struct SpecNode;

struct SpecValue {
  // Exactly one of these is active.
  std::variant<double, std::shared_ptr<SpecNode>,
               std::vector<SpecValue>>
      data;

  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_node() const {
    return std::holds_alternative<std::shared_ptr<SpecNode>>(data);
  }
  bool is_list() const {
    return std::holds_alternative<std::vector<SpecValue>>(data);
  }
  double number() const;
  long long integer() const;  // throws unless the number is integral
  const SpecNode& node() const;
  const std::vector<SpecValue>& list() const;
};

struct SpecArg {
  std::string key;  // empty for positional
  SpecValue value;
};

struct SpecNode {
  std::string name;
  std::vector<SpecArg> args;

  // Argument lookup. Positional args match by index among unnamed args.
  const SpecValue* find(const std::string& key) const;
  const SpecValue* positional(std::size_t index) const;
  // Argument by key, falling back to the positional slot; throws with the
  // field name when required and missing.
  const SpecValue& require(const std::string& key, std::size_t index) const;
  void reject_unknown(const std::vector<std::string>& known) const;
};

SpecNode parse_spec(const std::string& text);
std::string spec_to_string(const SpecNode& node);

}  // namespace nfllab

#endif  // NFLLAB_SPECPARSE_HPP
