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

#ifndef NFLLAB_ALGORITHMS_HPP
#define NFLLAB_ALGORITHMS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nfllab/core.hpp"

namespace nfllab {

// Deterministic off-data-set search rule: maps any trace to an unvisited x.
// "Random" search carries an explicit seed, so every algorithm here is a pure
// function of (trace, seed) and all NFL sums are exactly reproducible.
class SearchAlgorithm {
 public:
  virtual ~SearchAlgorithm() = default;
  const std::string& name() const { return name_; }
  virtual int step(const SearchTrace& trace,
                   const FiniteSpace& space) const = 0;

 protected:
  explicit SearchAlgorithm(std::string name) : name_(std::move(name)) {}

 private:
  std::string name_;
};

struct AlgorithmSpec {
  enum class Kind {
    kEnumerate,
    kRandom,
    kHillDescend,
    kHillAscend,
    kGreedySurrogate,
    kMco,
  };

  Kind kind = Kind::kEnumerate;
  std::uint64_t seed = 0;        // random / greedy_surrogate / mco
  int start = 0;                 // hill climbers
  double temperature = 1.0;      // greedy_surrogate
  std::vector<double> candidates;  // mco temperature candidates
  int folds = 2;                 // mco
  int refit_every = 1;           // mco; <= 0 means never retune

  // Config grammar: "enumerate", "random(seed=42)", "hill_descend(start=3)",
  // "hill_ascend(start=0)", "greedy_surrogate(T=1.0,seed=0)",
  // "mco(candidates=[0.25,1,4],folds=2,refit_every=1,seed=0)".
  static AlgorithmSpec Parse(const std::string& text);
  std::string name() const;
};

std::shared_ptr<const SearchAlgorithm> make_algorithm(const AlgorithmSpec& spec);
std::shared_ptr<const SearchAlgorithm> make_algorithm(const std::string& spec);

// Grows d^m by m applications of the algorithm, evaluating f at each new
// point. Throws if the algorithm ever proposes a visited x.
SearchTrace run_search(const SearchAlgorithm& algorithm,
                       const ObjectiveTable& f, int m);

// Ring adjacency on X-indices: x is adjacent to (x +- 1) mod |X|.
std::pair<int, int> ring_neighbors(int x, int x_size);
int ring_distance(int a, int b, int x_size);

// Unvisited X-indices in ascending order.
std::vector<int> unvisited_points(const SearchTrace& trace,
                                  const FiniteSpace& space);

// Nearest-visited-point interpolation on the ring: every x gets the y value
// of the closest visited point (distance ties broken to the lower visited
// index). Exact at visited points. Requires a non-empty trace.
std::vector<double> ring_surrogate(const SearchTrace& trace,
                                   const FiniteSpace& space);

}  // namespace nfllab

#endif  // NFLLAB_ALGORITHMS_HPP
