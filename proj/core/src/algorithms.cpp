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

#include "nfllab/algorithms.hpp"

#include <algorithm>
#include <sstream>

#include "nfllab/mco.hpp"
#include "nfllab/rng.hpp"
#include "nfllab/specparse.hpp"

namespace nfllab {
namespace {

int lowest_unvisited(const SearchTrace& trace, const FiniteSpace& space) {
  for (int x = 0; x < space.x_size(); ++x) {
    if (!trace.contains_x(x)) return x;
  }
  throw Error("all points visited");
}

class EnumerateSearch : public SearchAlgorithm {
 public:
  EnumerateSearch() : SearchAlgorithm("enumerate") {}
  int step(const SearchTrace& trace, const FiniteSpace& space) const override {
    return lowest_unvisited(trace, space);
  }
};

class RandomSearch : public SearchAlgorithm {
 public:
  RandomSearch(std::uint64_t seed, std::string name)
      : SearchAlgorithm(std::move(name)), seed_(seed) {}

  int step(const SearchTrace& trace, const FiniteSpace& space) const override {
    const std::vector<int> open = unvisited_points(trace, space);
    if (open.empty()) throw Error("all points visited");
    // Stream keyed by the trace length keeps the step a pure function of
    // (trace, seed).
    SplitMix64 rng(derive_stream(seed_, static_cast<std::uint64_t>(trace.size())));
    return open[rng.next_below(open.size())];
  }

 private:
  std::uint64_t seed_;
};

class HillClimbSearch : public SearchAlgorithm {
 public:
  HillClimbSearch(int start, bool descend, std::string name)
      : SearchAlgorithm(std::move(name)), start_(start), descend_(descend) {}

  int step(const SearchTrace& trace, const FiniteSpace& space) const override {
    if (trace.empty()) {
      if (start_ < 0 || start_ >= space.x_size()) {
        throw Error("hill climber start index out of range");
      }
      return start_;
    }
    const auto [a, b] = ring_neighbors(trace.last_x(), space.x_size());
    std::vector<int> open;
    if (!trace.contains_x(a)) open.push_back(a);
    if (b != a && !trace.contains_x(b)) open.push_back(b);
    if (open.empty()) return lowest_unvisited(trace, space);
    if (open.size() == 1) return open[0];
    // Both neighbors unvisited: compare surrogate estimates; equal estimates
    // go to the higher index.
    const std::vector<double> g = ring_surrogate(trace, space);
    const int lo = std::min(open[0], open[1]);
    const int hi = std::max(open[0], open[1]);
    if (g[static_cast<std::size_t>(lo)] == g[static_cast<std::size_t>(hi)]) {
      return hi;
    }
    const bool lo_wins = descend_
                             ? g[static_cast<std::size_t>(lo)] <
                                   g[static_cast<std::size_t>(hi)]
                             : g[static_cast<std::size_t>(lo)] >
                                   g[static_cast<std::size_t>(hi)];
    return lo_wins ? lo : hi;
  }

 private:
  int start_;
  bool descend_;
};

}  // namespace

AlgorithmSpec AlgorithmSpec::Parse(const std::string& text) {
  const SpecNode node = parse_spec(text);
  AlgorithmSpec spec;
  if (node.name == "enumerate") {
    node.reject_unknown({});
    spec.kind = Kind::kEnumerate;
  } else if (node.name == "random") {
    node.reject_unknown({"seed"});
    spec.kind = Kind::kRandom;
    spec.seed = static_cast<std::uint64_t>(node.require("seed", 0).integer());
  } else if (node.name == "hill_descend" || node.name == "hill_ascend") {
    node.reject_unknown({"start"});
    spec.kind = node.name == "hill_descend" ? Kind::kHillDescend
                                            : Kind::kHillAscend;
    spec.start = static_cast<int>(node.require("start", 0).integer());
  } else if (node.name == "greedy_surrogate") {
    node.reject_unknown({"T", "seed"});
    spec.kind = Kind::kGreedySurrogate;
    spec.temperature = node.require("T", 0).number();
    if (const SpecValue* s = node.find("seed")) {
      spec.seed = static_cast<std::uint64_t>(s->integer());
    }
    if (spec.temperature <= 0) throw Error("greedy_surrogate requires T > 0");
  } else if (node.name == "mco") {
    node.reject_unknown({"candidates", "folds", "refit_every", "seed"});
    spec.kind = Kind::kMco;
    for (const auto& v : node.require("candidates", 0).list()) {
      spec.candidates.push_back(v.number());
    }
    if (spec.candidates.empty()) throw Error("mco requires candidates");
    if (const SpecValue* v = node.find("folds")) {
      spec.folds = static_cast<int>(v->integer());
    }
    if (const SpecValue* v = node.find("refit_every")) {
      spec.refit_every = static_cast<int>(v->integer());
    }
    if (const SpecValue* v = node.find("seed")) {
      spec.seed = static_cast<std::uint64_t>(v->integer());
    }
  } else {
    throw Error("unknown algorithm spec: " + node.name);
  }
  return spec;
}

std::string AlgorithmSpec::name() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kEnumerate:
      return "enumerate";
    case Kind::kRandom:
      out << "random(seed=" << seed << ")";
      break;
    case Kind::kHillDescend:
      out << "hill_descend(start=" << start << ")";
      break;
    case Kind::kHillAscend:
      out << "hill_ascend(start=" << start << ")";
      break;
    case Kind::kGreedySurrogate:
      out << "greedy_surrogate(T=" << temperature << ",seed=" << seed << ")";
      break;
    case Kind::kMco: {
      out << "mco(candidates=[";
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (i) out << ',';
        out << candidates[i];
      }
      out << "],folds=" << folds << ",refit_every=" << refit_every
          << ",seed=" << seed << ")";
      break;
    }
  }
  return out.str();
}

std::shared_ptr<const SearchAlgorithm> make_algorithm(
    const AlgorithmSpec& spec) {
  switch (spec.kind) {
    case AlgorithmSpec::Kind::kEnumerate:
      return std::make_shared<EnumerateSearch>();
    case AlgorithmSpec::Kind::kRandom:
      return std::make_shared<RandomSearch>(spec.seed, spec.name());
    case AlgorithmSpec::Kind::kHillDescend:
      return std::make_shared<HillClimbSearch>(spec.start, true, spec.name());
    case AlgorithmSpec::Kind::kHillAscend:
      return std::make_shared<HillClimbSearch>(spec.start, false, spec.name());
    case AlgorithmSpec::Kind::kGreedySurrogate:
      return std::make_shared<GreedySurrogateSearch>(spec.temperature,
                                                     spec.seed, spec.name());
    case AlgorithmSpec::Kind::kMco:
      return std::make_shared<McoSearch>(spec.candidates, spec.folds,
                                         spec.refit_every, spec.seed,
                                         spec.name());
  }
  throw Error("unknown algorithm kind");
}

std::shared_ptr<const SearchAlgorithm> make_algorithm(const std::string& spec) {
  return make_algorithm(AlgorithmSpec::Parse(spec));
}

SearchTrace run_search(const SearchAlgorithm& algorithm,
                       const ObjectiveTable& f, int m) {
  const FiniteSpace& space = f.space();
  if (m < 1 || m > space.x_size()) {
    throw Error("m must satisfy 1 <= m <= |X|; got " + std::to_string(m));
  }
  SearchTrace trace;
  for (int i = 0; i < m; ++i) {
    const int x = algorithm.step(trace, space);
    if (x < 0 || x >= space.x_size()) {
      throw Error("algorithm " + algorithm.name() +
                  " proposed an out-of-range x");
    }
    if (trace.contains_x(x)) {
      throw Error("contract violation: algorithm " + algorithm.name() +
                  " revisited x=" + std::to_string(x));
    }
    trace.append(x, f.y_index_at(x));
  }
  return trace;
}

std::pair<int, int> ring_neighbors(int x, int x_size) {
  return {(x + x_size - 1) % x_size, (x + 1) % x_size};
}

int ring_distance(int a, int b, int x_size) {
  const int d = std::abs(a - b);
  return std::min(d, x_size - d);
}

std::vector<int> unvisited_points(const SearchTrace& trace,
                                  const FiniteSpace& space) {
  std::vector<int> open;
  open.reserve(static_cast<std::size_t>(space.x_size() - trace.size()));
  for (int x = 0; x < space.x_size(); ++x) {
    if (!trace.contains_x(x)) open.push_back(x);
  }
  return open;
}

std::vector<double> ring_surrogate(const SearchTrace& trace,
                                   const FiniteSpace& space) {
  if (trace.empty()) throw Error("surrogate requires a non-empty trace");
  const int n = space.x_size();
  std::vector<double> estimate(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    int best_dist = n + 1;
    int best_x = -1;
    double best_value = 0;
    for (const auto& [vx, vy] : trace.pairs()) {
      const int dist = ring_distance(x, vx, n);
      if (dist < best_dist || (dist == best_dist && vx < best_x)) {
        best_dist = dist;
        best_x = vx;
        best_value = space.y_value(vy);
      }
    }
    estimate[static_cast<std::size_t>(x)] = best_value;
  }
  return estimate;
}

}  // namespace nfllab
