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

#ifndef NFLLAB_PARALLEL_HPP
#define NFLLAB_PARALLEL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace nfllab {

// Number of workers: explicit request wins, then NFL_LAB_THREADS, then
// hardware concurrency.
int resolve_thread_count(int requested);

// Map-reduce over the rank range [0, n). `map` is called as map(lo, hi,
// chunk_index) and must return a partial result; partials are combined in
// chunk order by `reduce(acc, partial)`, so exact accumulations agree with the
// serial sweep bit-for-bit.
template <typename Result, typename Map, typename Reduce>
Result parallel_map_reduce(std::uint64_t n, int threads, Result init, Map map,
                           Reduce reduce) {
  if (threads <= 1 || n < 2) {
    return reduce(std::move(init), map(std::uint64_t{0}, n, 0));
  }
  const std::uint64_t chunks =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n);
  std::vector<Result> partials(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = n * c / chunks;
    const std::uint64_t hi = n * (c + 1) / chunks;
    pool.emplace_back([&partials, c, lo, hi, &map] {
      partials[c] = map(lo, hi, static_cast<int>(c));
    });
  }
  for (auto& t : pool) t.join();
  Result acc = std::move(init);
  for (auto& p : partials) acc = reduce(std::move(acc), std::move(p));
  return acc;
}

}  // namespace nfllab

#endif  // NFLLAB_PARALLEL_HPP
