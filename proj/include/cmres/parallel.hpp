// Copyright 2026 The cmres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CMRES_PARALLEL_HPP
#define CMRES_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "cmres/sieve.hpp"

namespace cmres {

/// Default chunk width for range-partitioned work. Fixed so that the chunk
/// boundaries, and hence every merge order, do not depend on the worker count.
inline constexpr u64 kDefaultChunk = u64{1} << 20;

/// Applies f to every chunk on up to `workers` threads and returns the
/// results in chunk order. If any call throws, the exception of the
/// lowest-indexed failing chunk is rethrown after all threads finish.
template <typename R, typename F>
std::vector<R> map_chunks(const std::vector<PrimeRange>& chunks, unsigned workers, F&& f) {
  std::vector<R> results(chunks.size());
  std::vector<std::exception_ptr> errors(chunks.size());
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < chunks.size();) {
      try {
        results[i] = f(chunks[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(chunks.size())));
  if (n == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace cmres

#endif  // CMRES_PARALLEL_HPP
