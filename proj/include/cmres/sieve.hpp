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

#ifndef CMRES_SIEVE_HPP
#define CMRES_SIEVE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cmres/modarith.hpp"

namespace cmres {

/// Half-open interval [lo, hi) of candidate primes.
struct PrimeRange {
  u64 lo = 0;
  u64 hi = 0;
  bool empty() const { return lo >= hi; }
};

namespace detail {

inline std::vector<u64> small_primes_upto(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace detail

/// Streams the primes of a range in ascending order, one segment at a time.
/// Each stream owns its buffers, so disjoint ranges can be walked from
/// different threads.
class PrimeStream {
 public:
  static constexpr u64 kSegment = u64{1} << 18;

  explicit PrimeStream(PrimeRange range) : range_(range), next_lo_(std::max<u64>(range.lo, 2)) {
    if (!range_.empty() && range_.hi > 2) base_ = detail::small_primes_upto(isqrt(range_.hi - 1));
  }

  std::optional<u64> next() {
    for (;;) {
      while (cursor_ < marks_.size()) {
        std::size_t i = cursor_++;
        if (marks_[i]) return seg_lo_ + i;
      }
      if (!fill()) return std::nullopt;
    }
  }

 private:
  bool fill() {
    marks_.clear();
    cursor_ = 0;
    if (next_lo_ >= range_.hi || exhausted_) return false;
    seg_lo_ = next_lo_;
    u64 len = std::min<u64>(kSegment, range_.hi - seg_lo_);
    u64 seg_hi = seg_lo_ + len;  // exclusive
    marks_.assign(len, 1);
    for (u64 q : base_) {
      if (q * q >= seg_hi) break;
      u64 start = (seg_lo_ + q - 1) / q * q;
      if (start < q * q) start = q * q;
      for (u64 j = start; j < seg_hi; j += q) {
        marks_[j - seg_lo_] = 0;
        if (j > std::numeric_limits<u64>::max() - q) break;
      }
    }
    if (seg_hi == range_.hi) exhausted_ = true;
    next_lo_ = seg_hi;
    return true;
  }

  PrimeRange range_;
  u64 next_lo_;
  u64 seg_lo_ = 0;
  std::size_t cursor_ = 0;
  bool exhausted_ = false;
  std::vector<u64> base_;
  std::vector<std::uint8_t> marks_;
};

/// Calls fn(p) for each prime p in the range, ascending.
template <typename Fn>
void for_each_prime(PrimeRange range, Fn&& fn) {
  PrimeStream stream(range);
  while (auto p = stream.next()) fn(*p);
}

inline std::vector<u64> primes_in_range(PrimeRange range) {
  std::vector<u64> out;
  for_each_prime(range, [&](u64 p) { out.push_back(p); });
  return out;
}

/// Splits [lo, hi) into consecutive chunks of at most `chunk` values.
inline std::vector<PrimeRange> partition_range(PrimeRange range, u64 chunk) {
  std::vector<PrimeRange> out;
  for (u64 lo = range.lo; lo < range.hi;) {
    u64 hi = (range.hi - lo > chunk) ? lo + chunk : range.hi;
    out.push_back({lo, hi});
    lo = hi;
  }
  return out;
}

}  // namespace cmres

#endif  // CMRES_SIEVE_HPP
