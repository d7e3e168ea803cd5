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

#ifndef CMRES_CORNACCHIA_HPP
#define CMRES_CORNACCHIA_HPP

#include <optional>
#include <stdexcept>
#include <utility>

#include "cmres/modarith.hpp"

namespace cmres {

/// Solves 4p = u^2 + |disc| v^2 with u, v >= 0 for an odd prime p and a
/// negative discriminant disc == 0, 1 mod 4 (modified Cornacchia).
/// Returns nullopt when p is not a norm from the order of discriminant disc.
inline std::optional<std::pair<u64, u64>> cornacchia4(i64 disc, u64 p) {
  if (disc >= 0 || (((disc % 4) + 4) % 4 > 1)) throw std::invalid_argument("cornacchia4: disc must be negative and 0,1 mod 4");
  if (p < 3 || p > (u64{1} << 61)) throw std::invalid_argument("cornacchia4: p out of range");
  u64 absd = static_cast<u64>(-disc);
  auto root = sqrt_mod(disc, p);
  if (!root) return std::nullopt;
  u64 x0 = *root;
  if ((x0 & 1) != (absd & 1)) x0 = p - x0;
  u64 a = 2 * p, b = x0;
  u64 l = isqrt(4 * p);
  while (b > l) {
    u64 r = a % b;
    a = b;
    b = r;
  }
  u64 rest = 4 * p - b * b;
  if (rest % absd != 0) return std::nullopt;
  u64 v;
  if (!is_square(rest / absd, &v)) return std::nullopt;
  return std::make_pair(b, v);
}

}  // namespace cmres

#endif  // CMRES_CORNACCHIA_HPP
