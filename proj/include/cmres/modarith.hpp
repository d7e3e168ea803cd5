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

#ifndef CMRES_MODARITH_HPP
#define CMRES_MODARITH_HPP

// Word-size modular arithmetic. Moduli are below 2^63; products go through
// 128-bit intermediates.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmres {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

constexpr u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

constexpr u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

constexpr u64 negmod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

constexpr u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Least non-negative residue of a signed value.
constexpr u64 to_residue(i64 a, u64 m) {
  i128 r = static_cast<i128>(a) % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

constexpr u64 to_residue(i128 a, u64 m) {
  i128 r = a % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

/// Maps a residue in [0, m) to the symmetric range (-m/2, m/2].
constexpr i64 centered(u64 r, u64 m) {
  return r > m / 2 ? -static_cast<i64>(m - r) : static_cast<i64>(r);
}

/// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1.
inline u64 invmod(u64 a, u64 m) {
  i128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("invmod: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return to_residue(old_s, m);
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(u64 n, u64* root = nullptr) {
  u64 r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

/// Jacobi symbol (a/n) for odd n >= 1.
inline int jacobi(i64 a, u64 n) {
  if (n == 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + std::to_string(n));
  u64 x = to_residue(a, n);
  int sign = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      u64 r = n & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(x, n);
    if ((x & 3) == 3 && (n & 3) == 3) sign = -sign;
    x %= n;
  }
  return n == 1 ? sign : 0;
}

/// Square root of a modulo an odd prime p by Tonelli-Shanks. Returns the
/// smaller of the two roots, or nullopt when a is a non-residue. The
/// auxiliary non-residue is the smallest one, so results are reproducible.
inline std::optional<u64> sqrt_mod(i64 a, u64 p) {
  if (p < 3 || (p & 1) == 0) throw std::invalid_argument("sqrt_mod: p must be an odd prime");
  u64 x = to_residue(a, p);
  if (x == 0) return 0;
  if (jacobi(static_cast<i64>(x), p) != 1) return std::nullopt;
  u64 root;
  if ((p & 3) == 3) {
    root = powmod(x, (p + 1) >> 2, p);
  } else {
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (jacobi(static_cast<i64>(z), p) != -1) ++z;
    u64 c = powmod(z, q, p);
    u64 r = powmod(x, (q + 1) >> 1, p);
    u64 t = powmod(x, q, p);
    int m = s;
    while (t != 1) {
      int i = 0;
      u64 t2 = t;
      while (t2 != 1) {
        t2 = mulmod(t2, t2, p);
        ++i;
      }
      u64 b = c;
      for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
      r = mulmod(r, b, p);
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      m = i;
    }
    root = r;
  }
  return std::min(root, p - root);
}

/// Prime factorization by trial division, ascending primes.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// All positive divisors of n in ascending order.
inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [q, e] : factorize(n)) {
    std::size_t base = out.size();
    u64 pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw *= q;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 euler_phi(u64 n) {
  if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
  u64 phi = n;
  for (auto [q, e] : factorize(n)) phi = phi / q * (q - 1);
  return phi;
}

/// Least n dividing m with x^n == 1 mod p. Requires x^m == 1 mod p.
inline u64 order_dividing(u64 x, u64 m, u64 p) {
  if (m == 0) throw std::invalid_argument("order_dividing: m must be positive");
  x %= p;
  if (powmod(x, m, p) != 1 % p)
    throw std::invalid_argument("order_dividing: x^m != 1 (x=" + std::to_string(x) + ", m=" + std::to_string(m) +
                                ", p=" + std::to_string(p) + ")");
  u64 n = m;
  for (auto [q, e] : factorize(m)) {
    for (int k = 0; k < e && n % q == 0 && powmod(x, n / q, p) == 1 % p; ++k) n /= q;
  }
  return n;
}

/// Order of the m-th power residue symbol of x at a prime p == 1 mod m,
/// i.e. the multiplicative order of x^((p-1)/m). x must be a unit mod p.
inline u64 residue_symbol_order(u64 x, u64 m, u64 p) {
  if ((p - 1) % m != 0) throw std::invalid_argument("residue_symbol_order: p != 1 mod m");
  x %= p;
  if (x == 0) throw std::domain_error("residue_symbol_order: argument divisible by p");
  return order_dividing(powmod(x, (p - 1) / m, p), m, p);
}

}  // namespace cmres

#endif  // CMRES_MODARITH_HPP
