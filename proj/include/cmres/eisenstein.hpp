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

#ifndef CMRES_EISENSTEIN_HPP
#define CMRES_EISENSTEIN_HPP

// Arithmetic in Z[w], w^2 + w + 1 = 0: divisors of primes p == 1 mod 3 and
// cubic residue symbols of rational integers.

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cmres/cornacchia.hpp"
#include "cmres/errors.hpp"
#include "cmres/modarith.hpp"
#include "cmres/rational.hpp"

namespace cmres {

/// a + b*w.
struct EisInt {
  i64 a = 0;
  i64 b = 0;

  constexpr i128 norm() const { return static_cast<i128>(a) * a - static_cast<i128>(a) * b + static_cast<i128>(b) * b; }
  /// Complex conjugate: a + b*w^2 = (a - b) - b*w.
  constexpr EisInt conj() const { return {a - b, -b}; }
  /// Multiplication by w.
  constexpr EisInt rotate() const { return {-b, a - b}; }

  friend constexpr EisInt operator+(EisInt x, EisInt y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr EisInt operator-(EisInt x) { return {-x.a, -x.b}; }
  friend constexpr EisInt operator*(EisInt x, EisInt y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }
  friend constexpr bool operator==(EisInt, EisInt) = default;
  friend std::ostream& operator<<(std::ostream& os, EisInt z) {
    return os << z.a << (z.b < 0 ? "-" : "+") << (z.b < 0 ? -z.b : z.b) << "w";
  }
};

/// Value w^exponent of a cubic residue symbol.
struct CubicSymbol {
  int exponent = 0;  // 0..2

  static constexpr CubicSymbol from_exponent(i64 e) { return {static_cast<int>(((e % 3) + 3) % 3)}; }
  constexpr int order() const { return exponent == 0 ? 1 : 3; }
  friend constexpr CubicSymbol operator*(CubicSymbol x, CubicSymbol y) { return from_exponent(x.exponent + y.exponent); }
  constexpr CubicSymbol pow(u64 e) const { return from_exponent(static_cast<i64>((exponent * (e % 3)) % 3)); }
  friend constexpr bool operator==(CubicSymbol, CubicSymbol) = default;
  std::string str() const {
    constexpr std::array<const char*, 3> names{"1", "w", "w^2"};
    return names[exponent];
  }
};

/// Normal forms for a divisor of p in Z[w]: the associate congruent to +1
/// or to -1 mod 3, then the one of pi, conj(pi) with positive w-coefficient.
enum class EisNormalization { PlusOneMod3, MinusOneMod3 };

/// Fixed by checking the cubic trace formula for y^2 = x^3 + 16t against
/// both normal forms (tests/eisenstein_test.cpp). Both agree, since the
/// relation is stable under conjugation; pi == -1 mod 3 is kept.
inline constexpr EisNormalization kCalibratedNormalization = EisNormalization::MinusOneMod3;

inline EisInt normalize_eis(EisInt z, EisNormalization norm) {
  i64 want = norm == EisNormalization::PlusOneMod3 ? 1 : 2;
  for (int k = 0; k < 6; ++k) {
    if (((z.b % 3) + 3) % 3 == 0 && ((z.a % 3) + 3) % 3 == want) return z.b > 0 ? z : z.conj();
    z = (k == 2) ? -z.rotate() : z.rotate();  // walks w, w^2, -1, -w, -w^2
  }
  throw std::invalid_argument("normalize_eis: element has norm divisible by 3");
}

/// A divisor of norm p of a prime p == 1 mod 3, in the given normal form.
inline EisInt split_prime_eis(u64 p, EisNormalization norm = kCalibratedNormalization) {
  if (p % 3 != 1) throw std::invalid_argument("split_prime_eis: " + std::to_string(p) + " is not 1 mod 3");
  auto sol = cornacchia4(-3, p);
  if (!sol) throw std::invalid_argument("split_prime_eis: " + std::to_string(p) + " is not prime");
  auto [l, m] = *sol;  // 4p = l^2 + 3m^2; (l + m)/2 + m*w has norm p
  EisInt pi{static_cast<i64>((l + m) / 2), static_cast<i64>(m)};
  return normalize_eis(pi, norm);
}

namespace detail {

struct CubicResidueField {
  u64 p;
  u64 w_image;  // root of s^2 + s + 1 with a + b*s == 0 mod p
};

inline CubicResidueField residue_field(EisInt pi) {
  i128 n = pi.norm();
  if (n <= 3 || n > static_cast<i128>(u64{1} << 62)) throw std::invalid_argument("cubic symbol: modulus norm out of range");
  u64 p = static_cast<u64>(n);
  if (p % 3 != 1) throw std::invalid_argument("cubic symbol: modulus norm is not 1 mod 3");
  u64 s = mulmod(negmod(to_residue(pi.a, p), p), invmod(to_residue(pi.b, p), p), p);
  if (addmod(addmod(mulmod(s, s, p), s, p), 1, p) != 0) throw std::invalid_argument("cubic symbol: modulus norm is not prime");
  return {p, s};
}

}  // namespace detail

/// (x/pi)_3 for a residue x of F_p, evaluated in Z[w]/(pi) = F_p.
inline CubicSymbol cubic_symbol_residue(u64 x, EisInt pi) {
  auto f = detail::residue_field(pi);
  x %= f.p;
  if (x == 0) throw RamifiedInput("cubic symbol: argument divisible by the modulus");
  u64 v = powmod(x, (f.p - 1) / 3, f.p);
  if (v == 1) return {0};
  if (v == f.w_image) return {1};
  if (v == mulmod(f.w_image, f.w_image, f.p)) return {2};
  throw std::logic_error("cubic symbol: power is not a cube root of unity");
}

inline CubicSymbol cubic_symbol(i64 x, EisInt pi) {
  auto f = detail::residue_field(pi);
  return cubic_symbol_residue(to_residue(x, f.p), pi);
}

inline CubicSymbol cubic_symbol(const Rational& x, EisInt pi) {
  auto f = detail::residue_field(pi);
  return cubic_symbol_residue(residue_of(x, f.p), pi);
}

}  // namespace cmres

#endif  // CMRES_EISENSTEIN_HPP
