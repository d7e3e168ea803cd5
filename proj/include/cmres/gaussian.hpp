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

#ifndef CMRES_GAUSSIAN_HPP
#define CMRES_GAUSSIAN_HPP

// Arithmetic in Z[i]: primary divisors of split primes, quartic residue
// symbols evaluated in F_p, and closed forms for the quartic character of
// rational primes, of 2 and of the CM trace.

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cmres/errors.hpp"
#include "cmres/modarith.hpp"
#include "cmres/rational.hpp"

namespace cmres {

struct GaussInt {
  i64 re = 0;
  i64 im = 0;

  constexpr GaussInt conj() const { return {re, -im}; }
  constexpr i128 norm() const { return static_cast<i128>(re) * re + static_cast<i128>(im) * im; }
  /// Multiplication by i.
  constexpr GaussInt rotate() const { return {-im, re}; }

  /// a + bi == 1 mod (2+2i): a odd, b even, a + b == 1 mod 4.
  constexpr bool is_primary() const {
    return (re & 1) == 1 && (im & 1) == 0 && (((re + im) % 4) + 4) % 4 == 1;
  }

  friend constexpr GaussInt operator+(GaussInt x, GaussInt y) { return {x.re + y.re, x.im + y.im}; }
  friend constexpr GaussInt operator-(GaussInt x, GaussInt y) { return {x.re - y.re, x.im - y.im}; }
  friend constexpr GaussInt operator-(GaussInt x) { return {-x.re, -x.im}; }
  friend constexpr GaussInt operator*(GaussInt x, GaussInt y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend constexpr bool operator==(GaussInt, GaussInt) = default;
  friend std::ostream& operator<<(std::ostream& os, GaussInt z) {
    os << z.re << (z.im < 0 ? "-" : "+") << (z.im < 0 ? -z.im : z.im) << "i";
    return os;
  }
};

/// Value i^exponent of a quartic residue symbol.
struct QuarticSymbol {
  int exponent = 0;  // 0..3

  static constexpr QuarticSymbol from_exponent(i64 e) { return {static_cast<int>(((e % 4) + 4) % 4)}; }
  constexpr int order() const { return exponent == 0 ? 1 : exponent == 2 ? 2 : 4; }
  constexpr GaussInt value() const {
    constexpr std::array<GaussInt, 4> units{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    return units[exponent];
  }
  friend constexpr QuarticSymbol operator*(QuarticSymbol a, QuarticSymbol b) {
    return from_exponent(a.exponent + b.exponent);
  }
  constexpr QuarticSymbol pow(u64 e) const { return from_exponent(static_cast<i64>((exponent * (e % 4)) % 4)); }
  friend constexpr bool operator==(QuarticSymbol, QuarticSymbol) = default;

  std::string str() const {
    constexpr std::array<const char*, 4> names{"1", "i", "-1", "-i"};
    return names[exponent];
  }
};

/// The unique primary element among {a, ia, -a, -ia}; a must have odd norm.
inline GaussInt primary_associate(GaussInt a) {
  if ((a.norm() & 1) == 0) throw std::invalid_argument("primary_associate: element has even norm");
  for (int k = 0; k < 4; ++k, a = a.rotate())
    if (a.is_primary()) return a;
  throw std::logic_error("primary_associate: no primary associate found");
}

/// Primary a+bi with b > 0 and a^2 + b^2 = p, for a prime p == 1 mod 4.
inline GaussInt split_prime(u64 p) {
  if (p % 4 != 1) throw std::invalid_argument("split_prime: " + std::to_string(p) + " is not 1 mod 4");
  auto r = sqrt_mod(-1, p);
  if (!r) throw std::invalid_argument("split_prime: -1 is not a square mod " + std::to_string(p));
  // Euclid on (p, sqrt(-1)) stops at the first remainder below sqrt(p).
  u64 a = p, b = *r;
  while (static_cast<u128>(b) * b > p) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  u64 c;
  if (!is_square(p - b * b, &c)) throw std::invalid_argument("split_prime: " + std::to_string(p) + " is not prime");
  GaussInt pi = primary_associate({static_cast<i64>(b), static_cast<i64>(c)});
  return pi.im > 0 ? pi : pi.conj();
}

namespace detail {

struct QuarticResidueField {
  u64 p;
  u64 i_image;  // root of x^2 + 1 with a + b * i_image == 0 mod p
};

inline QuarticResidueField residue_field(GaussInt pi) {
  i128 n = pi.norm();
  if (n <= 2 || n > static_cast<i128>(u64{1} << 62))
    throw std::invalid_argument("quartic symbol: modulus norm out of range");
  u64 p = static_cast<u64>(n);
  if (p % 4 != 1) throw std::invalid_argument("quartic symbol: modulus norm is not 1 mod 4");
  u64 a = to_residue(pi.re, p), b = to_residue(pi.im, p);
  u64 r = mulmod(negmod(a, p), invmod(b, p), p);
  return {p, r};
}

inline QuarticSymbol match_unit(u64 v, const QuarticResidueField& f) {
  if (v == 1) return {0};
  if (v == f.i_image) return {1};
  if (v == f.p - 1) return {2};
  if (v == f.p - f.i_image) return {3};
  throw std::logic_error("quartic symbol: power is not a fourth root of unity (is the norm prime?)");
}

}  // namespace detail

/// (x/pi)_4 for a residue x in F_p, p = N(pi) prime. Evaluated in
/// Z[i]/(pi) = F_p: x^((p-1)/4) is matched against the images of 1, i, -1, -i.
inline QuarticSymbol quartic_symbol_residue(u64 x, GaussInt pi) {
  auto f = detail::residue_field(pi);
  x %= f.p;
  if (x == 0) throw RamifiedInput("quartic symbol: argument divisible by the modulus");
  return detail::match_unit(powmod(x, (f.p - 1) / 4, f.p), f);
}

inline QuarticSymbol quartic_symbol(i64 x, GaussInt pi) {
  auto f = detail::residue_field(pi);
  return quartic_symbol_residue(to_residue(x, f.p), pi);
}

inline QuarticSymbol quartic_symbol(const Rational& x, GaussInt pi) {
  auto f = detail::residue_field(pi);
  u64 num = to_residue(x.num(), f.p), den = to_residue(x.den(), f.p);
  if (num == 0 || den == 0) throw RamifiedInput("quartic symbol: argument not coprime to the modulus");
  return quartic_symbol_residue(mulmod(num, invmod(den, f.p), f.p), pi);
}

inline QuarticSymbol quartic_symbol(GaussInt alpha, GaussInt pi) {
  auto f = detail::residue_field(pi);
  u64 x = addmod(to_residue(alpha.re, f.p), mulmod(to_residue(alpha.im, f.p), f.i_image, f.p), f.p);
  if (x == 0) throw RamifiedInput("quartic symbol: argument divisible by the modulus");
  return detail::match_unit(powmod(x, (f.p - 1) / 4, f.p), f);
}

/// (l/pi)_4 for an odd prime l dividing re(pi), pi primary of prime norm p:
/// (-1)^(((l-1)/2)((p-1)/4)) * (2/l).
inline QuarticSymbol odd_divisor_quartic_symbol(u64 ell, GaussInt pi) {
  if (!pi.is_primary()) throw std::invalid_argument("odd_divisor_quartic_symbol: modulus is not primary");
  if (ell < 3 || (ell & 1) == 0 || pi.re % static_cast<i64>(ell) != 0)
    throw std::invalid_argument("odd_divisor_quartic_symbol: " + std::to_string(ell) + " is not an odd divisor of re(pi)");
  u64 p = static_cast<u64>(pi.norm());
  u64 parity = (((ell - 1) / 2) & 1) * ((((p - 1) / 4)) & 1);
  int two = jacobi(2, ell);
  int sign = (parity ? -1 : 1) * two;
  return {sign == 1 ? 0 : 2};
}

/// (2/pi)_4 = (-i)^(b/2) for primary pi = a + bi.
inline QuarticSymbol two_quartic_symbol(GaussInt pi) {
  if (!pi.is_primary()) throw std::invalid_argument("two_quartic_symbol: modulus is not primary");
  return QuarticSymbol::from_exponent(-(pi.im / 2));
}

/// Closed form of (a_p/pi)_4 for y^2 = x^3 - t x at pi = a + bi primary of
/// prime norm p coprime to t:
///   i^((a-1)/2) * (-1)^((b^2+2b)/8) * (t/pi)_4^((p-1)/4).
inline QuarticSymbol ap_quartic_symbol(GaussInt pi, const Rational& t) {
  if (!pi.is_primary()) throw std::invalid_argument("ap_quartic_symbol: modulus is not primary");
  u64 p = static_cast<u64>(pi.norm());
  i64 c = pi.im / 2;  // b = 2c, (b^2 + 2b)/8 = c(c+1)/2
  i64 tri = c * (c + 1) / 2;
  i64 e = (pi.re - 1) / 2 + ((tri & 1) ? 2 : 0);
  QuarticSymbol twist = quartic_symbol(t, pi).pow((p - 1) / 4);
  return QuarticSymbol::from_exponent(e) * twist;
}

enum class G8Class { One, OnePlus4i, Five, FivePlus4i };

inline const char* to_string(G8Class c) {
  switch (c) {
    case G8Class::One: return "1";
    case G8Class::OnePlus4i: return "1+4i";
    case G8Class::Five: return "5";
    case G8Class::FivePlus4i: return "5+4i";
  }
  return "?";
}

namespace detail {

inline G8Class g8_of(GaussInt pi) {
  i64 a = ((pi.re % 8) + 8) % 8, b = ((pi.im % 8) + 8) % 8;
  if (a == 1 && b == 0) return G8Class::One;
  if (a == 1 && b == 4) return G8Class::OnePlus4i;
  if (a == 5 && b == 0) return G8Class::Five;
  if (a == 5 && b == 4) return G8Class::FivePlus4i;
  throw std::logic_error("g8_class: primary divisor outside the four classes");
}

}  // namespace detail

/// Class mod 8 of the primary divisors of a prime p == 1 mod 8.
inline G8Class g8_class(u64 p) {
  if (p % 8 != 1) throw std::invalid_argument("g8_class: " + std::to_string(p) + " is not 1 mod 8");
  GaussInt pi = split_prime(p);
  G8Class c = detail::g8_of(pi);
  if (detail::g8_of(pi.conj()) != c) throw std::logic_error("g8_class: conjugate divisors disagree");
  return c;
}

}  // namespace cmres

#endif  // CMRES_GAUSSIAN_HPP
