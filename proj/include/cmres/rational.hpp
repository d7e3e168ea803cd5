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

#ifndef CMRES_RATIONAL_HPP
#define CMRES_RATIONAL_HPP

#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cmres/errors.hpp"
#include "cmres/modarith.hpp"

namespace cmres {

namespace detail {

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in rational arithmetic");
  return r;
}

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in rational arithmetic");
  return r;
}

inline i64 ipow(i64 base, int e) {
  i64 r = 1;
  while (e-- > 0) r = checked_mul(r, base);
  return r;
}

}  // namespace detail

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(i64 num, i64 den = 1) : num_(num), den_(den) {  // NOLINT(google-explicit-constructor)
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    i64 g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  /// Parses "a" or "a/b" with optional leading sign.
  static Rational parse(std::string_view text) {
    auto parse_int = [&](std::string_view s, std::size_t offset) -> i64 {
      if (s.empty()) throw ParseError("expected an integer in '" + std::string(text) + "'", offset);
      std::size_t i = 0;
      bool neg = false;
      if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
      }
      if (i == s.size()) throw ParseError("expected digits in '" + std::string(text) + "'", offset + i);
      i64 v = 0;
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ParseError("unexpected character in '" + std::string(text) + "'", offset + i);
        v = detail::checked_add(detail::checked_mul(v, 10), s[i] - '0');
      }
      return neg ? -v : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, 0));
    i64 den = parse_int(text.substr(slash + 1), slash + 1);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
    return Rational(parse_int(text.substr(0, slash), 0), den);
  }

  constexpr i64 num() const { return num_; }
  constexpr i64 den() const { return den_; }
  constexpr bool is_integer() const { return den_ == 1; }
  constexpr bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    i64 g = std::gcd(a.den_, b.den_);
    return Rational(detail::checked_add(detail::checked_mul(a.num_, b.den_ / g), detail::checked_mul(b.num_, a.den_ / g)),
                    detail::checked_mul(a.den_, b.den_ / g));
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    i64 g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(detail::checked_mul(a.num_ / g1, b.num_ / g2), detail::checked_mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return a * Rational(b.den_, b.num_);
  }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  i64 num_ = 0;
  i64 den_ = 1;
};

/// Image of a rational number in F_p. Throws RamifiedInput if p divides
/// the numerator or the denominator.
inline u64 residue_of(const Rational& r, u64 p) {
  u64 num = to_residue(r.num(), p);
  u64 den = to_residue(r.den(), p);
  if (num == 0 || den == 0) throw RamifiedInput("rational " + r.str() + " is not a unit mod " + std::to_string(p));
  return den == 1 ? num : mulmod(num, invmod(den, p), p);
}

/// True when p divides the numerator or denominator.
inline bool divides_rational(u64 p, const Rational& r) {
  return to_residue(r.num(), p) == 0 || to_residue(r.den(), p) == 0;
}

/// The squarefree integer t' with t/t' a rational square.
inline i64 squarefree_part(const Rational& t) {
  if (t.is_zero()) throw std::invalid_argument("squarefree_part: zero has no squarefree part");
  i64 out = t.num() < 0 ? -1 : 1;
  auto absorb = [&](u64 n) {
    for (auto [q, e] : factorize(n))
      if (e & 1) out = detail::checked_mul(out, static_cast<i64>(q));
  };
  // num and den are coprime, so their odd-exponent primes never cancel.
  absorb(static_cast<u64>(std::llabs(t.num())));
  absorb(static_cast<u64>(t.den()));
  return out;
}

/// Integer t0 with t/t0 a k-th power and t0 k-th-power-free: each prime
/// exponent of a * b^(k-1) (t = a/b) is reduced mod k. The sign counts as
/// the prime -1 with exponent one.
inline i64 kfree_reduce(const Rational& t, int k) {
  if (t.is_zero()) throw std::invalid_argument("kfree_reduce: zero input");
  if (k < 1) throw std::invalid_argument("kfree_reduce: k must be positive");
  std::vector<std::pair<u64, int>> exps;
  for (auto [q, e] : factorize(static_cast<u64>(std::llabs(t.num())))) exps.emplace_back(q, e);
  for (auto [q, e] : factorize(static_cast<u64>(t.den()))) exps.emplace_back(q, e * (k - 1));
  i64 out = (t.num() < 0 && k > 1) ? -1 : 1;
  for (auto [q, e] : exps) out = detail::checked_mul(out, detail::ipow(static_cast<i64>(q), e % k));
  return out;
}

/// Whether t is a k-th power in Q^x.
inline bool is_rational_power(const Rational& t, int k) {
  i64 r = kfree_reduce(t, k);
  return r == 1 || (r == -1 && (k & 1));
}

}  // namespace cmres

#endif  // CMRES_RATIONAL_HPP
