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

#include <gtest/gtest.h>

#include <random>

#include "cmres/gaussian.hpp"
#include "cmres/sieve.hpp"

namespace cmres {
namespace {

GaussInt G(i64 a, i64 b) { return {a, b}; }

TEST(SplitPrime, Examples) {
  EXPECT_EQ(split_prime(13), G(3, 2));
  EXPECT_EQ(split_prime(5), G(-1, 2));
  EXPECT_EQ(split_prime(17), G(1, 4));
  EXPECT_THROW(split_prime(7), std::invalid_argument);
}

TEST(SplitPrime, PrimaryOfNormPWithPrimaryConjugate) {
  for (u64 p : primes_in_range({5, 200000})) {
    if (p % 4 != 1) continue;
    GaussInt pi = split_prime(p);
    ASSERT_EQ(pi.norm(), static_cast<i128>(p));
    EXPECT_TRUE(pi.is_primary());
    EXPECT_TRUE(pi.conj().is_primary());
    EXPECT_GT(pi.im, 0);
  }
}

TEST(SplitPrime, MatchesExhaustiveSearch) {
  for (u64 p : primes_in_range({5, 2000})) {
    if (p % 4 != 1) continue;
    std::vector<GaussInt> found;
    i64 r = static_cast<i64>(isqrt(p));
    for (i64 a = -r; a <= r; ++a)
      for (i64 b = 1; b <= r; ++b)
        if (G(a, b).norm() == static_cast<i128>(p) && G(a, b).is_primary()) found.push_back(G(a, b));
    ASSERT_EQ(found.size(), 1u) << p;
    EXPECT_EQ(split_prime(p), found[0]);
  }
}

TEST(PrimaryAssociate, Examples) {
  EXPECT_EQ(primary_associate(G(2, 1)), G(-1, 2));
  EXPECT_EQ(primary_associate(G(3, 2)), G(3, 2));
  EXPECT_EQ(primary_associate(G(1, 4)), G(1, 4));
  EXPECT_THROW(primary_associate(G(1, 1)), std::invalid_argument);
}

TEST(PrimaryAssociate, ExactlyOneUnitMultipleIsPrimary) {
  for (i64 a = -100; a <= 100; ++a)
    for (i64 b = -100; b <= 100; ++b) {
      GaussInt z = G(a, b);
      if (z.norm() >= 10000 || z.norm() % 2 == 0) continue;
      int count = 0;
      GaussInt w = z;
      for (int k = 0; k < 4; ++k, w = w.rotate()) count += w.is_primary();
      EXPECT_EQ(count, 1) << z;
      EXPECT_TRUE(primary_associate(z).is_primary());
    }
}

TEST(QuarticSymbol, Examples) {
  EXPECT_EQ(quartic_symbol(i64{2}, G(3, 2)).exponent, 3);
  EXPECT_EQ(quartic_symbol(i64{6}, G(3, 2)).exponent, 3);
  EXPECT_EQ(quartic_symbol(i64{1}, G(3, 2)).exponent, 0);
  EXPECT_THROW(quartic_symbol(i64{13}, G(3, 2)), RamifiedInput);
  EXPECT_THROW(quartic_symbol(G(3, 2), G(3, 2)), RamifiedInput);
}

TEST(QuarticSymbol, OrderEncoding) {
  for (int e = 0; e < 4; ++e) {
    QuarticSymbol s{e};
    EXPECT_EQ(s.order() == 1, e == 0);
    EXPECT_EQ(s.order() == 2, e == 2);
  }
}

TEST(QuarticSymbol, MultiplicativeAndPeriodic) {
  std::mt19937_64 rng(7);
  auto ps = primes_in_range({5, 5000});
  for (int k = 0; k < 5000; ++k) {
    u64 p = ps[rng() % ps.size()];
    if (p % 4 != 1) continue;
    GaussInt pi = split_prime(p);
    i64 x = static_cast<i64>(rng() % 100000) - 50000, y = static_cast<i64>(rng() % 100000) - 50000;
    if (x % static_cast<i64>(p) == 0 || y % static_cast<i64>(p) == 0) continue;
    EXPECT_EQ(quartic_symbol(x * y, pi), quartic_symbol(x, pi) * quartic_symbol(y, pi));
    EXPECT_EQ(quartic_symbol(x + static_cast<i64>(p) * 17, pi), quartic_symbol(x, pi));
  }
}

TEST(QuarticSymbol, GaussianArgumentAgreesWithRational) {
  GaussInt pi = G(3, 2);
  for (i64 x = 1; x < 13; ++x) EXPECT_EQ(quartic_symbol(G(x, 0), pi), quartic_symbol(x, pi));
  // i maps to the image of i, so (i/pi)_4 = i^((p-1)/4).
  EXPECT_EQ(quartic_symbol(G(0, 1), pi).exponent, 3);
}

TEST(OddDivisorSymbol, Examples) {
  EXPECT_EQ(odd_divisor_quartic_symbol(3, G(3, 2)).exponent, 0);
  EXPECT_EQ(odd_divisor_quartic_symbol(5, G(5, -4)).exponent, 2);
  EXPECT_EQ(odd_divisor_quartic_symbol(7, G(7, 2)).exponent, 2);
  EXPECT_THROW(odd_divisor_quartic_symbol(5, G(3, 2)), std::invalid_argument);
  EXPECT_THROW(odd_divisor_quartic_symbol(3, G(2, 3)), std::invalid_argument);
}

TEST(TwoSymbol, Examples) {
  EXPECT_EQ(two_quartic_symbol(G(3, 2)).str(), "-i");
  EXPECT_EQ(two_quartic_symbol(G(1, 4)).str(), "-1");
  EXPECT_EQ(two_quartic_symbol(G(5, -4)).str(), "-1");
  EXPECT_THROW(two_quartic_symbol(G(2, 1)), std::invalid_argument);
}

TEST(ClosedForms, AgreeWithEulerCriterionBelowMillion) {
  for (u64 p : primes_in_range({5, 1000000})) {
    if (p % 4 != 1) continue;
    GaussInt pi = split_prime(p);
    for (GaussInt z : {pi, pi.conj()}) {
      ASSERT_EQ(two_quartic_symbol(z), quartic_symbol(i64{2}, z)) << z;
      for (auto [ell, e] : factorize(static_cast<u64>(std::abs(z.re)))) {
        (void)e;
        if (ell == 2) continue;
        ASSERT_EQ(odd_divisor_quartic_symbol(ell, z), quartic_symbol(static_cast<i64>(ell), z)) << ell << " " << z;
      }
    }
  }
}

TEST(ApQuarticSymbol, Examples) {
  EXPECT_EQ(ap_quartic_symbol(G(3, 2), 1).str(), "-i");
  EXPECT_EQ(ap_quartic_symbol(G(5, -4), 1).str(), "1");
  EXPECT_EQ(ap_quartic_symbol(G(-1, 2), 1).str(), "i");
  // the right-hand sides: a_13 = 6, a_41 = 10, a_5 = -2 for y^2 = x^3 - x
  EXPECT_EQ(quartic_symbol(i64{6}, G(3, 2)).str(), "-i");
  EXPECT_EQ(quartic_symbol(i64{10}, G(5, -4)).str(), "1");
  EXPECT_EQ(quartic_symbol(i64{-2}, G(-1, 2)).str(), "i");
  EXPECT_THROW(ap_quartic_symbol(G(3, 2), 13), RamifiedInput);
}

TEST(G8Class, Examples) {
  EXPECT_EQ(g8_class(17), G8Class::OnePlus4i);
  EXPECT_EQ(g8_class(73), G8Class::Five);
  EXPECT_EQ(g8_class(113), G8Class::One);
  EXPECT_THROW(g8_class(13), std::invalid_argument);
}

TEST(G8Class, ConjugationInvariantAndAllClassesOccur) {
  std::map<G8Class, int> seen;
  for (u64 p : primes_in_range({17, 1000000})) {
    if (p % 8 != 1) continue;
    GaussInt pi = split_prime(p);
    ASSERT_EQ(detail::g8_of(pi), detail::g8_of(pi.conj())) << p;
    ++seen[g8_class(p)];
  }
  EXPECT_EQ(seen.size(), 4u);
}

}  // namespace
}  // namespace cmres
