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

#include "cmres/cm.hpp"
#include "cmres/eisenstein.hpp"
#include "cmres/sieve.hpp"

namespace cmres {
namespace {

TEST(SplitPrimeEis, NormAndNormalForm) {
  for (auto norm : {EisNormalization::PlusOneMod3, EisNormalization::MinusOneMod3})
    for (u64 p : primes_in_range({7, 100000})) {
      if (p % 3 != 1) continue;
      EisInt pi = split_prime_eis(p, norm);
      ASSERT_EQ(pi.norm(), static_cast<i128>(p));
      EXPECT_EQ(((pi.b % 3) + 3) % 3, 0);
      EXPECT_EQ(((pi.a % 3) + 3) % 3, norm == EisNormalization::PlusOneMod3 ? 1 : 2);
      EXPECT_GT(pi.b, 0);
    }
  EXPECT_EQ(split_prime_eis(7).norm(), 7);
  EXPECT_EQ(split_prime_eis(13).norm(), 13);
  EXPECT_THROW(split_prime_eis(5), std::invalid_argument);
}

TEST(CubicSymbol, Examples) {
  EisInt pi{3, 1};  // norm 7, image of w is -3
  EXPECT_EQ(cubic_symbol(i64{2}, pi).exponent, 1);
  EXPECT_EQ(cubic_symbol(i64{1}, pi).exponent, 0);
  EXPECT_EQ(cubic_symbol(i64{8}, pi).exponent, 0);
  EXPECT_THROW(cubic_symbol(i64{14}, pi), RamifiedInput);
}

TEST(CubicSymbol, MultiplicativeAndTrivialOnCubes) {
  for (u64 p : primes_in_range({7, 3000})) {
    if (p % 3 != 1) continue;
    EisInt pi = split_prime_eis(p);
    for (i64 x = 1; x < 40; ++x)
      for (i64 y = 1; y < 40; y += 5) {
        if (x % static_cast<i64>(p) == 0 || y % static_cast<i64>(p) == 0) continue;
        EXPECT_EQ(cubic_symbol(x * y, pi), cubic_symbol(x, pi) * cubic_symbol(y, pi));
        EXPECT_EQ(cubic_symbol(x * x * x, pi).exponent, 0);
      }
  }
}

TEST(CubicSymbol, OrderIndependentOfDivisor) {
  for (u64 p : primes_in_range({7, 100000})) {
    if (p % 3 != 1) continue;
    EisInt pi = split_prime_eis(p);
    std::vector<EisInt> divisors_of_p;
    EisInt z = pi;
    for (int k = 0; k < 3; ++k, z = z.rotate()) {
      divisors_of_p.push_back(z);
      divisors_of_p.push_back(-z);
      divisors_of_p.push_back(z.conj());
    }
    for (i64 x : {2, 3, 5, 6, 10}) {
      if (x % static_cast<i64>(p) == 0) continue;
      int order = cubic_symbol(x, pi).order();
      for (EisInt q : divisors_of_p) ASSERT_EQ(cubic_symbol(x, q).order(), order) << p << " " << q;
    }
  }
}

// Calibration of the normal form: (a_p/pi)_3 for y^2 = x^3 + 16t equals 1,
// (t/pi)_3^2, (t/pi)_3 on p == 1, 4, 7 mod 9. Count violations for each
// normal form and for the formula with the 4 and 7 rows swapped.
struct CubicCount {
  int plain = 0;
  int swapped = 0;
};

CubicCount count_cubic_violations(EisNormalization norm) {
  CmFamily family;
  CubicCount c;
  for (i64 t : {2, 3, 5}) {
    CurveSpec spec(-3, t);
    for (u64 p : primes_in_range({7, 10000})) {
      if (p % 3 != 1 || spec.excluded(p)) continue;
      ApRecord rec = family.ap(spec, p);
      if (rec.kind != ReductionKind::Ordinary) continue;
      EisInt pi = split_prime_eis(p, norm);
      CubicSymbol got = cubic_symbol(rec.ap, pi), tw = cubic_symbol(t, pi);
      CubicSymbol want = p % 9 == 1 ? CubicSymbol{} : p % 9 == 4 ? tw * tw : tw;
      CubicSymbol swap = p % 9 == 1 ? CubicSymbol{} : p % 9 == 7 ? tw * tw : tw;
      c.plain += !(got == want);
      c.swapped += !(got == swap);
    }
  }
  return c;
}

TEST(CubicCalibration, CalibratedFormHasNoViolations) {
  CubicCount calibrated = count_cubic_violations(kCalibratedNormalization);
  EXPECT_EQ(calibrated.plain, 0);
  EXPECT_GT(calibrated.swapped, 0);
}

TEST(CubicCalibration, BothNormalFormsAgreeSinceTheFormulaIsConjugationStable) {
  EXPECT_EQ(count_cubic_violations(EisNormalization::PlusOneMod3).plain, 0);
  EXPECT_EQ(count_cubic_violations(EisNormalization::MinusOneMod3).plain, 0);
}

}  // namespace
}  // namespace cmres
