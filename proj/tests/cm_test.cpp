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

#include <sstream>

#include "cmres/cm.hpp"
#include "cmres/sieve.hpp"

namespace cmres {
namespace {

const CmFamily& family() {
  static const CmFamily f;
  return f;
}

TEST(Ap, Examples) {
  EXPECT_EQ(family().ap(CurveSpec(-4, 1), 5).ap, -2);
  EXPECT_EQ(family().ap(CurveSpec(-4, 1), 13).ap, 6);
  EXPECT_EQ(family().ap(CurveSpec(-3, 1), 7).ap, -1);
  EXPECT_EQ(family().ap(CurveSpec(-4, 1), 7).kind, ReductionKind::Supersingular);
  EXPECT_EQ(family().ap(CurveSpec(-3, 1), 11).kind, ReductionKind::Supersingular);
  EXPECT_EQ(family().ap(CurveSpec(-4, 5), 5).kind, ReductionKind::Bad);
  EXPECT_EQ(family().ap(CurveSpec(-7, 1), 7).kind, ReductionKind::Bad);
  EXPECT_EQ(jacobi(-7, 3), -1);  // 3 is inert in Q(sqrt(-7)), below the scan range
  EXPECT_THROW(family().ap(CurveSpec(-4, 1), 3), std::invalid_argument);
}

TEST(Ap, OrderExamples) {
  // a_13(E^-4_1) = 6, and 6 has quartic order 4 mod 13.
  EXPECT_EQ(CmFamily::ap_order(family().ap(CurveSpec(-4, 1), 13), 4), 4u);
  // a_5 = -2 = 3 mod 5, a generator.
  EXPECT_EQ(CmFamily::ap_order(family().ap(CurveSpec(-4, 1), 5), 4), 4u);
  EXPECT_EQ(CmFamily::ap_order(family().ap(CurveSpec(-4, 1), 5), 2), 2u);
  EXPECT_THROW(CmFamily::ap_order(family().ap(CurveSpec(-4, 1), 7), 2), std::invalid_argument);
  EXPECT_THROW(CmFamily::ap_order(family().ap(CurveSpec(-4, 1), 13), 5), std::invalid_argument);
}

TEST(CurveSpec, Validation) {
  EXPECT_THROW(CurveSpec(-5, 1), std::invalid_argument);
  EXPECT_THROW(CurveSpec(-4, 0), std::invalid_argument);
  CurveSpec s(-4, Rational(48, 1));
  EXPECT_EQ(s.t_reduced(), 3);
  EXPECT_EQ(s.t_squarefree(), 3);
  EXPECT_TRUE(s.excluded(3));
  EXPECT_TRUE(CurveSpec(-7, Rational(1, 5)).excluded(5));
  EXPECT_TRUE(CurveSpec(-11, 1).excluded(11));
  EXPECT_FALSE(CurveSpec(-11, 1).excluded(13));
  EXPECT_EQ(CurveSpec(-8, Rational(-3, 2)).label(), "E^-8_-3/2");
}

TEST(CurveTable, DataFileMatchesBuiltIn) {
  EXPECT_EQ(load_curve_table(std::string(CMRES_DATA_DIR) + "/cm_curves.txt").size(), 9u);
  auto file = load_curve_table(std::string(CMRES_DATA_DIR) + "/cm_curves.txt");
  auto builtin = default_curve_table();
  for (int d : kDiscriminants) EXPECT_EQ(file.at(d).eq, builtin.at(d).eq) << d;
}

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_curve_table(in);
  } catch (const ParseError& e) {
    return e.position();
  }
  return 0;
}

TEST(CurveTable, ParseErrors) {
  std::string full = kDefaultCurveTable;
  std::string without163 = full.substr(0, full.find("-163"));
  EXPECT_GT(parse_error_line(without163), 0u);
  EXPECT_EQ(parse_error_line("-3 0 0 0 0\n"), 1u);
  EXPECT_EQ(parse_error_line("# c\n-5 0 0 0 0 1\n"), 2u);
  EXPECT_EQ(parse_error_line("-3 0 0 0 1 16\n"), 1u);
  EXPECT_EQ(parse_error_line("-4 0 0 0 -1 1\n"), 1u);
  EXPECT_EQ(parse_error_line("-3 0 0 0 0 16 x\n"), 1u);
  EXPECT_EQ(parse_error_line("-3 0 0 0 0 16\n-3 0 0 0 0 16\n"), 2u);
  EXPECT_EQ(parse_error_line("x\n"), 1u);
  EXPECT_THROW(load_curve_table("/nonexistent/table.txt"), std::runtime_error);
}

TEST(CurveTable, FamilyRequiresEveryRow) {
  CurveTable t = default_curve_table();
  t.erase(-19);
  EXPECT_THROW(CmFamily{t}, std::invalid_argument);
}

// The fast trace agrees with point counting on a grid of curves.
TEST(Ap, MatchesPointCount) {
  const std::vector<Rational> twists{1, 2, -2, 3, -1, 6, Rational(1, 2), Rational(-5, 3)};
  for (int d : kDiscriminants)
    for (const Rational& t : twists) {
      CurveSpec spec(d, t);
      for (u64 p : primes_in_range({5, 3000})) {
        if (spec.excluded(p)) continue;
        ApRecord rec = family().ap(spec, p);
        if (rec.kind == ReductionKind::Bad) continue;
        ASSERT_EQ(rec.ap, family().ap_naive(spec, p)) << spec.label() << " p=" << p;
      }
    }
}

TEST(Ap, QuarticTwistInvariance) {
  for (i64 t : {1, 2, 3, -5})
    for (i64 u = 2; u <= 10; ++u)
      for (u64 p : primes_in_range({5, 2000})) {
        if (static_cast<i64>(p) <= u || t % static_cast<i64>(p) == 0 || u % static_cast<i64>(p) == 0) continue;
        WeierstrassEquation eq{0, 0, 0, -t * u * u * u * u, 0};
        ASSERT_EQ(ap_naive(eq, p), family().ap(CurveSpec(-4, t), p).ap) << t << " " << u << " " << p;
      }
}

TEST(Ap, QuadraticTwistLaw) {
  for (int d : {-7, -8, -11, -19, -43, -67, -163})
    for (i64 t : {2, -1, 3, -6, 5}) {
      CurveSpec base(d, 1), twisted(d, t);
      for (u64 p : primes_in_range({5, 100000})) {
        if (twisted.excluded(p) || base.excluded(p)) continue;
        ApRecord b = family().ap(base, p), r = family().ap(twisted, p);
        if (b.kind == ReductionKind::Bad) continue;
        ASSERT_EQ(r.ap, jacobi(t, p) * b.ap) << d << " " << t << " " << p;
      }
    }
}

TEST(Ap, SupersingularExactlyAtInertPrimes) {
  for (int d : kDiscriminants)
    for (i64 t : {1, 2, 3}) {
      CurveSpec spec(d, t);
      for (u64 p : primes_in_range({5, 20000})) {
        if (spec.excluded(p)) continue;
        ApRecord rec = family().ap(spec, p);
        if (rec.kind == ReductionKind::Bad) continue;
        bool inert = jacobi(d, p) == -1;
        ASSERT_EQ(rec.kind == ReductionKind::Supersingular, inert) << d << " " << p;
        if (inert) {
          ASSERT_EQ(family().ap_naive(spec, p), 0);
        }
      }
    }
}

TEST(Ap, HasseBoundAndSeedIndependence) {
  CmFamily other(default_curve_table(), ApOptions{20000, 0xABCDEF, 32});
  for (int d : {-3, -7, -43})
    for (i64 t : {1, 5}) {
      CurveSpec spec(d, t);
      for (u64 p : primes_in_range({100000, 200000})) {
        if (spec.excluded(p)) continue;
        ApRecord a = family().ap(spec, p);
        if (a.kind != ReductionKind::Ordinary) continue;
        ASSERT_LE(static_cast<i128>(a.ap) * a.ap, 4 * static_cast<i128>(p));
        ASSERT_EQ(a.ap, other.ap(spec, p).ap) << d << " " << p;
      }
    }
}

// The sextic order of a_p is determined by its quadratic and cubic orders.
TEST(Ap, SexticOrderFactorizes) {
  for (i64 t : {1, 2, 3}) {
    CurveSpec spec(-3, t);
    for (u64 p : primes_in_range({7, 100000})) {
      if (p % 6 != 1 || spec.excluded(p)) continue;
      ApRecord rec = family().ap(spec, p);
      if (rec.kind != ReductionKind::Ordinary) continue;
      ASSERT_EQ(CmFamily::ap_order(rec, 6), CmFamily::ap_order(rec, 2) * CmFamily::ap_order(rec, 3));
    }
  }
}

}  // namespace
}  // namespace cmres
