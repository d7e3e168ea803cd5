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

#include "cmres/verify.hpp"

namespace cmres {
namespace {

const CmFamily& family() {
  static const CmFamily f;
  return f;
}

std::vector<Violation> run(const std::string& suite, u64 p_max, std::optional<int> d = std::nullopt,
                           std::optional<Rational> t = std::nullopt) {
  SuiteParams params;
  params.p_max = p_max;
  params.d = d;
  params.t = t;
  params.workers = 2;
  return verify_suite(suite, family(), params);
}

TEST(Suites, CatalogIsCompleteAndNamed) {
  auto cat = suite_catalog();
  std::vector<std::string> names;
  for (const auto& s : cat) {
    names.push_back(s.name);
    EXPECT_FALSE(s.description.empty());
  }
  for (const char* want : {"oracle", "twist-law", "zi-vs-oracle", "supersingular", "odd-divisor-symbol", "two-symbol", "prop43",
                           "cor44-partition", "quadratic-ap-symbol", "cubic-ap-symbol", "sextic-order", "sextic-density"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
}

TEST(Suites, UnknownSuiteAndInapplicableDiscriminant) {
  EXPECT_THROW(run("no-such-suite", 100), std::invalid_argument);
  EXPECT_THROW(run("prop43", 100, -7), std::invalid_argument);
  EXPECT_THROW(run("cubic-ap-symbol", 100, -4), std::invalid_argument);
}

TEST(Suites, PassOnModerateRanges) {
  EXPECT_TRUE(run("prop43", 13).empty());
  EXPECT_TRUE(run("zi-vs-oracle", 20000).empty());
  EXPECT_TRUE(run("cor44-partition", 100000, -4, Rational(3)).empty());
  EXPECT_TRUE(run("odd-divisor-symbol", 100000).empty());
  EXPECT_TRUE(run("two-symbol", 100000).empty());
  EXPECT_TRUE(run("quadratic-ap-symbol", 50000).empty());
  EXPECT_TRUE(run("cubic-ap-symbol", 50000).empty());
  EXPECT_TRUE(run("sextic-order", 50000).empty());
  EXPECT_TRUE(run("oracle", 3000).empty());
  EXPECT_TRUE(run("twist-law", 5000).empty());
  EXPECT_TRUE(run("supersingular", 5000).empty());
  EXPECT_TRUE(run("sextic-density", 300000).empty());
}

TEST(Suites, WorkerCountDoesNotChangeResults) {
  SuiteParams a, b;
  a.p_max = b.p_max = 30000;
  b.workers = 6;
  EXPECT_EQ(verify_suite("cor44-partition", family(), a), verify_suite("cor44-partition", family(), b));
}

// The quadratic character of a_p at p == 1 mod 4 is (d/p)_4. Reading it as
// ((-d)/p)_4 instead breaks at p == 5 mod 8, first at p = 13 for d = -3.
TEST(QuadraticApSymbol, SignOfTheDiscriminantMatters) {
  const u64 p = 13;
  ApRecord rec = family().ap(CurveSpec(-3, 1), p);
  ASSERT_EQ(rec.kind, ReductionKind::Ordinary);
  int got = jacobi(rec.ap, p);
  auto quartic_sign = [&](i64 x) { return powmod(to_residue(x, p), (p - 1) / 4, p) == 1 ? 1 : -1; };
  EXPECT_EQ(got, quartic_sign(-3));
  EXPECT_NE(got, quartic_sign(3));
}

}  // namespace
}  // namespace cmres
