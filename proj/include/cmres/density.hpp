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

#ifndef CMRES_DENSITY_HPP
#define CMRES_DENSITY_HPP

// Density scans of the order of (a_p/p)_m, closed-form abelian predictions,
// and the comparison rows built from them.

#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmres/class_sets.hpp"
#include "cmres/cm.hpp"
#include "cmres/modarith.hpp"
#include "cmres/parallel.hpp"
#include "cmres/rational.hpp"
#include "cmres/sieve.hpp"

namespace cmres {

/// Counts of ordinary primes p <= p_max in the conditioning set with
/// p == 1 mod m, keyed by the order of (a_p/p)_m.
struct Tally {
  u64 m = 1;
  u64 total = 0;
  std::map<u64, u64> counts;  // one entry for every divisor of m
  u64 p_max = 0;
  std::string conditioning;
  std::string curve;

  static Tally empty(u64 m, u64 p_max, std::string conditioning, std::string curve) {
    Tally t;
    t.m = m;
    t.p_max = p_max;
    t.conditioning = std::move(conditioning);
    t.curve = std::move(curve);
    for (u64 n : divisors(m)) t.counts[n] = 0;
    return t;
  }

  void merge(const Tally& other) {
    if (other.m != m || other.conditioning != conditioning || other.curve != curve)
      throw std::invalid_argument("Tally::merge: tallies of different scans");
    total += other.total;
    for (const auto& [n, c] : other.counts) counts[n] += c;
    p_max = std::max(p_max, other.p_max);
  }

  friend bool operator==(const Tally&, const Tally&) = default;
};

struct ScanOptions {
  unsigned workers = 1;
  u64 chunk = kDefaultChunk;
  u64 p_min = 5;
};

/// Scan of the primes p in [p_min, p_max] with p == 1 mod m, p in
/// `conditioning`, p outside the excluded set of `spec`, and ordinary.
inline Tally run_scan(const CmFamily& family, const CurveSpec& spec, u64 m, const SetExpr& conditioning, u64 p_max,
                      const ScanOptions& opts = {}) {
  if (m == 0) throw std::invalid_argument("run_scan: m must be positive");
  const std::string cond = conditioning.str();
  Tally total = Tally::empty(m, p_max, cond, spec.label());
  const u64 lo = std::max<u64>(opts.p_min, 5);
  if (p_max < lo) return total;
  auto chunks = partition_range({lo, p_max + 1}, opts.chunk);
  auto parts = map_chunks<Tally>(chunks, opts.workers, [&](PrimeRange r) {
    Tally t = Tally::empty(m, p_max, cond, spec.label());
    for_each_prime(r, [&](u64 p) {
      if ((p - 1) % m != 0 || spec.excluded(p) || !conditioning.admissible(p) || !conditioning.contains(p)) return;
      ApRecord rec = family.ap(spec, p);
      if (rec.kind != ReductionKind::Ordinary) return;
      ++t.counts[CmFamily::ap_order(rec, m)];
      ++t.total;
    });
    return t;
  });
  for (const auto& t : parts) total.merge(t);
  return total;
}

/// counts[n] / total.
inline Rational empirical_delta(const Tally& tally, u64 n) {
  if (tally.total == 0) throw std::invalid_argument("empirical_delta: empty tally");
  auto it = tally.counts.find(n);
  if (it == tally.counts.end()) throw std::invalid_argument("empirical_delta: " + std::to_string(n) + " does not divide m");
  return Rational(static_cast<i64>(it->second), static_cast<i64>(tally.total));
}

inline double to_double(const Rational& r) { return static_cast<double>(r.num()) / static_cast<double>(r.den()); }

enum class PredictionSource {
  Trivial,             // m = 1
  QuadraticAbelian,    // degree 2 symbol over a unit class
  QuarticAbelian,      // degree 4 symbol, d = -4
  CubicAbelian,        // degree 3 symbol, d = -3
  SexticProduct,       // degree 6 symbol, d = -3, product of degree 2 and 3
  SexticProductEmpirical,  // the same product taken over measured marginals
  ConjecturalAbelian,  // conjectural extension to m beyond (m, w_d)
  ConjectureEmpirical, // conjectural extension with an empirical reference
};

inline const char* to_string(PredictionSource s) {
  switch (s) {
    case PredictionSource::Trivial: return "trivial";
    case PredictionSource::QuadraticAbelian: return "quadratic-abelian";
    case PredictionSource::QuarticAbelian: return "quartic-abelian";
    case PredictionSource::CubicAbelian: return "cubic-abelian";
    case PredictionSource::SexticProduct: return "sextic-product";
    case PredictionSource::SexticProductEmpirical: return "sextic-product-empirical";
    case PredictionSource::ConjecturalAbelian: return "conjectural-abelian";
    case PredictionSource::ConjectureEmpirical: return "conjecture-empirical";
  }
  return "?";
}

inline bool is_conjectural(PredictionSource s) {
  return s == PredictionSource::ConjecturalAbelian || s == PredictionSource::ConjectureEmpirical;
}

struct Prediction {
  double value = 0;
  std::optional<Rational> exact;
  PredictionSource source = PredictionSource::Trivial;
};

namespace detail {

inline i64 mod_floor(i64 a, i64 b) { return ((a % b) + b) % b; }

inline bool divides_abs(i64 a, i64 b) { return a != 0 && b % a == 0; }

inline void require_integer(const CurveSpec& spec, const char* who) {
  if (!spec.t().is_integer()) throw std::invalid_argument(std::string(who) + ": t must be an integer");
}

}  // namespace detail

/// delta_2^1 over primes == 1 mod M (M even), d != -4.
inline Rational predict_m2(const CurveSpec& spec, u64 M) {
  if (spec.d() == -4) throw std::invalid_argument("predict_m2: d = -4 has its own table");
  if (M == 0 || M % 2 != 0) throw std::invalid_argument("predict_m2: m must be even");
  const i64 tp = spec.t_squarefree();
  const i64 d = spec.d();
  if (M % 4 != 0 && detail::divides_abs(tp, static_cast<i64>(M) * d)) {
    const i64 r4 = detail::mod_floor(tp, 4), r8 = detail::mod_floor(tp, 8);
    if (r4 == 3 || (d == -8 && r8 == 2)) return Rational(3, 4);
    if (r4 == 1 || (d == -8 && r8 == 6)) return Rational(1, 4);
  }
  return Rational(1, 2);
}

/// delta_4^4 over primes == 1 mod M (4 | M), d = -4: the density of
/// p == 5 mod 8 with t a square mod p.
inline Rational quartic_top_delta(const CurveSpec& spec, u64 M) {
  if (spec.d() != -4 || M % 4 != 0) throw std::invalid_argument("quartic_top_delta: needs d = -4 and 4 | m");
  if (M % 8 == 0) return Rational(0);
  const i64 tp = spec.t_squarefree();
  if (tp == 1) return Rational(1, 2);
  // conductor of Q(sqrt t'); the character (t'/p) is periodic mod |disc|
  const i64 disc = detail::mod_floor(tp, 4) == 1 ? tp : 4 * tp;
  if (detail::divides_abs(disc, 2 * static_cast<i64>(M)))
    return jacobi(disc, M + 1) == 1 ? Rational(1, 2) : Rational(0);
  return Rational(1, 4);
}

/// d = -4: delta_2^1 over primes == 1 mod M when 4 does not divide M,
/// delta_4^1 when it does. M even.
inline Rational predict_m4(const CurveSpec& spec, u64 M) {
  if (spec.d() != -4) throw std::invalid_argument("predict_m4: needs d = -4");
  if (M == 0 || M % 2 != 0) throw std::invalid_argument("predict_m4: m must be even");
  detail::require_integer(spec, "predict_m4");
  const i64 t = spec.t_reduced();
  const i64 tp = spec.t_squarefree();
  const bool tp_divides = detail::divides_abs(tp, static_cast<i64>(M));
  const bool tp_even = tp % 2 == 0;
  if (M % 4 != 0) {
    if (tp_divides) return tp_even ? Rational(1) : Rational(1, 2);
    return Rational(3, 4);
  }
  const bool eight = M % 8 == 0;
  if (!eight && (t == 2 || t == -8)) return Rational(3, 4);
  if (eight || (tp_divides && tp_even && t != 2 && t != -2 && t != 8 && t != -8)) return Rational(1, 2);
  if (!eight && ((tp_divides && !tp_even) || t == -2 || t == 8)) return Rational(1, 4);
  return Rational(3, 8);
}

/// d = -3: delta_3^1 over primes == 1 mod M, 3 | M.
inline Rational predict_m3(const CurveSpec& spec, u64 M) {
  if (spec.d() != -3) throw std::invalid_argument("predict_m3: needs d = -3");
  if (M == 0 || M % 3 != 0) throw std::invalid_argument("predict_m3: 3 must divide m");
  if (M % 9 == 0 || is_rational_power(spec.t(), 3)) return Rational(1);
  return Rational(5, 9);
}

/// Density of order-n symbols of degree k | w_d over primes == 1 mod M,
/// k | M, from the abelian tables.
inline std::optional<Prediction> abelian_delta(const CurveSpec& spec, u64 k, u64 n, u64 M) {
  if (k == 0 || k % n != 0 || M % k != 0) throw std::invalid_argument("abelian_delta: need n | k | M");
  const int d = spec.d();
  auto make = [](Rational r, PredictionSource s) { return Prediction{to_double(r), r, s}; };
  switch (k) {
    case 1: return make(Rational(1), PredictionSource::Trivial);
    case 2: {
      Rational one;
      if (d == -4) {
        if (!spec.t().is_integer()) return std::nullopt;
        one = M % 4 == 0 ? Rational(1) - quartic_top_delta(spec, M) : predict_m4(spec, M);
      } else {
        one = predict_m2(spec, M);
      }
      return make(n == 1 ? one : Rational(1) - one, PredictionSource::QuadraticAbelian);
    }
    case 4: {
      if (d != -4 || !spec.t().is_integer()) return std::nullopt;
      Rational one = predict_m4(spec, M), top = quartic_top_delta(spec, M);
      Rational r = n == 1 ? one : n == 4 ? top : Rational(1) - one - top;
      return make(r, PredictionSource::QuarticAbelian);
    }
    case 3: {
      if (d != -3) return std::nullopt;
      Rational one = predict_m3(spec, M);
      return make(n == 1 ? one : Rational(1) - one, PredictionSource::CubicAbelian);
    }
    case 6: {
      if (d != -3) return std::nullopt;
      Rational two = predict_m2(spec, M), three = predict_m3(spec, M);
      Rational a = std::gcd(n, u64{2}) == 1 ? two : Rational(1) - two;
      Rational b = std::gcd(n, u64{3}) == 1 ? three : Rational(1) - three;
      return make(a * b, PredictionSource::SexticProduct);
    }
    default: return std::nullopt;
  }
}

/// (m', n') = ((m, w_d), m' / (m/n, w_d)).
inline std::pair<u64, u64> reduced_degree(const CurveSpec& spec, u64 m, u64 n) {
  if (m == 0 || n == 0 || m % n != 0) throw std::invalid_argument("reduced_degree: n must divide m");
  const u64 w = static_cast<u64>(spec.w());
  const u64 mp = std::gcd(m, w);
  return {mp, mp / std::gcd(m / n, w)};
}

/// Prediction for delta_m^n over primes == 1 mod M (m | M): the abelian
/// table for m | w_d, otherwise the conjectural scaling
/// phi(n)/m * delta_{m'}^{n'} / (phi(n')/m').
inline std::optional<Prediction> predict(const CurveSpec& spec, u64 m, u64 n, u64 M) {
  if (M % m != 0) throw std::invalid_argument("predict: m must divide the conditioning modulus");
  auto [mp, np] = reduced_degree(spec, m, n);
  auto ref = abelian_delta(spec, mp, np, M);
  if (!ref) return std::nullopt;
  if (mp == m) return ref;
  Rational scale = Rational(static_cast<i64>(euler_phi(n)), static_cast<i64>(m)) *
                   Rational(static_cast<i64>(mp), static_cast<i64>(euler_phi(np)));
  Rational r = scale * *ref->exact;
  return Prediction{to_double(r), r, PredictionSource::ConjecturalAbelian};
}

/// delta_m^1 over primes == 1 mod m (and ordinary), for integer t reduced
/// modulo fourth powers (d = -4) or sixth powers (d = -3), assuming the
/// conjectural scaling. Explicit table keyed on (m, w_d).
inline Rational predict_prop33(const CurveSpec& spec, u64 m) {
  if (m == 0) throw std::invalid_argument("predict_prop33: m must be positive");
  if (!spec.t().is_integer()) throw std::invalid_argument("predict_prop33: t must be an integer");
  const i64 t = spec.t().num();
  if (t != spec.t_reduced() && (spec.d() == -3 || spec.d() == -4))
    throw std::invalid_argument("predict_prop33: t must be reduced by " + std::to_string(spec.w()) + "-th powers");
  const int d = spec.d();
  const i64 mm = static_cast<i64>(m);
  const u64 g = std::gcd(m, static_cast<u64>(spec.w()));
  const i64 tp = spec.t_squarefree();
  const bool four = m % 4 == 0;
  auto over_m = [&](i64 a, i64 b = 1) { return Rational(a, b * mm); };
  if (g == 1) return over_m(1);
  if (g == 2 && d != -4) {
    if (!four && detail::divides_abs(tp, mm * d)) {
      const i64 r4 = detail::mod_floor(tp, 4), r8 = detail::mod_floor(tp, 8);
      if (r4 == 3 || (d == -8 && r8 == 2)) return over_m(3, 2);
      if (r4 == 1 || (d == -8 && r8 == 6)) return over_m(1, 2);
    }
    return over_m(1);
  }
  if (g == 2) {
    if (detail::divides_abs(tp, mm)) return tp % 2 == 0 ? over_m(2) : over_m(1);
    return over_m(3, 2);
  }
  if (g == 3) return (m % 9 == 0 || is_rational_power(spec.t(), 3)) ? over_m(3) : over_m(5, 3);
  if (g == 4) {
    const bool eight = m % 8 == 0;
    const bool tp_div = detail::divides_abs(tp, mm), tp_even = tp % 2 == 0;
    if (!eight && (t == 2 || t == -8)) return over_m(3);
    if (eight || (tp_div && tp_even && t != 2 && t != -2 && t != 8 && t != -8)) return over_m(2);
    if (!eight && ((tp_div && !tp_even) || t == -2 || t == 8)) return over_m(1);
    return over_m(3, 2);
  }
  // g == 6, d = -3. A cube t or 9 | m makes the cubic part trivial.
  const bool cube = m % 9 == 0 || is_rational_power(spec.t(), 3);
  const bool small = !four && detail::divides_abs(tp, mm * d);
  const i64 r4 = detail::mod_floor(tp, 4);
  if (small && r4 == 3) return cube ? over_m(9, 2) : over_m(5, 2);
  if (small && r4 == 1) return cube ? over_m(3, 2) : over_m(5, 6);
  return cube ? over_m(3) : over_m(5, 3);
}

/// One line of a comparison report.
struct ReportRow {
  int d = 0;
  std::string t;
  u64 m = 1;
  u64 n = 1;
  std::string set;
  u64 N = 0;
  std::optional<double> empirical;
  std::optional<Prediction> predicted;
  std::optional<double> z;
  std::string verdict;
};

/// Absolute gap accepted regardless of the z-score.
inline constexpr double kGapTolerance = 0.004;
/// |z| accepted regardless of the gap.
inline constexpr double kZTolerance = 4.0;

/// Fills z and verdict from empirical, predicted and N.
inline void judge(ReportRow& row) {
  if (row.N == 0 || !row.empirical) {
    row.verdict = "empty";
    return;
  }
  if (!row.predicted) {
    row.verdict = "n/a";
    return;
  }
  const double pred = row.predicted->value, emp = *row.empirical;
  const double gap = std::fabs(emp - pred);
  bool ok = gap <= kGapTolerance;
  if (pred > 0 && pred < 1) {
    row.z = (emp - pred) / std::sqrt(pred * (1 - pred) / static_cast<double>(row.N));
    ok = ok || std::fabs(*row.z) <= kZTolerance;
  } else {
    row.z.reset();
  }
  row.verdict = ok ? "pass" : "fail";
}

inline ReportRow make_row(const CurveSpec& spec, const Tally& tally, u64 n, std::optional<Prediction> pred) {
  ReportRow row;
  row.d = spec.d();
  row.t = spec.t().str();
  row.m = tally.m;
  row.n = n;
  row.set = tally.conditioning;
  row.N = tally.total;
  if (tally.total > 0) row.empirical = to_double(empirical_delta(tally, n));
  row.predicted = std::move(pred);
  judge(row);
  return row;
}

/// Rows for every n | m of a finished scan; predictions attached when the
/// conditioning is a unit class mod M.
inline std::vector<ReportRow> density_rows(const CurveSpec& spec, const Tally& tally, const SetExpr& conditioning) {
  std::vector<ReportRow> rows;
  std::optional<u64> M = conditioning.unit_class_modulus();
  for (u64 n : divisors(tally.m)) {
    std::optional<Prediction> pred;
    if (M) {
      u64 eff = std::lcm(*M, tally.m);
      pred = predict(spec, tally.m, n, eff);
    }
    rows.push_back(make_row(spec, tally, n, pred));
  }
  return rows;
}

/// Conjectural row for delta_m^n: the reference density at degree m' is the
/// empirical one, measured over the same primes.
inline ReportRow conjecture_check(const CurveSpec& spec, u64 m, u64 n, const SetExpr& conditioning,
                                  const Tally& tally_m, const Tally& tally_mprime) {
  auto [mp, np] = reduced_degree(spec, m, n);
  if (tally_m.m != m || tally_mprime.m != mp) throw std::invalid_argument("conjecture_check: tallies have the wrong degrees");
  if (tally_m.curve != spec.label() || tally_mprime.curve != spec.label())
    throw std::invalid_argument("conjecture_check: tallies belong to another curve");
  if (tally_m.conditioning != conditioning.str() ||
      tally_mprime.conditioning != (conditioning & SetExpr::cong(m, {1})).str() || tally_m.p_max != tally_mprime.p_max ||
      tally_m.total != tally_mprime.total)
    throw std::invalid_argument("conjecture_check: tallies are not over the same primes");
  std::optional<Prediction> pred;
  if (tally_mprime.total > 0) {
    Rational ref = empirical_delta(tally_mprime, np);
    Rational r = Rational(static_cast<i64>(euler_phi(n)), static_cast<i64>(m)) * ref *
                 Rational(static_cast<i64>(mp), static_cast<i64>(euler_phi(np)));
    pred = Prediction{to_double(r), std::nullopt, PredictionSource::ConjectureEmpirical};
  }
  return make_row(spec, tally_m, n, pred);
}

/// The two scans a conjecture row needs, over the same primes.
struct ConjectureScans {
  Tally at_m;
  Tally at_mprime;
};

inline ConjectureScans conjecture_scans(const CmFamily& family, const CurveSpec& spec, u64 m, const SetExpr& conditioning,
                                        u64 p_max, const ScanOptions& opts = {}) {
  const u64 mp = std::gcd(m, static_cast<u64>(spec.w()));
  return {run_scan(family, spec, m, conditioning, p_max, opts),
          run_scan(family, spec, mp, conditioning & SetExpr::cong(m, {1}), p_max, opts)};
}

/// Degree 6 product rule for d = -3: predicted delta_6^n is the product of
/// the marginal densities of the degree 2 and degree 3 orders in the same
/// scan.
inline ReportRow sextic_product_check(const CurveSpec& spec, const Tally& tally6, u64 n) {
  if (spec.d() != -3 || tally6.m != 6) throw std::invalid_argument("sextic_product_check: needs d = -3 and m = 6");
  std::optional<Prediction> pred;
  if (tally6.total > 0) {
    const u64 n2 = std::gcd(n, u64{2}), n3 = std::gcd(n, u64{3});
    u64 c2 = 0, c3 = 0;
    for (const auto& [k, c] : tally6.counts) {
      if (std::gcd(k, u64{2}) == n2) c2 += c;
      if (std::gcd(k, u64{3}) == n3) c3 += c;
    }
    const i64 N = static_cast<i64>(tally6.total);
    Rational r = Rational(static_cast<i64>(c2), N) * Rational(static_cast<i64>(c3), N);
    pred = Prediction{to_double(r), std::nullopt, PredictionSource::SexticProductEmpirical};
  }
  return make_row(spec, tally6, n, pred);
}

namespace detail {

inline std::string fmt_double(double v, const char* f) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace detail

inline std::string format_empirical(const ReportRow& r) { return r.empirical ? detail::fmt_double(*r.empirical, "%.10f") : ""; }

inline std::string format_predicted(const ReportRow& r) {
  if (!r.predicted) return "";
  return r.predicted->exact ? r.predicted->exact->str() : detail::fmt_double(r.predicted->value, "%.10f");
}

inline std::string format_z(const ReportRow& r) { return r.z ? detail::fmt_double(*r.z, "%.3f") : ""; }

inline std::string format_source(const ReportRow& r) { return r.predicted ? to_string(r.predicted->source) : ""; }

}  // namespace cmres

#endif  // CMRES_DENSITY_HPP
