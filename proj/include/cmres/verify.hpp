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

#ifndef CMRES_VERIFY_HPP
#define CMRES_VERIFY_HPP

// Per-prime verification suites. Each suite checks a closed form against an
// independent evaluation (brute-force point counts or Euler-criterion
// symbols) and returns the primes where they disagree.

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cmres/class_sets.hpp"
#include "cmres/cm.hpp"
#include "cmres/density.hpp"
#include "cmres/eisenstein.hpp"
#include "cmres/gaussian.hpp"
#include "cmres/parallel.hpp"
#include "cmres/sieve.hpp"

namespace cmres {

struct Violation {
  u64 p = 0;
  std::string suite;
  std::string curve;
  std::string expected;
  std::string got;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct SuiteParams {
  std::optional<int> d;
  std::optional<Rational> t;
  u64 p_max = 100000;
  unsigned workers = 1;
};

struct SuiteInfo {
  std::string name;
  std::string description;
};

namespace detail {

inline const std::vector<i64> kOracleTwists{1, 2, -2, 3, 5, 6};
inline const std::vector<i64> kQuarticTwists{1, 2, -2, 3, 6, -8};
inline const std::vector<i64> kSymbolTwists{1, 2, 3};

inline std::vector<Rational> twist_grid(const SuiteParams& params, const std::vector<i64>& defaults) {
  if (params.t) return {*params.t};
  return {defaults.begin(), defaults.end()};
}

inline std::vector<int> disc_grid(const SuiteParams& params, std::vector<int> allowed, const char* suite) {
  if (!params.d) return allowed;
  if (std::find(allowed.begin(), allowed.end(), *params.d) == allowed.end())
    throw std::invalid_argument(std::string("suite ") + suite + " does not apply to d = " + std::to_string(*params.d));
  return {*params.d};
}

inline std::vector<int> all_discs() { return {kDiscriminants.begin(), kDiscriminants.end()}; }

using PrimeCheck = std::function<void(u64 p, std::vector<Violation>& out)>;

/// Runs check on every prime in [5, hi] and concatenates the violations
/// in prime order.
inline std::vector<Violation> over_primes(u64 hi, unsigned workers, const PrimeCheck& check) {
  std::vector<Violation> out;
  if (hi < 5) return out;
  auto parts = map_chunks<std::vector<Violation>>(partition_range({5, hi + 1}, kDefaultChunk), workers, [&](PrimeRange r) {
    std::vector<Violation> v;
    for_each_prime(r, [&](u64 p) { check(p, v); });
    return v;
  });
  for (auto& v : parts) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline std::string str(i64 v) { return std::to_string(v); }

inline std::string str(GaussInt z) {
  std::ostringstream os;
  os << z;
  return os.str();
}

inline void append(std::vector<Violation>& out, std::vector<Violation> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

// a_p(E^d_t) against the brute-force count.
inline std::vector<Violation> suite_oracle(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  const u64 hi = std::min(params.p_max, fam.options().oracle_bound);
  for (int d : disc_grid(params, all_discs(), "oracle"))
    for (const Rational& t : twist_grid(params, kOracleTwists)) {
      CurveSpec spec(d, t);
      append(out, over_primes(hi, params.workers, [&](u64 p, std::vector<Violation>& v) {
        if (spec.excluded(p)) return;
        ApRecord rec = fam.ap(spec, p);
        if (rec.kind == ReductionKind::Bad) return;
        i64 naive = fam.ap_naive(spec, p);
        if (naive != rec.ap) v.push_back({p, "oracle", spec.label(), str(naive), str(rec.ap)});
      }));
    }
  return out;
}

// a_p(E^d_t) = (t/p) a_p(E^d_1) for the quadratic-twist families, by brute force.
inline std::vector<Violation> suite_twist_law(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  const u64 hi = std::min(params.p_max, fam.options().oracle_bound);
  for (int d : disc_grid(params, {-7, -8, -11, -19, -43, -67, -163}, "twist-law"))
    for (const Rational& t : twist_grid(params, kOracleTwists)) {
      CurveSpec spec(d, t), base(d, 1);
      append(out, over_primes(hi, params.workers, [&](u64 p, std::vector<Violation>& v) {
        if (spec.excluded(p)) return;
        if (to_residue(fam.family_equation(base).invariants().disc, p) == 0) return;
        i64 expected = jacobi(static_cast<i64>(residue_of(t, p)), p) * fam.ap_naive(base, p);
        i64 got = fam.ap_naive(spec, p);
        if (got != expected) v.push_back({p, "twist-law", spec.label(), str(expected), str(got)});
      }));
    }
  return out;
}

// y^2 = x^3 - t x: a_p = (t/conj(pi))_4 pi + (t/pi)_4 conj(pi) is rational, within
// the Hasse bound, and equals the brute-force count up to the oracle bound;
// a_p = 0 at p == 3 mod 4.
inline std::vector<Violation> suite_zi_vs_oracle(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  disc_grid(params, {-4}, "zi-vs-oracle");
  const u64 bound = fam.options().oracle_bound;
  for (const Rational& t : twist_grid(params, kOracleTwists)) {
    CurveSpec spec(-4, t);
    append(out, over_primes(params.p_max, params.workers, [&](u64 p, std::vector<Violation>& v) {
      if (spec.excluded(p)) return;
      if (p % 4 == 3) {
        if (p <= bound && fam.ap_naive(spec, p) != 0) v.push_back({p, "zi-vs-oracle", spec.label(), "0", str(fam.ap_naive(spec, p))});
        return;
      }
      GaussInt pi = split_prime(p);
      GaussInt trace = quartic_symbol(t, pi.conj()).value() * pi + quartic_symbol(t, pi).value() * pi.conj();
      if (trace.im != 0) {
        v.push_back({p, "zi-vs-oracle", spec.label(), "rational trace", str(trace)});
        return;
      }
      if (static_cast<i128>(trace.re) * trace.re > 4 * static_cast<i128>(p)) v.push_back({p, "zi-vs-oracle", spec.label(), "Hasse bound", str(trace.re)});
      if (p <= bound) {
        i64 naive = fam.ap_naive(spec, p);
        if (naive != trace.re) v.push_back({p, "zi-vs-oracle", spec.label(), str(naive), str(trace.re)});
      }
    }));
  }
  return out;
}

// a_p = 0 exactly at the primes inert in the CM field, by brute force.
inline std::vector<Violation> suite_supersingular(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  const u64 hi = std::min(params.p_max, fam.options().oracle_bound);
  for (int d : disc_grid(params, all_discs(), "supersingular"))
    for (const Rational& t : twist_grid(params, {1, 2, 3})) {
      CurveSpec spec(d, t);
      append(out, over_primes(hi, params.workers, [&](u64 p, std::vector<Violation>& v) {
        if (spec.excluded(p) || to_residue(fam.family_equation(spec).invariants().disc, p) == 0) return;
        bool inert = jacobi(d, p) == -1;
        bool zero = fam.ap_naive(spec, p) == 0;
        if (inert != zero) v.push_back({p, "supersingular", spec.label(), inert ? "a_p = 0" : "a_p != 0", zero ? "a_p = 0" : "a_p != 0"});
      }));
    }
  return out;
}

// (l/pi)_4 for odd primes l | re(pi), both primary divisors of p.
inline std::vector<Violation> suite_odd_divisor_symbol(const CmFamily&, const SuiteParams& params) {
  return over_primes(params.p_max, params.workers, [&](u64 p, std::vector<Violation>& v) {
    if (p % 4 != 1) return;
    GaussInt pi = split_prime(p);
    for (GaussInt z : {pi, pi.conj()}) {
      u64 a = static_cast<u64>(z.re < 0 ? -z.re : z.re);
      for (auto [ell, e] : factorize(a)) {
        (void)e;
        if (ell == 2) continue;
        QuarticSymbol closed = odd_divisor_quartic_symbol(ell, z);
        QuarticSymbol euler = quartic_symbol(static_cast<i64>(ell), z);
        if (!(closed == euler))
          v.push_back({p, "odd-divisor-symbol", "(" + std::to_string(ell) + "/" + str(z) + ")_4", euler.str(), closed.str()});
      }
    }
  });
}

// (2/pi)_4 for both primary divisors of p.
inline std::vector<Violation> suite_two_symbol(const CmFamily&, const SuiteParams& params) {
  return over_primes(params.p_max, params.workers, [&](u64 p, std::vector<Violation>& v) {
    if (p % 4 != 1) return;
    GaussInt pi = split_prime(p);
    for (GaussInt z : {pi, pi.conj()}) {
      QuarticSymbol closed = two_quartic_symbol(z), euler = quartic_symbol(i64{2}, z);
      if (!(closed == euler)) v.push_back({p, "two-symbol", "(2/" + str(z) + ")_4", euler.str(), closed.str()});
    }
  });
}

// Closed form of (a_p/pi)_4 for y^2 = x^3 - t x at the canonical primary pi.
inline std::vector<Violation> suite_prop43(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  disc_grid(params, {-4}, "prop43");
  for (const Rational& t : twist_grid(params, kQuarticTwists)) {
    CurveSpec spec(-4, t);
    append(out, over_primes(params.p_max, params.workers, [&](u64 p, std::vector<Violation>& v) {
      if (p % 4 != 1 || spec.excluded(p)) return;
      ApRecord rec = fam.ap(spec, p);
      if (rec.kind != ReductionKind::Ordinary) return;
      GaussInt pi = std::get<GaussInt>(rec.pi);
      QuarticSymbol closed = ap_quartic_symbol(pi, t), euler = quartic_symbol(rec.ap, pi);
      if (!(closed == euler)) v.push_back({p, "prop43", spec.label(), euler.str(), closed.str()});
    }));
  }
  return out;
}

// The nine cells partition p == 1 mod 4 and predict the order of (a_p/pi)_4.
inline std::vector<Violation> suite_cor44(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  disc_grid(params, {-4}, "cor44-partition");
  for (const Rational& t : twist_grid(params, kQuarticTwists)) {
    CurveSpec spec(-4, t);
    std::vector<SetExpr> cells;
    for (Cor44CellId id : kCor44Cells) cells.push_back(cor44_cell_expr(id, t));
    append(out, over_primes(params.p_max, params.workers, [&](u64 p, std::vector<Violation>& v) {
      if (p % 4 != 1 || spec.excluded(p)) return;
      std::string hits;
      int count = 0;
      std::size_t hit = 0;
      for (std::size_t k = 0; k < cells.size(); ++k)
        if (classify(p, cells[k])) {
          hits += (count++ ? "," : "") + std::string(to_string(kCor44Cells[k]));
          hit = k;
        }
      Cor44Cell cell = cor44_cell(p, t);
      if (count != 1 || kCor44Cells[hit] != cell.id) {
        v.push_back({p, "cor44-partition", spec.label(), to_string(cell.id), hits.empty() ? "no cell" : hits});
        return;
      }
      ApRecord rec = fam.ap(spec, p);
      if (rec.kind != ReductionKind::Ordinary) return;
      int order = quartic_symbol(rec.ap, std::get<GaussInt>(rec.pi)).order();
      if (order != cell.predicted_order)
        v.push_back({p, "cor44-partition", spec.label(), std::string(to_string(cell.id)) + " order " + str(cell.predicted_order),
                     "order " + str(order)});
    }));
  }
  return out;
}

// (a_p/p) from the congruence class of p: for d != -4, (d/p)_4 on p == 1
// mod 4 and -(t/p) on p == 3 mod 4; for d = -4, 1 on p == 1 mod 8 and
// -(t/p) on p == 5 mod 8. (d/p)_4 and ((-d)/p)_4 differ by (2/p), so the
// sign of d matters on p == 5 mod 8.
inline std::vector<Violation> suite_quadratic_ap_symbol(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  for (int d : disc_grid(params, all_discs(), "quadratic-ap-symbol"))
    for (const Rational& t : twist_grid(params, kSymbolTwists)) {
      CurveSpec spec(d, t);
      append(out, over_primes(params.p_max, params.workers, [&](u64 p, std::vector<Violation>& v) {
        if (spec.excluded(p)) return;
        ApRecord rec = fam.ap(spec, p);
        if (rec.kind != ReductionKind::Ordinary) return;
        int got = jacobi(rec.ap, p);
        int t_sym = jacobi(static_cast<i64>(residue_of(t, p)), p);
        int expected;
        if (d == -4) {
          expected = p % 8 == 1 ? 1 : -t_sym;
        } else if (p % 4 == 1) {
          u64 q = powmod(to_residue(static_cast<i64>(d), p), (p - 1) / 4, p);
          expected = q == 1 ? 1 : -1;
        } else {
          expected = -t_sym;
        }
        if (got != expected) v.push_back({p, "quadratic-ap-symbol", spec.label(), str(expected), str(got)});
      }));
    }
  return out;
}

// (a_p/pi)_3 for y^2 = x^3 + 16t: 1, (t/pi)_3^2, (t/pi)_3 on p == 1, 4, 7 mod 9.
inline std::vector<Violation> suite_cubic_ap_symbol(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  disc_grid(params, {-3}, "cubic-ap-symbol");
  for (const Rational& t : twist_grid(params, kSymbolTwists)) {
    CurveSpec spec(-3, t);
    append(out, over_primes(params.p_max, params.workers, [&](u64 p, std::vector<Violation>& v) {
      if (spec.excluded(p) || p % 3 != 1) return;
      ApRecord rec = fam.ap(spec, p);
      if (rec.kind != ReductionKind::Ordinary) return;
      EisInt pi = std::get<EisInt>(rec.pi);
      CubicSymbol got = cubic_symbol(rec.ap, pi), tw = cubic_symbol(t, pi);
      CubicSymbol expected = p % 9 == 1 ? CubicSymbol{} : p % 9 == 4 ? tw * tw : tw;
      if (!(got == expected)) v.push_back({p, "cubic-ap-symbol", spec.label(), expected.str(), got.str()});
    }));
  }
  return out;
}

// Order of the degree 6 symbol equals the product of the degree 2 and 3 orders.
inline std::vector<Violation> suite_sextic_order(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  disc_grid(params, {-3}, "sextic-order");
  for (const Rational& t : twist_grid(params, kSymbolTwists)) {
    CurveSpec spec(-3, t);
    append(out, over_primes(params.p_max, params.workers, [&](u64 p, std::vector<Violation>& v) {
      if (spec.excluded(p) || p % 6 != 1) return;
      ApRecord rec = fam.ap(spec, p);
      if (rec.kind != ReductionKind::Ordinary) return;
      u64 o6 = CmFamily::ap_order(rec, 6), o2 = CmFamily::ap_order(rec, 2), o3 = CmFamily::ap_order(rec, 3);
      if (o6 != o2 * o3) v.push_back({p, "sextic-order", spec.label(), str(static_cast<i64>(o2 * o3)), str(static_cast<i64>(o6))});
    }));
  }
  return out;
}

/// Primes p == 1 mod 6 for which the explicit description of delta_6^1 as a
/// union of congruence and symbol cells mod 36 puts p in the order-1 set.
inline SetExpr sextic_unit_cells(const Rational& t) {
  const SetExpr minus3_quartic = SetExpr::sym_order(4, -3, 1);
  return (SetExpr::cong(36, {1}) & minus3_quartic) | (SetExpr::cong(36, {19}) & SetExpr::sym_order(2, t, 2)) |
         (SetExpr::cong(36, {7, 31}) & SetExpr::sym_order(6, t, 2)) |
         (SetExpr::cong(36, {13, 25}) & minus3_quartic & SetExpr::sym_order(3, t, 1));
}

// delta_6^1 for d = -3 against the density of sextic_unit_cells. The
// description holds as a density identity, so this suite compares the two
// counts statistically rather than prime by prime.
inline std::vector<Violation> suite_sextic_density(const CmFamily& fam, const SuiteParams& params) {
  std::vector<Violation> out;
  disc_grid(params, {-3}, "sextic-density");
  for (const Rational& t : twist_grid(params, kSymbolTwists)) {
    CurveSpec spec(-3, t);
    SetExpr cells = sextic_unit_cells(t);
    struct Counts {
      u64 total = 0, unit = 0, in_cells = 0;
    };
    auto parts = map_chunks<Counts>(partition_range({5, params.p_max + 1}, kDefaultChunk), params.workers, [&](PrimeRange r) {
      Counts c;
      for_each_prime(r, [&](u64 p) {
        if (spec.excluded(p) || p % 6 != 1 || !cells.admissible(p)) return;
        ApRecord rec = fam.ap(spec, p);
        if (rec.kind != ReductionKind::Ordinary) return;
        ++c.total;
        if (CmFamily::ap_order(rec, 6) == 1) ++c.unit;
        if (cells.contains(p)) ++c.in_cells;
      });
      return c;
    });
    Counts c;
    for (const Counts& x : parts) {
      c.total += x.total;
      c.unit += x.unit;
      c.in_cells += x.in_cells;
    }
    if (c.total == 0) continue;
    ReportRow row;
    row.N = c.total;
    row.empirical = static_cast<double>(c.unit) / static_cast<double>(c.total);
    row.predicted = Prediction{static_cast<double>(c.in_cells) / static_cast<double>(c.total), std::nullopt, PredictionSource::SexticProduct};
    judge(row);
    if (row.verdict != "pass")
      out.push_back({params.p_max, "sextic-density", spec.label(), "density " + format_predicted(row),
                     "density " + format_empirical(row) + " (z " + format_z(row) + ")"});
  }
  return out;
}

using SuiteFn = std::vector<Violation> (*)(const CmFamily&, const SuiteParams&);

struct SuiteEntry {
  SuiteInfo info;
  SuiteFn run;
};

inline const std::vector<SuiteEntry>& suite_table() {
  static const std::vector<SuiteEntry> table{
      {{"oracle", "a_p against brute-force point counts, all nine d (p up to the oracle bound)"}, suite_oracle},
      {{"twist-law", "a_p(E_t) = (t/p) a_p(E_1) for the quadratic-twist families, by brute force"}, suite_twist_law},
      {{"zi-vs-oracle", "d = -4: a_p from quartic symbols of the primary divisors against brute force"}, suite_zi_vs_oracle},
      {{"supersingular", "a_p = 0 exactly at inert primes, by brute force"}, suite_supersingular},
      {{"odd-divisor-symbol", "(l/pi)_4 closed form for odd primes l dividing re(pi)"}, suite_odd_divisor_symbol},
      {{"two-symbol", "(2/pi)_4 closed form"}, suite_two_symbol},
      {{"prop43", "d = -4: closed form of (a_p/pi)_4"}, suite_prop43},
      {{"cor44-partition", "d = -4: the nine cells partition p == 1 mod 4 and give the order of (a_p/pi)_4"}, suite_cor44},
      {{"quadratic-ap-symbol", "(a_p/p) from the residue class of p"}, suite_quadratic_ap_symbol},
      {{"cubic-ap-symbol", "d = -3: (a_p/pi)_3 from p mod 9"}, suite_cubic_ap_symbol},
      {{"sextic-order", "d = -3: order of (a_p/p)_6 is the product of the degree 2 and 3 orders"}, suite_sextic_order},
      {{"sextic-density", "d = -3: delta_6^1 against its mod 36 cell description (statistical)"}, suite_sextic_density},
  };
  return table;
}

}  // namespace detail

inline std::vector<SuiteInfo> suite_catalog() {
  std::vector<SuiteInfo> out;
  for (const auto& e : detail::suite_table()) out.push_back(e.info);
  return out;
}

/// Violations of the named suite; throws std::invalid_argument for an
/// unknown name or a d the suite does not cover.
inline std::vector<Violation> verify_suite(const std::string& name, const CmFamily& family, const SuiteParams& params) {
  for (const auto& e : detail::suite_table())
    if (e.info.name == name) return e.run(family, params);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace cmres

#endif  // CMRES_VERIFY_HPP
