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

#ifndef CMRES_CM_HPP
#define CMRES_CM_HPP

// Frobenius traces a_p of the CM families E^d_t.
//
//   d = -4   y^2 = x^3 - t x, a_p = conj((t/pi)_4) pi + (t/pi)_4 conj(pi)
//   d = -3   y^2 = x^3 + 16t, six unit-multiple candidates from 4p = L^2 + 3M^2
//   d <= -7  quadratic twist of the table curve (by -t for d = -7, by t
//            otherwise), a_p = (t/p) a_p(E^d_1) on split primes
//
// Traces that are only known up to a unit are pinned down by checking
// which candidate group order kills random points.

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cmres/cornacchia.hpp"
#include "cmres/curve.hpp"
#include "cmres/eisenstein.hpp"
#include "cmres/gaussian.hpp"
#include "cmres/modarith.hpp"
#include "cmres/rational.hpp"

namespace cmres {

/// The curve E^d_t.
class CurveSpec {
 public:
  CurveSpec(int d, Rational t) : d_(d), t_(t) {
    if (!is_cm_discriminant(d)) throw std::invalid_argument("CurveSpec: " + std::to_string(d) + " is not a class-number-one discriminant");
    if (t.is_zero()) throw std::invalid_argument("CurveSpec: t must be nonzero");
    t_squarefree_ = squarefree_part(t);
    t_reduced_ = kfree_reduce(t, twist_degree());
  }

  int d() const { return d_; }
  const Rational& t() const { return t_; }
  /// Number of units of the CM order.
  int w() const { return d_ == -3 ? 6 : d_ == -4 ? 4 : 2; }
  /// Degree of the twists in the family: 6, 4, or 2.
  int twist_degree() const { return w(); }
  /// Squarefree t' with t/t' a square.
  i64 t_squarefree() const { return t_squarefree_; }
  /// Integer representative of t modulo twist_degree()-th powers.
  i64 t_reduced() const { return t_reduced_; }

  /// Primes left out of every scan: p <= 3 and p | 2 d num(t) den(t).
  bool excluded(u64 p) const {
    if (p <= 3) return true;
    if (static_cast<u64>(-d_) % p == 0) return true;
    return divides_rational(p, t_);
  }

  std::string label() const { return "E^" + std::to_string(d_) + "_" + t_.str(); }

  friend bool operator==(const CurveSpec& a, const CurveSpec& b) { return a.d_ == b.d_ && a.t_ == b.t_; }

 private:
  int d_;
  Rational t_;
  i64 t_squarefree_ = 1;
  i64 t_reduced_ = 1;
};

enum class ReductionKind { Ordinary, Supersingular, Bad };

inline const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::Ordinary: return "ordinary";
    case ReductionKind::Supersingular: return "supersingular";
    case ReductionKind::Bad: return "bad";
  }
  return "?";
}

struct ApRecord {
  u64 p = 0;
  ReductionKind kind = ReductionKind::Bad;
  i64 ap = 0;
  /// Chosen divisor of p: canonical primary pi for d = -4, normalized
  /// Eisenstein divisor for d = -3.
  std::variant<std::monostate, GaussInt, EisInt> pi;
  std::map<u64, u64> symbol_orders;
};

/// p + 1 - #E(F_p) by direct count for the curve D*y'^2 = g(x), where
/// (2y + a1 x + a3)^2 = g(x) = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
/// is eq with the square completed and D is a quadratic twist residue.
inline i64 ap_naive(const WeierstrassEquation& eq, u64 p, u64 twist = 1, u64 bound = 20000) {
  if (p > bound) throw std::invalid_argument("ap_naive: p = " + std::to_string(p) + " exceeds the oracle bound " + std::to_string(bound));
  if (p < 3) throw std::invalid_argument("ap_naive: p must be an odd prime");
  twist %= p;
  if (twist == 0) throw std::invalid_argument("ap_naive: twist divisible by p");
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;
  // g(x) = 4x^3 + c2 x^2 + c1 x + c0, walked by forward differences.
  auto r = [&](i128 v) { return to_residue(v, p); };
  u64 c2 = r(4 * static_cast<i128>(eq.a2) + static_cast<i128>(eq.a1) * eq.a1);
  u64 c1 = r(4 * static_cast<i128>(eq.a4) + 2 * static_cast<i128>(eq.a1) * eq.a3);
  u64 c0 = r(4 * static_cast<i128>(eq.a6) + static_cast<i128>(eq.a3) * eq.a3);
  auto g = [&](u64 x) { return addmod(mulmod(addmod(mulmod(addmod(mulmod(4, x, p), c2, p), x, p), c1, p), x, p), c0, p); };
  u64 g0 = g(0), g1 = g(1), g2 = g(2), g3 = g(3);
  u64 d1 = submod(g1, g0, p), d2 = submod(submod(g2, g1, p), d1, p);
  u64 d3 = submod(submod(submod(g3, g2, p), submod(g2, g1, p), p), d2, p);  // constant 24
  u64 value = g0;
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    sum += chi[value];
    value = addmod(value, d1, p);
    d1 = addmod(d1, d2, p);
    d2 = addmod(d2, d3, p);
  }
  return chi[twist] == 1 ? -sum : sum;
}

struct ApOptions {
  u64 oracle_bound = 20000;
  u64 seed = 0;
  int max_points = 32;
};

/// Trace computations for the family over a fixed curve table. All member
/// functions are const and safe to call from several threads.
class CmFamily {
 public:
  explicit CmFamily(CurveTable table = default_curve_table(), ApOptions options = {})
      : table_(std::move(table)), options_(options) {
    for (int d : kDiscriminants)
      if (!table_.count(d)) throw std::invalid_argument("CmFamily: curve table lacks d = " + std::to_string(d));
  }

  const CurveTable& table() const { return table_; }
  const ApOptions& options() const { return options_; }

  /// Integer equation of E^d_t for d = -3, -4, or of the base curve E^d for
  /// d <= -7 (whose twist is given by oracle_twist).
  WeierstrassEquation family_equation(const CurveSpec& spec) const {
    WeierstrassEquation eq = table_.at(spec.d()).eq;
    if (spec.d() == -4) eq.a4 = detail::checked_mul(eq.a4, spec.t_reduced());
    if (spec.d() == -3) eq.a6 = detail::checked_mul(eq.a6, spec.t_reduced());
    return eq;
  }

  /// Quadratic twist parameter of E^d_t relative to family_equation, as an
  /// integer in the same square class.
  i64 quadratic_twist(const CurveSpec& spec) const {
    if (spec.d() == -3 || spec.d() == -4) return 1;
    return spec.d() == -7 ? -spec.t_squarefree() : spec.t_squarefree();
  }

  ApRecord ap(const CurveSpec& spec, u64 p) const {
    if (p < 5) throw std::invalid_argument("ap: p must be at least 5");
    ApRecord rec;
    rec.p = p;
    if (divides_rational(p, spec.t())) return rec;
    const WeierstrassEquation eq = family_equation(spec);
    if (to_residue(eq.invariants().disc, p) == 0) return rec;

    const int d = spec.d();
    if (d == -4) {
      if (p % 4 == 3) return supersingular(rec);
      GaussInt pi = split_prime(p);
      QuarticSymbol chi = quartic_symbol(spec.t_reduced(), pi);
      GaussInt chi_v = chi.value();
      GaussInt trace = chi_v.conj() * pi + chi_v * pi.conj();
      if (trace.im != 0) throw std::logic_error("ap: trace of a Gaussian integer is not rational");
      rec.ap = trace.re;
      rec.pi = pi;
    } else if (d == -3) {
      if (p % 3 == 2) return supersingular(rec);
      auto sol = cornacchia4(-3, p);
      if (!sol) throw std::logic_error("ap: no Eisenstein divisor for p = " + std::to_string(p));
      i64 a = static_cast<i64>((sol->first + sol->second) / 2), b = static_cast<i64>(sol->second);
      std::vector<i64> cands{2 * a - b, -(2 * a - b), a + b, -(a + b), 2 * b - a, -(2 * b - a)};
      ShortCurve E = ShortCurve::reduce(eq, p);
      rec.ap = select_trace(spec, E, cands, p);
      rec.pi = split_prime_eis(p);
    } else {
      if (jacobi(d, p) == -1) return supersingular(rec);
      auto sol = cornacchia4(d, p);
      if (!sol) throw std::logic_error("ap: no norm solution for p = " + std::to_string(p));
      i64 u = static_cast<i64>(sol->first);
      ShortCurve E = ShortCurve::reduce(eq, p);
      i64 base = select_trace(CurveSpec(d, 1), E, std::vector<i64>{u, -u}, p);
      // E^-7_1 is the twist of the table curve by -1.
      int base_sign = d == -7 ? jacobi(-1, p) : 1;
      rec.ap = jacobi(spec.t_squarefree(), p) * base_sign * base;
    }
    rec.kind = ReductionKind::Ordinary;
    check_hasse(rec);
    return rec;
  }

  /// Brute-force trace of E^d_t at p (p <= oracle bound).
  i64 ap_naive(const CurveSpec& spec, u64 p) const {
    if (p < 5) throw std::invalid_argument("ap_naive: p must be at least 5");
    return cmres::ap_naive(family_equation(spec), p, to_residue(quadratic_twist(spec), p), options_.oracle_bound);
  }

  /// Order of the m-th power residue symbol of a_p at p == 1 mod m.
  u64 ap_order(const CurveSpec& spec, u64 p, u64 m) const { return ap_order(ap(spec, p), m); }

  static u64 ap_order(const ApRecord& rec, u64 m) {
    if (m == 0 || (rec.p - 1) % m != 0) throw std::invalid_argument("ap_order: p = " + std::to_string(rec.p) + " is not 1 mod " + std::to_string(m));
    if (rec.kind != ReductionKind::Ordinary) throw std::invalid_argument("ap_order: p = " + std::to_string(rec.p) + " is not ordinary");
    u64 x = to_residue(rec.ap, rec.p);
    if (x == 0) throw std::logic_error("ap_order: a_p divisible by p at an ordinary prime");
    return residue_symbol_order(x, m, rec.p);
  }

 private:
  static ApRecord supersingular(ApRecord rec) {
    rec.kind = ReductionKind::Supersingular;
    rec.ap = 0;
    return rec;
  }

  static void check_hasse(const ApRecord& rec) {
    i128 a = rec.ap;
    if (a * a > 4 * static_cast<i128>(rec.p)) throw std::logic_error("ap: Hasse bound violated at p = " + std::to_string(rec.p));
    if (rec.ap == 0) throw std::logic_error("ap: zero trace at an ordinary prime p = " + std::to_string(rec.p));
  }

  u64 point_seed(const CurveSpec& spec, u64 p) const {
    // splitmix64 over (seed, p, d, t)
    u64 z = options_.seed ^ (p * 0x9E3779B97F4A7C15ULL) ^ (static_cast<u64>(-spec.d()) << 48) ^
            (static_cast<u64>(spec.t_reduced()) * 0xD1B54A32D192ED03ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  i64 select_trace(const CurveSpec& spec, const ShortCurve& E, std::vector<i64> cands, u64 p) const {
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::mt19937_64 rng(point_seed(spec, p));
    for (int k = 0; k < options_.max_points && cands.size() > 1; ++k) {
      auto P = random_point(E, rng);
      if (!P) break;
      std::erase_if(cands, [&](i64 c) {
        u64 order = static_cast<u64>(static_cast<i64>(p) + 1 - c);
        return !scalar_mul(E, order, *P).is_infinity();
      });
    }
    if (cands.size() == 1) return cands.front();
    if (cands.empty()) throw DisambiguationError("ap: no trace candidate survives at p = " + std::to_string(p) + " for " + spec.label());
    if (p <= options_.oracle_bound) {
      i64 naive = cmres::ap_naive(family_equation(spec), p, 1, options_.oracle_bound);
      if (std::find(cands.begin(), cands.end(), naive) != cands.end()) return naive;
    }
    throw DisambiguationError("ap: " + std::to_string(cands.size()) + " trace candidates remain at p = " + std::to_string(p) +
                              " for " + spec.label());
  }

  CurveTable table_;
  ApOptions options_;
};

}  // namespace cmres

#endif  // CMRES_CM_HPP
