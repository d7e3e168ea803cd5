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

#ifndef CMRES_CURVE_HPP
#define CMRES_CURVE_HPP

// Weierstrass models, the CM curve table, and point arithmetic over F_p.

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cmres/errors.hpp"
#include "cmres/modarith.hpp"

namespace cmres {

inline constexpr std::array<int, 9> kDiscriminants{-3, -4, -7, -8, -11, -19, -43, -67, -163};

inline bool is_cm_discriminant(int d) {
  return std::find(kDiscriminants.begin(), kDiscriminants.end(), d) != kDiscriminants.end();
}

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z.
struct WeierstrassEquation {
  i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  struct Invariants {
    i128 b2, b4, b6, b8, c4, c6, disc;
  };

  Invariants invariants() const {
    Invariants v{};
    v.b2 = static_cast<i128>(a1) * a1 + 4 * static_cast<i128>(a2);
    v.b4 = 2 * static_cast<i128>(a4) + static_cast<i128>(a1) * a3;
    v.b6 = static_cast<i128>(a3) * a3 + 4 * static_cast<i128>(a6);
    v.b8 = static_cast<i128>(a1) * a1 * a6 + 4 * static_cast<i128>(a2) * a6 - static_cast<i128>(a1) * a3 * a4 +
           static_cast<i128>(a2) * a3 * a3 - static_cast<i128>(a4) * a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
    return v;
  }

  friend bool operator==(const WeierstrassEquation&, const WeierstrassEquation&) = default;
};

/// Curve table row: d together with its model.
struct CurveModel {
  int d = 0;
  WeierstrassEquation eq;
};

using CurveTable = std::map<int, CurveModel>;

/// Parses rows `d a1 a2 a3 a4 a6`; `#` starts a comment. All nine
/// discriminants must be present; the d = -3 and d = -4 rows must have the
/// shapes y^2 = x^3 + a6 and y^2 = x^3 + a4 x.
inline CurveTable parse_curve_table(std::istream& in) {
  CurveTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    long long d;
    if (!(row >> d)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("curve table: bad discriminant on line " + std::to_string(lineno), lineno);
      continue;
    }
    std::array<long long, 5> a{};
    for (auto& c : a)
      if (!(row >> c)) throw ParseError("curve table: expected 5 coefficients on line " + std::to_string(lineno), lineno);
    std::string extra;
    if (row >> extra) throw ParseError("curve table: trailing text on line " + std::to_string(lineno), lineno);
    if (!is_cm_discriminant(static_cast<int>(d)))
      throw ParseError("curve table: " + std::to_string(d) + " is not a class-number-one discriminant (line " + std::to_string(lineno) + ")", lineno);
    if (table.count(static_cast<int>(d))) throw ParseError("curve table: duplicate row for " + std::to_string(d) + " on line " + std::to_string(lineno), lineno);
    WeierstrassEquation eq{a[0], a[1], a[2], a[3], a[4]};
    bool family_shape = eq.a1 == 0 && eq.a2 == 0 && eq.a3 == 0;
    if (d == -3 && !(family_shape && eq.a4 == 0 && eq.a6 != 0))
      throw ParseError("curve table: d = -3 row must be y^2 = x^3 + a6 (line " + std::to_string(lineno) + ")", lineno);
    if (d == -4 && !(family_shape && eq.a6 == 0 && eq.a4 != 0))
      throw ParseError("curve table: d = -4 row must be y^2 = x^3 + a4 x (line " + std::to_string(lineno) + ")", lineno);
    if (eq.invariants().disc == 0) throw ParseError("curve table: singular model on line " + std::to_string(lineno), lineno);
    table[static_cast<int>(d)] = {static_cast<int>(d), eq};
  }
  for (int d : kDiscriminants)
    if (!table.count(d)) throw ParseError("curve table: missing row for discriminant " + std::to_string(d), lineno);
  return table;
}

inline CurveTable load_curve_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve table " + path);
  return parse_curve_table(in);
}

/// Same rows as data/cm_curves.txt.
inline const char* const kDefaultCurveTable = R"(
-3    0  0  0  0        16
-4    0  0  0 -1        0
-7    1 -1  0 -2       -1
-8    0 -1  0 -3       -1
-11   0 -1  1 -7        10
-19   0  0  1 -38       90
-43   0  0  1 -860      9707
-67   0  0  1 -7370     243528
-163  0  0  1 -2174420  1234136692
)";

inline CurveTable default_curve_table() {
  std::istringstream in(kDefaultCurveTable);
  return parse_curve_table(in);
}

/// y^2 = x^3 + A x + B over F_p, p >= 5.
struct ShortCurve {
  u64 p = 0;
  u64 A = 0;
  u64 B = 0;

  /// Short model of eq over F_p, optionally twisted by a unit D:
  /// y^2 = x^3 - 27 c4 D^2 x - 54 c6 D^3.
  static ShortCurve reduce(const WeierstrassEquation& eq, u64 p, u64 twist = 1) {
    auto inv = eq.invariants();
    u64 d2 = mulmod(twist, twist, p), d3 = mulmod(d2, twist, p);
    u64 A = mulmod(to_residue(-27 * inv.c4, p), d2, p);
    u64 B = mulmod(to_residue(-54 * inv.c6, p), d3, p);
    return {p, A, B};
  }

  u64 rhs(u64 x) const { return addmod(mulmod(addmod(mulmod(x, x, p), A, p), x, p), B, p); }

  bool singular() const {
    // 4A^3 + 27B^2
    u64 a3 = mulmod(mulmod(A, A, p), A, p);
    return addmod(mulmod(4, a3, p), mulmod(27, mulmod(B, B, p), p), p) == 0;
  }
};

/// Jacobian point (X : Y : Z), affine (X/Z^2, Y/Z^3); Z == 0 is infinity.
struct JacobianPoint {
  u64 X = 1, Y = 1, Z = 0;
  bool is_infinity() const { return Z == 0; }
};

struct AffinePoint {
  u64 x = 0, y = 0;
};

inline JacobianPoint point_double(const ShortCurve& E, const JacobianPoint& P) {
  const u64 p = E.p;
  if (P.Z == 0 || P.Y == 0) return {};
  u64 xx = mulmod(P.X, P.X, p);
  u64 yy = mulmod(P.Y, P.Y, p);
  u64 yyyy = mulmod(yy, yy, p);
  u64 zz = mulmod(P.Z, P.Z, p);
  u64 s = mulmod(4, mulmod(P.X, yy, p), p);
  u64 m = addmod(mulmod(3, xx, p), mulmod(E.A, mulmod(zz, zz, p), p), p);
  u64 x3 = submod(mulmod(m, m, p), addmod(s, s, p), p);
  u64 y3 = submod(mulmod(m, submod(s, x3, p), p), mulmod(8, yyyy, p), p);
  u64 z3 = mulmod(2, mulmod(P.Y, P.Z, p), p);
  return {x3, y3, z3};
}

/// P + Q with Q affine.
inline JacobianPoint point_add_mixed(const ShortCurve& E, const JacobianPoint& P, const AffinePoint& Q) {
  const u64 p = E.p;
  if (P.Z == 0) return {Q.x, Q.y, 1};
  u64 z1z1 = mulmod(P.Z, P.Z, p);
  u64 u2 = mulmod(Q.x, z1z1, p);
  u64 s2 = mulmod(Q.y, mulmod(P.Z, z1z1, p), p);
  u64 h = submod(u2, P.X, p);
  u64 r = submod(s2, P.Y, p);
  if (h == 0) return r == 0 ? point_double(E, P) : JacobianPoint{};
  u64 hh = mulmod(h, h, p);
  u64 hhh = mulmod(h, hh, p);
  u64 v = mulmod(P.X, hh, p);
  u64 x3 = submod(submod(mulmod(r, r, p), hhh, p), addmod(v, v, p), p);
  u64 y3 = submod(mulmod(r, submod(v, x3, p), p), mulmod(P.Y, hhh, p), p);
  u64 z3 = mulmod(P.Z, h, p);
  return {x3, y3, z3};
}

inline JacobianPoint scalar_mul(const ShortCurve& E, u64 n, const AffinePoint& P) {
  JacobianPoint acc{};
  for (int bit = 63; bit >= 0; --bit) {
    acc = point_double(E, acc);
    if ((n >> bit) & 1) acc = point_add_mixed(E, acc, P);
  }
  return acc;
}

/// Uniformly chosen affine point, drawn from rng. Gives up (nullopt) after
/// `attempts` x-coordinates with non-square right-hand side.
template <typename Rng>
std::optional<AffinePoint> random_point(const ShortCurve& E, Rng& rng, int attempts = 256) {
  for (int i = 0; i < attempts; ++i) {
    u64 x = rng() % E.p;
    auto y = sqrt_mod(static_cast<i64>(E.rhs(x)), E.p);
    if (y) return AffinePoint{x, (rng() & 1) ? *y : negmod(*y, E.p)};
  }
  return std::nullopt;
}

}  // namespace cmres

#endif  // CMRES_CURVE_HPP
