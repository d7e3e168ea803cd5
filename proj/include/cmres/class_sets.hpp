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

#ifndef CMRES_CLASS_SETS_HPP
#define CMRES_CLASS_SETS_HPP

// Prime-set predicates: congruence classes, residue-symbol order cells, the
// four classes mod 8 of primary Gaussian divisors, and boolean combinations.
//
// Text syntax (whitespace is ignored):
//
//   expr    := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '!' unary | '(' expr ')' | atom
//   atom    := 'all'
//            | 'mod(' b ';' a (',' a)* ')'       p == a mod b for a listed a
//            | 'symord(' m ';' t ';' n ')'       p == 1 mod m, (t/p)_m of order n
//            | 'g8(' 1 | 1+4i | 5 | 5+4i ')'     p == 1 mod 8 in that class
//
// t in symord is an integer or a fraction a/b.

#include <algorithm>
#include <array>
#include <cctype>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cmres/errors.hpp"
#include "cmres/gaussian.hpp"
#include "cmres/modarith.hpp"
#include "cmres/rational.hpp"

namespace cmres {

/// Immutable, shareable prime-set expression.
class SetExpr {
 public:
  enum class Kind { All, CongMod, SymOrder, G8, And, Or, Not };

  static SetExpr all() { return SetExpr(std::make_shared<Node>()); }

  static SetExpr cong(u64 modulus, std::vector<u64> residues) {
    if (modulus == 0) throw std::invalid_argument("mod: modulus must be positive");
    for (u64& a : residues) {
      a %= modulus;
      if (std::gcd(a, modulus) != 1 && modulus != 1)
        throw std::invalid_argument("mod: residue " + std::to_string(a) + " is not coprime to " + std::to_string(modulus));
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    Node n;
    n.kind = Kind::CongMod;
    n.modulus = modulus;
    n.residues = std::move(residues);
    return SetExpr(std::make_shared<Node>(std::move(n)));
  }

  static SetExpr sym_order(u64 m, Rational t, u64 order) {
    if (m == 0 || order == 0 || m % order != 0)
      throw std::invalid_argument("symord: order " + std::to_string(order) + " does not divide " + std::to_string(m));
    if (t.is_zero()) throw std::invalid_argument("symord: t must be nonzero");
    Node n;
    n.kind = Kind::SymOrder;
    n.modulus = m;
    n.t = t;
    n.order = order;
    return SetExpr(std::make_shared<Node>(std::move(n)));
  }

  /// The atom is false off p == 1 mod 8, which plays the role of an
  /// implicit conjunction with mod(8;1).
  static SetExpr g8(G8Class alpha) {
    Node n;
    n.kind = Kind::G8;
    n.modulus = 8;
    n.alpha = alpha;
    return SetExpr(std::make_shared<Node>(std::move(n)));
  }

  friend SetExpr operator&(const SetExpr& a, const SetExpr& b) { return binary(Kind::And, a, b); }
  friend SetExpr operator|(const SetExpr& a, const SetExpr& b) { return binary(Kind::Or, a, b); }
  friend SetExpr operator!(const SetExpr& a) {
    Node n;
    n.kind = Kind::Not;
    n.lhs = a.node_;
    return SetExpr(std::make_shared<Node>(std::move(n)));
  }

  Kind kind() const { return node_->kind; }

  /// False when p divides a modulus or a symbol argument of some atom.
  bool admissible(u64 p) const { return admissible(*node_, p); }

  /// Membership of p; requires admissible(p).
  bool contains(u64 p) const { return eval(*node_, p); }

  std::string str() const { return print(*node_); }

  /// M when the expression is an intersection of classes 1 mod M_i (M the
  /// lcm); `all` gives 1.
  std::optional<u64> unit_class_modulus() const { return unit_class(*node_); }

 private:
  struct Node {
    Kind kind = Kind::All;
    u64 modulus = 0;
    std::vector<u64> residues;
    Rational t{1};
    u64 order = 0;
    G8Class alpha = G8Class::One;
    std::shared_ptr<const Node> lhs, rhs;
  };

  explicit SetExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static SetExpr binary(Kind k, const SetExpr& a, const SetExpr& b) {
    Node n;
    n.kind = k;
    n.lhs = a.node_;
    n.rhs = b.node_;
    return SetExpr(std::make_shared<Node>(std::move(n)));
  }

  static bool admissible(const Node& n, u64 p) {
    switch (n.kind) {
      case Kind::All: return true;
      case Kind::CongMod:
      case Kind::G8: return n.modulus % p != 0 || n.modulus == 1;
      case Kind::SymOrder: return (n.modulus % p != 0 || n.modulus == 1) && !divides_rational(p, n.t);
      case Kind::And:
      case Kind::Or: return admissible(*n.lhs, p) && admissible(*n.rhs, p);
      case Kind::Not: return admissible(*n.lhs, p);
    }
    return false;
  }

  static bool eval(const Node& n, u64 p) {
    switch (n.kind) {
      case Kind::All: return true;
      case Kind::CongMod: return std::binary_search(n.residues.begin(), n.residues.end(), p % n.modulus);
      case Kind::SymOrder:
        if ((p - 1) % n.modulus != 0) return false;
        return residue_symbol_order(residue_of(n.t, p), n.modulus, p) == n.order;
      case Kind::G8: return p % 8 == 1 && g8_class(p) == n.alpha;
      case Kind::And: return eval(*n.lhs, p) && eval(*n.rhs, p);
      case Kind::Or: return eval(*n.lhs, p) || eval(*n.rhs, p);
      case Kind::Not: return !eval(*n.lhs, p);
    }
    return false;
  }

  static std::string print(const Node& n) {
    switch (n.kind) {
      case Kind::All: return "all";
      case Kind::CongMod: {
        std::string s = "mod(" + std::to_string(n.modulus) + ";";
        for (std::size_t i = 0; i < n.residues.size(); ++i) s += (i ? "," : "") + std::to_string(n.residues[i]);
        return s + ")";
      }
      case Kind::SymOrder:
        return "symord(" + std::to_string(n.modulus) + ";" + n.t.str() + ";" + std::to_string(n.order) + ")";
      case Kind::G8: return std::string("g8(") + to_string(n.alpha) + ")";
      case Kind::And: return wrap(*n.lhs, Kind::Or) + " & " + wrap(*n.rhs, Kind::Or);
      case Kind::Or: return print(*n.lhs) + " | " + print(*n.rhs);
      case Kind::Not: return "!" + wrap(*n.lhs, Kind::And, Kind::Or);
    }
    return "?";
  }

  template <typename... K>
  static std::string wrap(const Node& n, K... kinds) {
    bool paren = ((n.kind == kinds) || ...);
    return paren ? "(" + print(n) + ")" : print(n);
  }

  static std::optional<u64> unit_class(const Node& n) {
    switch (n.kind) {
      case Kind::All: return 1;
      case Kind::CongMod:
        if (n.residues.size() == 1 && n.residues[0] == 1 % n.modulus) return n.modulus;
        return std::nullopt;
      case Kind::And: {
        auto a = unit_class(*n.lhs), b = unit_class(*n.rhs);
        if (!a || !b) return std::nullopt;
        return std::lcm(*a, *b);
      }
      default: return std::nullopt;
    }
  }

  std::shared_ptr<const Node> node_;
};

/// Membership of p in expr; throws std::invalid_argument when p divides a
/// modulus or symbol argument of the expression.
inline bool classify(u64 p, const SetExpr& expr) {
  if (!expr.admissible(p)) throw std::invalid_argument("classify: p = " + std::to_string(p) + " is not coprime to the expression " + expr.str());
  return expr.contains(p);
}

namespace detail {

class SetExprParser {
 public:
  explicit SetExprParser(std::string_view text) : text_(text) {}

  SetExpr parse() {
    SetExpr e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("set expression: " + msg + " at column " + std::to_string(pos_ + 1), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  SetExpr parse_or() {
    SetExpr e = parse_and();
    while (accept("|")) e = e | parse_and();
    return e;
  }

  SetExpr parse_and() {
    SetExpr e = parse_unary();
    while (accept("&")) e = e & parse_unary();
    return e;
  }

  SetExpr parse_unary() {
    if (accept("!")) return !parse_unary();
    if (accept("(")) {
      SetExpr e = parse_or();
      expect(")");
      return e;
    }
    return parse_atom();
  }

  std::string_view token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '+' ||
                                   text_[pos_] == '-' || text_[pos_] == '/'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  u64 parse_uint() {
    skip_ws();
    std::size_t start = pos_;
    std::string_view tok = token();
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      pos_ = start;
      fail("expected a non-negative integer");
    }
    try {
      return std::stoull(std::string(tok));
    } catch (const std::exception&) {
      pos_ = start;
      fail("integer out of range");
    }
  }

  template <typename F>
  auto guarded(std::size_t at, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const std::invalid_argument& e) {
      pos_ = at;
      fail(e.what());
    }
  }

  SetExpr parse_atom() {
    skip_ws();
    std::size_t start = pos_;
    if (accept("all")) return SetExpr::all();
    if (accept("mod")) {
      expect("(");
      u64 b = parse_uint();
      expect(";");
      std::vector<u64> residues{parse_uint()};
      while (accept(",")) residues.push_back(parse_uint());
      expect(")");
      return guarded(start, [&] { return SetExpr::cong(b, residues); });
    }
    if (accept("symord")) {
      expect("(");
      u64 m = parse_uint();
      expect(";");
      skip_ws();
      std::size_t tpos = pos_;
      std::string_view ttok = token();
      Rational t;
      try {
        t = Rational::parse(ttok);
      } catch (const ParseError&) {
        pos_ = tpos;
        fail("expected a rational number");
      }
      expect(";");
      u64 n = parse_uint();
      expect(")");
      return guarded(start, [&] { return SetExpr::sym_order(m, t, n); });
    }
    if (accept("g8")) {
      expect("(");
      skip_ws();
      std::size_t apos = pos_;
      std::string_view tok = token();
      G8Class alpha;
      if (tok == "1") alpha = G8Class::One;
      else if (tok == "1+4i") alpha = G8Class::OnePlus4i;
      else if (tok == "5") alpha = G8Class::Five;
      else if (tok == "5+4i") alpha = G8Class::FivePlus4i;
      else {
        pos_ = apos;
        fail("expected one of 1, 1+4i, 5, 5+4i");
      }
      expect(")");
      return SetExpr::g8(alpha);
    }
    fail("expected an atom (all, mod, symord, g8), '!' or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SetExpr parse_set_expr(std::string_view text) { return detail::SetExprParser(text).parse(); }

/// The nine cells that split primes p == 1 mod 4 (coprime to 2t) according
/// to the quartic character of the trace of y^2 = x^3 - t x.
enum class Cor44CellId { G8_1, G8_1p4i, G8_5_plus, G8_5_minus, G8_5p4i_plus, G8_5p4i_minus, C85_q1, C85_qm1, C85_q4 };

inline constexpr std::array<Cor44CellId, 9> kCor44Cells{Cor44CellId::G8_1,         Cor44CellId::G8_1p4i,
                                                        Cor44CellId::G8_5_plus,    Cor44CellId::G8_5_minus,
                                                        Cor44CellId::G8_5p4i_plus, Cor44CellId::G8_5p4i_minus,
                                                        Cor44CellId::C85_q1,       Cor44CellId::C85_qm1,
                                                        Cor44CellId::C85_q4};

inline const char* to_string(Cor44CellId id) {
  switch (id) {
    case Cor44CellId::G8_1: return "G8_1";
    case Cor44CellId::G8_1p4i: return "G8_1p4i";
    case Cor44CellId::G8_5_plus: return "G8_5_plus";
    case Cor44CellId::G8_5_minus: return "G8_5_minus";
    case Cor44CellId::G8_5p4i_plus: return "G8_5p4i_plus";
    case Cor44CellId::G8_5p4i_minus: return "G8_5p4i_minus";
    case Cor44CellId::C85_q1: return "C85_q1";
    case Cor44CellId::C85_qm1: return "C85_qm1";
    case Cor44CellId::C85_q4: return "C85_q4";
  }
  return "?";
}

/// Order of (a_p/pi)_4 on the cell: the trace symbol is 1, -1, -(t/p),
/// (t/p) on the four classes mod 8 and (t/2 / pi)_4 on p == 5 mod 8.
inline constexpr int predicted_order(Cor44CellId id) {
  switch (id) {
    case Cor44CellId::G8_1:
    case Cor44CellId::G8_5_minus:
    case Cor44CellId::G8_5p4i_plus:
    case Cor44CellId::C85_q1: return 1;
    case Cor44CellId::G8_1p4i:
    case Cor44CellId::G8_5_plus:
    case Cor44CellId::G8_5p4i_minus:
    case Cor44CellId::C85_qm1: return 2;
    case Cor44CellId::C85_q4: return 4;
  }
  return 0;
}

struct Cor44Cell {
  Cor44CellId id;
  int predicted_order;
};

/// Cell of p for the twist t. Requires p == 1 mod 4 and gcd(p, 2t) = 1.
inline Cor44Cell cor44_cell(u64 p, const Rational& t) {
  if (p % 4 != 1) throw std::invalid_argument("cor44_cell: " + std::to_string(p) + " is not 1 mod 4");
  if (divides_rational(p, t)) throw std::invalid_argument("cor44_cell: p divides t");
  Cor44CellId id = Cor44CellId::G8_1;
  if (p % 8 == 1) {
    int legendre = jacobi(static_cast<i64>(residue_of(t, p)), p);
    switch (g8_class(p)) {
      case G8Class::One: id = Cor44CellId::G8_1; break;
      case G8Class::OnePlus4i: id = Cor44CellId::G8_1p4i; break;
      case G8Class::Five: id = legendre == 1 ? Cor44CellId::G8_5_plus : Cor44CellId::G8_5_minus; break;
      case G8Class::FivePlus4i: id = legendre == 1 ? Cor44CellId::G8_5p4i_plus : Cor44CellId::G8_5p4i_minus; break;
    }
  } else {
    u64 half_t = residue_of(t * Rational(1, 2), p);
    u64 ord = residue_symbol_order(half_t, 4, p);
    id = ord == 1 ? Cor44CellId::C85_q1 : ord == 2 ? Cor44CellId::C85_qm1 : Cor44CellId::C85_q4;
  }
  return {id, predicted_order(id)};
}

/// The cell as a set expression, built from atoms only.
inline SetExpr cor44_cell_expr(Cor44CellId id, const Rational& t) {
  const Rational half_t = t * Rational(1, 2);
  switch (id) {
    case Cor44CellId::G8_1: return SetExpr::g8(G8Class::One);
    case Cor44CellId::G8_1p4i: return SetExpr::g8(G8Class::OnePlus4i);
    case Cor44CellId::G8_5_plus: return SetExpr::g8(G8Class::Five) & SetExpr::sym_order(2, t, 1);
    case Cor44CellId::G8_5_minus: return SetExpr::g8(G8Class::Five) & SetExpr::sym_order(2, t, 2);
    case Cor44CellId::G8_5p4i_plus: return SetExpr::g8(G8Class::FivePlus4i) & SetExpr::sym_order(2, t, 1);
    case Cor44CellId::G8_5p4i_minus: return SetExpr::g8(G8Class::FivePlus4i) & SetExpr::sym_order(2, t, 2);
    case Cor44CellId::C85_q1: return SetExpr::cong(8, {5}) & SetExpr::sym_order(4, half_t, 1);
    case Cor44CellId::C85_qm1: return SetExpr::cong(8, {5}) & SetExpr::sym_order(4, half_t, 2);
    case Cor44CellId::C85_q4: return SetExpr::cong(8, {5}) & SetExpr::sym_order(4, half_t, 4);
  }
  throw std::logic_error("cor44_cell_expr: unknown cell");
}

}  // namespace cmres

#endif  // CMRES_CLASS_SETS_HPP
