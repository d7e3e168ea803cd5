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

// End-to-end acceptance run: one PASS/FAIL line per criterion. Exits
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cmres/cli.hpp"
#include "cmres/density.hpp"
#include "cmres/verify.hpp"

namespace {

using namespace cmres;

constexpr u64 kExactMax = 1000000;
constexpr u64 kOracleMax = 20000;
constexpr u64 kFormulaMax = 100000;
constexpr u64 kDensityMax = 10000000;

const CmFamily& family() {
  static const CmFamily f;
  return f;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  u64 checked = 0;
};

void note_violations(Outcome& o, const std::vector<Violation>& vs) {
  if (!vs.empty()) o.pass = false;
  for (std::size_t i = 0; i < vs.size() && i < 5; ++i)
    o.notes.push_back("p=" + std::to_string(vs[i].p) + " " + vs[i].suite + " " + vs[i].curve + " expected " + vs[i].expected +
                      " got " + vs[i].got);
  if (vs.size() > 5) o.notes.push_back("... " + std::to_string(vs.size() - 5) + " more");
}

void note_rows(Outcome& o, const std::vector<ReportRow>& rows) {
  for (const auto& r : rows) {
    ++o.checked;
    if (r.verdict == "pass") continue;
    o.pass = false;
    o.notes.push_back("d=" + std::to_string(r.d) + " t=" + r.t + " m=" + std::to_string(r.m) + " n=" + std::to_string(r.n) +
                      " set=" + r.set + " N=" + std::to_string(r.N) + " empirical=" + format_empirical(r) +
                      " predicted=" + format_predicted(r) + " z=" + format_z(r) + " verdict=" + r.verdict);
  }
}

std::vector<Violation> suite(const std::string& name, u64 p_max, std::optional<int> d = std::nullopt,
                             std::optional<Rational> t = std::nullopt) {
  SuiteParams params;
  params.p_max = p_max;
  params.d = d;
  params.t = t;
  return verify_suite(name, family(), params);
}

Outcome oracle_equivalence() {
  Outcome o;
  note_violations(o, suite("oracle", kOracleMax));
  return o;
}

Outcome gaussian_trace_formula() {
  Outcome o;
  note_violations(o, suite("zi-vs-oracle", kExactMax));
  return o;
}

Outcome gaussian_symbol_lemmas() {
  Outcome o;
  note_violations(o, suite("odd-divisor-symbol", kExactMax));
  note_violations(o, suite("two-symbol", kExactMax));
  return o;
}

Outcome quartic_trace_symbol() {
  Outcome o;
  note_violations(o, suite("prop43", kExactMax));
  return o;
}

Outcome quartic_cells() {
  Outcome o;
  note_violations(o, suite("cor44-partition", kExactMax));
  return o;
}

Outcome per_prime_symbol_formulas() {
  Outcome o;
  for (int d : {-3, -7, -8, -11, -19, -43, -67, -163}) note_violations(o, suite("quadratic-ap-symbol", kFormulaMax, d));
  note_violations(o, suite("cubic-ap-symbol", kFormulaMax));
  return o;
}

Outcome abelian_tables() {
  Outcome o;
  for (int d : {-7, -8, -11})
    for (i64 t : {1, 3, -1, 2})
      for (u64 m : {2, 4}) {
        // The degree 2 symbol over primes == 1 mod m.
        CurveSpec spec(d, t);
        SetExpr cond = SetExpr::cong(m, {1});
        note_rows(o, density_rows(spec, run_scan(family(), spec, 2, cond, kDensityMax), cond));
      }
  for (i64 t : {1, 2, -2, 3, 6, -8}) {
    CurveSpec spec(-4, t);
    SetExpr cond = SetExpr::cong(4, {1});
    note_rows(o, density_rows(spec, run_scan(family(), spec, 4, cond, kDensityMax), cond));
  }
  for (i64 t : {1, 2})
    for (u64 m : {3, 9}) {
      SetExpr cond = SetExpr::cong(m, {1});
      CurveSpec spec(-3, t);
      note_rows(o, density_rows(spec, run_scan(family(), spec, 3, cond, kDensityMax), cond));
    }
  return o;
}

std::vector<ReportRow> conjecture_report(const CurveSpec& spec, u64 m, const SetExpr& cond, unsigned workers) {
  ScanOptions opts;
  opts.workers = workers;
  ConjectureScans scans = conjecture_scans(family(), spec, m, cond, kDensityMax, opts);
  std::vector<ReportRow> rows;
  for (u64 n : divisors(m)) {
    rows.push_back(conjecture_check(spec, m, n, cond, scans.at_m, scans.at_mprime));
    if (spec.d() == -3 && m == 6) rows.push_back(sextic_product_check(spec, scans.at_m, n));
  }
  return rows;
}

Outcome conjectural_scaling() {
  Outcome o;
  for (i64 t : {1, 3}) note_rows(o, conjecture_report(CurveSpec(-4, t), 8, SetExpr::all(), 1));
  for (i64 t : {1, 3}) note_rows(o, conjecture_report(CurveSpec(-7, t), 4, SetExpr::all(), 1));
  for (u64 m : {6, 9}) note_rows(o, conjecture_report(CurveSpec(-3, 2), m, SetExpr::all(), 1));
  return o;
}

std::string cli_output(std::vector<std::string> args) {
  args.insert(args.begin(), "cmres");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return "exit " + std::to_string(code) + "\n" + out.str();
}

Outcome worker_determinism() {
  Outcome o;
  const std::string pmax = std::to_string(kDensityMax);
  const std::vector<std::vector<std::string>> runs{
      {"conjecture", "--d", "-3", "--t", "2", "--m", "6", "--pmax", pmax},
      {"density", "--d", "-4", "--t", "3", "--m", "4", "--set", "mod(4;1)", "--pmax", pmax, "--format", "json"},
      {"verify", "--suite", "cor44-partition", "--pmax", std::to_string(kExactMax)},
  };
  for (auto args : runs) {
    auto one = args, eight = args;
    one.insert(one.end(), {"--workers", "1"});
    eight.insert(eight.end(), {"--workers", "8"});
    std::string a = cli_output(one), b = cli_output(eight);
    ++o.checked;
    if (a != b) {
      o.pass = false;
      o.notes.push_back("reports differ for: " + args.front() + " " + args[1] + " " + args[2]);
    }
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence, all d, p <= 2e4", oracle_equivalence},
      {2, "Gaussian trace formula, d = -4, p <= 1e6", gaussian_trace_formula},
      {3, "quartic symbols of odd divisors and of 2, p <= 1e6", gaussian_symbol_lemmas},
      {4, "closed form of (a_p/pi)_4, p <= 1e6", quartic_trace_symbol},
      {5, "nine-cell partition and orders, p <= 1e6", quartic_cells},
      {6, "quadratic and cubic per-prime symbol formulas, p <= 1e5", per_prime_symbol_formulas},
      {7, "abelian density tables, p <= 1e7, |z| <= 4 or gap <= 0.004", abelian_tables},
      {8, "conjectural scaling and sextic product rule, p <= 1e7", conjectural_scaling},
      {9, "reports byte-identical for 1 and 8 workers", worker_determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("error: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (o.checked) std::cout << " (" << o.checked << " rows)";
    std::cout << " [" << timing << "]\n";
    for (const auto& n : o.notes) std::cout << "    " << n << '\n';
    std::cout.flush();
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
