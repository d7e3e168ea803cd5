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

#ifndef CMRES_CLI_HPP
#define CMRES_CLI_HPP

// Command-line front end. Exit status: 0 pass, 1 violations or failing
// rows, 2 usage or configuration error, 3 runtime failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmres/class_sets.hpp"
#include "cmres/cm.hpp"
#include "cmres/curve.hpp"
#include "cmres/density.hpp"
#include "cmres/errors.hpp"
#include "cmres/report.hpp"
#include "cmres/verify.hpp"

namespace cmres {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

struct RunConfig {
  std::string command;
  std::optional<int> d;
  std::optional<Rational> t;
  std::optional<u64> m;
  std::optional<u64> n;
  std::string set = "all";
  u64 p_max = 100000;
  u64 oracle_bound = 20000;
  unsigned workers = 1;
  ReportFormat format = ReportFormat::Csv;
  std::string out;
  u64 seed = 0;
  std::string curve_table;
  std::string suite;
};

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void validate(const RunConfig& c) {
  if (c.p_max < 5) throw UsageError("--pmax must be at least 5");
  if (c.d && !is_cm_discriminant(*c.d)) throw UsageError("--d must be one of -3 -4 -7 -8 -11 -19 -43 -67 -163");
  if (c.t && c.t->is_zero()) throw UsageError("--t must be nonzero");
  if (c.workers == 0) throw UsageError("--workers must be positive");
  if (c.command == "density" || c.command == "conjecture") {
    if (!c.d) throw UsageError("--d is required");
    if (!c.m || *c.m == 0) throw UsageError("--m is required and must be positive");
    if (c.n && (*c.n == 0 || *c.m % *c.n != 0)) throw UsageError("--n must divide --m");
  }
  if (c.command == "verify" && c.suite.empty()) throw UsageError("--suite is required (see the suites command)");
}

inline CmFamily make_family(const RunConfig& c) {
  CurveTable table = c.curve_table.empty() ? default_curve_table() : load_curve_table(c.curve_table);
  ApOptions opts;
  opts.oracle_bound = c.oracle_bound;
  opts.seed = c.seed;
  return CmFamily(std::move(table), opts);
}

inline std::vector<u64> wanted_n(const RunConfig& c) {
  if (c.n) return {*c.n};
  return divisors(*c.m);
}

inline bool any_failure(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (r.verdict == "fail") return true;
  return false;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  CmFamily family = make_family(c);
  SuiteParams params;
  params.d = c.d;
  params.t = c.t;
  params.p_max = c.p_max;
  params.workers = c.workers;
  std::vector<Violation> vs;
  try {
    vs = verify_suite(c.suite, family, params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_violations(out, vs, c.format);
  err << "suite " << c.suite << ": " << vs.size() << " violation" << (vs.size() == 1 ? "" : "s") << " up to " << c.p_max << '\n';
  return vs.empty() ? kExitPass : kExitViolations;
}

inline SetExpr parse_conditioning(const RunConfig& c) {
  try {
    return parse_set_expr(c.set);
  } catch (const ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n  " + c.set + "\n  " + std::string(e.position(), ' ') + "^");
  }
}

inline int cmd_density(const RunConfig& c, std::ostream& out, std::ostream& err) {
  CmFamily family = make_family(c);
  CurveSpec spec(*c.d, c.t.value_or(Rational(1)));
  SetExpr cond = parse_conditioning(c);
  ScanOptions opts;
  opts.workers = c.workers;
  Tally tally = run_scan(family, spec, *c.m, cond, c.p_max, opts);
  std::vector<ReportRow> rows;
  for (auto& r : density_rows(spec, tally, cond))
    if (!c.n || r.n == *c.n) rows.push_back(std::move(r));
  if (tally.total == 0) err << "conditioning set is empty up to " << c.p_max << '\n';
  write_rows(out, rows, c.format);
  return any_failure(rows) ? kExitViolations : kExitPass;
}

inline int cmd_conjecture(const RunConfig& c, std::ostream& out, std::ostream& err) {
  CmFamily family = make_family(c);
  CurveSpec spec(*c.d, c.t.value_or(Rational(1)));
  SetExpr cond = parse_conditioning(c);
  ScanOptions opts;
  opts.workers = c.workers;
  const u64 m = *c.m;
  ConjectureScans scans = conjecture_scans(family, spec, m, cond, c.p_max, opts);
  std::vector<ReportRow> closed = density_rows(spec, scans.at_m, cond);
  std::vector<ReportRow> rows;
  for (u64 n : wanted_n(c)) {
    for (const auto& r : closed)
      if (r.n == n && r.predicted) rows.push_back(r);
    rows.push_back(conjecture_check(spec, m, n, cond, scans.at_m, scans.at_mprime));
    if (spec.d() == -3 && m == 6) rows.push_back(sextic_product_check(spec, scans.at_m, n));
  }
  auto [mp, np] = reduced_degree(spec, m, 1);
  (void)np;
  err << "reference degree m' = " << mp << ", N = " << scans.at_m.total << '\n';
  write_rows(out, rows, c.format);
  return any_failure(rows) ? kExitViolations : kExitPass;
}

inline int cmd_suites(std::ostream& out) {
  for (const auto& s : suite_catalog()) out << s.name << "  " << s.description << '\n';
  return kExitPass;
}

}  // namespace detail

/// Parses argv and runs the selected command, writing reports to `out` (or
/// to --out) and diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"cmres: Frobenius traces of CM elliptic curves and the distribution of their power residue symbols"};
  app.set_config("--config", "", "Read `key = value` settings from a file; command-line flags win");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for all commands");

  RunConfig c;
  int d = 0;
  std::string t, format = "csv";
  u64 m = 0, n = 0;
  auto* opt_d = app.add_option("--d", d, "Discriminant: -3 -4 -7 -8 -11 -19 -43 -67 -163");
  auto* opt_t = app.add_option("--t", t, "Twist parameter, integer or a/b");
  auto* opt_m = app.add_option("--m", m, "Degree of the residue symbol");
  auto* opt_n = app.add_option("--n", n, "Single order n | m (default: all divisors)");
  app.add_option("--set", c.set, "Conditioning set expression")->capture_default_str();
  app.add_option("--pmax", c.p_max, "Largest prime scanned")->capture_default_str();
  app.add_option("--oracle-bound", c.oracle_bound, "Largest p for brute-force point counts")->capture_default_str();
  app.add_option("--workers", c.workers, "Worker threads")->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", c.out, "Output file (default: standard output)");
  app.add_option("--seed", c.seed, "Seed base for point sampling")->capture_default_str();
  app.add_option("--curve-table", c.curve_table, "Curve table file (default: built-in table)");
  app.add_option("--suite", c.suite, "Verification suite name");

  app.add_subcommand("verify", "Run a per-prime verification suite");
  app.add_subcommand("density", "Scan the order distribution of (a_p/p)_m over a conditioning set");
  app.add_subcommand("conjecture", "Compare delta_m^n with the conjectural scaling of the (m, w_d) densities");
  app.add_subcommand("suites", "List verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (opt_d->count()) c.d = d;
    if (opt_t->count()) {
      try {
        c.t = Rational::parse(t);
      } catch (const std::exception& e) {
        throw detail::UsageError(std::string("--t: ") + e.what());
      }
    }
    if (opt_m->count()) c.m = m;
    if (opt_n->count()) c.n = n;
    c.format = format == "json" ? ReportFormat::Json : ReportFormat::Csv;
    if (c.command == "suites") return detail::cmd_suites(out);
    detail::validate(c);

    std::ofstream file;
    std::ostringstream buffer;
    std::ostream& sink = c.out.empty() ? out : static_cast<std::ostream&>(buffer);
    int status = kExitPass;
    if (c.command == "verify") status = detail::cmd_verify(c, sink, err);
    else if (c.command == "density") status = detail::cmd_density(c, sink, err);
    else status = detail::cmd_conjecture(c, sink, err);
    if (!c.out.empty()) {
      file.open(c.out, std::ios::binary);
      if (!file) throw detail::UsageError("cannot write " + c.out);
      file << buffer.str();
    }
    return status;
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace cmres

#endif  // CMRES_CLI_HPP
