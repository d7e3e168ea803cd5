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

#ifndef CMRES_REPORT_HPP
#define CMRES_REPORT_HPP

// CSV and JSON renderings of density rows and violation lists.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmres/density.hpp"
#include "cmres/verify.hpp"

namespace cmres {

enum class ReportFormat { Csv, Json };

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename... S>
void csv_line(std::ostream& os, const S&... fields) {
  bool first = true;
  ((os << (first ? "" : ",") << csv_field(fields), first = false), ...);
  os << '\n';
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const ReportRow& r) {
  nlohmann::ordered_json j;
  j["d"] = r.d;
  j["t"] = r.t;
  j["m"] = r.m;
  j["n"] = r.n;
  j["set"] = r.set;
  j["N"] = r.N;
  j["empirical"] = r.empirical ? nlohmann::ordered_json(*r.empirical) : nlohmann::ordered_json(nullptr);
  j["predicted"] = r.predicted ? nlohmann::ordered_json(format_predicted(r)) : nlohmann::ordered_json(nullptr);
  j["source"] = r.predicted ? nlohmann::ordered_json(format_source(r)) : nlohmann::ordered_json(nullptr);
  j["z"] = r.z ? nlohmann::ordered_json(*r.z) : nlohmann::ordered_json(nullptr);
  j["verdict"] = r.verdict;
  return j;
}

inline nlohmann::ordered_json to_json(const Violation& v) {
  nlohmann::ordered_json j;
  j["p"] = v.p;
  j["suite"] = v.suite;
  j["curve"] = v.curve;
  j["expected"] = v.expected;
  j["got"] = v.got;
  return j;
}

inline void write_rows(std::ostream& os, const std::vector<ReportRow>& rows, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
    return;
  }
  detail::csv_line(os, std::string("d"), std::string("t"), std::string("m"), std::string("n"), std::string("set"),
                   std::string("N"), std::string("empirical"), std::string("predicted"), std::string("source"),
                   std::string("z"), std::string("verdict"));
  for (const auto& r : rows)
    detail::csv_line(os, std::to_string(r.d), r.t, std::to_string(r.m), std::to_string(r.n), r.set, std::to_string(r.N),
                     format_empirical(r), format_predicted(r), format_source(r), format_z(r), r.verdict);
}

inline void write_violations(std::ostream& os, const std::vector<Violation>& vs, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : vs) arr.push_back(to_json(v));
    os << arr.dump(2) << '\n';
    return;
  }
  detail::csv_line(os, std::string("p"), std::string("suite"), std::string("curve"), std::string("expected"), std::string("got"));
  for (const auto& v : vs) detail::csv_line(os, std::to_string(v.p), v.suite, v.curve, v.expected, v.got);
}

}  // namespace cmres

#endif  // CMRES_REPORT_HPP
