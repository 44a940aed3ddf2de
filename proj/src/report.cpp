// Copyright 2026 The contextlab Authors
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

#include "contextlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "contextlab/errors.hpp"

namespace contextlab {

using json = nlohmann::ordered_json;

Check numeric_check(std::string name, double residual, double tolerance, std::string detail) {
  return Check{std::move(name), std::isfinite(residual) && residual < tolerance, residual,
               tolerance, std::move(detail)};
}

Check exact_check(std::string name, bool holds, std::string detail) {
  return Check{std::move(name), holds, holds ? 0.0 : 1.0, 0.0, std::move(detail)};
}

bool ReportDocument::verdict() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json report_to_json(const ReportDocument& doc) {
  json checks = json::array();
  for (const auto& c : doc.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  return json{{"artifact_version", doc.artifact_version},
              {"kind", doc.kind},
              {"identifier", doc.identifier},
              {"verdict", doc.verdict()},
              {"inputs", doc.inputs},
              {"checks", std::move(checks)},
              {"trace", doc.trace},
              {"details", doc.details}};
}

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + "/" + key + ": " + e.what());
  }
}

}  // namespace

ReportDocument report_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("report: expected a JSON object");
  ReportDocument doc;
  doc.artifact_version = field<std::string>(j, "artifact_version", "report");
  doc.kind = field<std::string>(j, "kind", "report");
  doc.identifier = field<std::string>(j, "identifier", "report");
  doc.inputs = j.contains("inputs") ? j.at("inputs") : json::object();
  doc.details = j.contains("details") ? j.at("details") : json::object();
  doc.trace = j.contains("trace") ? field<std::vector<std::string>>(j, "trace", "report")
                                  : std::vector<std::string>{};
  const json checks = j.contains("checks") ? j.at("checks") : json::array();
  if (!checks.is_array()) throw ParseError("report/checks: expected an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string where = "report/checks/" + std::to_string(i);
    Check c;
    c.name = field<std::string>(checks[i], "name", where);
    c.passed = field<bool>(checks[i], "passed", where);
    c.residual = field<double>(checks[i], "residual", where);
    c.tolerance = field<double>(checks[i], "tolerance", where);
    c.detail = checks[i].contains("detail") ? field<std::string>(checks[i], "detail", where) : "";
    doc.checks.push_back(std::move(c));
  }
  return doc;
}

std::string render_markdown(const ReportDocument& doc) {
  std::ostringstream out;
  out << "# " << doc.kind << ": " << doc.identifier << "\n\n";
  out << "- version: " << doc.artifact_version << "\n";
  out << "- verdict: **" << (doc.verdict() ? "PASS" : "FAIL") << "**\n";
  if (!doc.inputs.empty()) out << "- inputs: `" << doc.inputs.dump() << "`\n";
  out << "\n## Checks\n\n| check | result | residual | tolerance |\n|---|---|---|---|\n";
  for (const auto& c : doc.checks) {
    out << "| " << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << " | " << (c.passed ? "pass" : "FAIL") << " | " << c.residual << " | " << c.tolerance
        << " |\n";
  }
  if (!doc.trace.empty()) {
    out << "\n## Derivation\n\n";
    for (const auto& line : doc.trace) out << "- " << line << "\n";
  }
  if (!doc.details.empty()) {
    out << "\n## Details\n\n```json\n" << doc.details.dump(2) << "\n```\n";
  }
  return out.str();
}

}  // namespace contextlab
