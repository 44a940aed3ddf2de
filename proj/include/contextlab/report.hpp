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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace contextlab {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// One pass/fail verdict with the residual it was judged on. Symbolic checks
/// carry residual 0 or 1 and tolerance 0.
struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;

  friend bool operator==(const Check&, const Check&) = default;
};

/// Check whose residual must stay below `tolerance`.
Check numeric_check(std::string name, double residual, double tolerance, std::string detail = {});
/// Check on an exact (symbolic or integer) condition.
Check exact_check(std::string name, bool holds, std::string detail = {});

/// Machine-readable verification report. The overall verdict is the
/// conjunction of `checks`.
struct ReportDocument {
  std::string artifact_version = kArtifactVersion;
  std::string kind;
  std::string identifier;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::vector<std::string> trace;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool verdict() const;
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

nlohmann::ordered_json report_to_json(const ReportDocument& doc);
/// Throws ParseError on a missing or mistyped field.
ReportDocument report_from_json(const nlohmann::ordered_json& j);
std::string render_markdown(const ReportDocument& doc);

}  // namespace contextlab
