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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "contextlab/ghz.hpp"
#include "contextlab/ks.hpp"
#include "contextlab/magic.hpp"
#include "contextlab/report.hpp"
#include "contextlab/scenarios.hpp"

namespace contextlab {

using Json = nlohmann::ordered_json;

/// Throws ParseError with the line and column of a syntax error.
Json parse_json_text(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Ray sets: {"dimension": 8, "rays": [{"label": "a", "amplitudes": [[re, im], ...]}, ...],
// "bases": [[0, 1, ...], ...]}. A ray may also be a bare amplitude list.
Json rayset_to_json(const RaySet& rs);
RaySet rayset_from_json(const Json& j);

// Magic configurations: {"name", "n", "d", "reconstructed", "nodes": [{"label",
// "operator"}], "lines": [{"label", "nodes", "dagger", "claimed_phase"}]}.
// Line nodes are labels or 0-based indices; claimed phases are tau exponents.
Json config_to_json(const MagicConfiguration& cfg);
MagicConfiguration config_from_json(const Json& j);

// Graphs: {"n": 3, "d": 2, "edges": [[1, 2, 1], ...]} with 1-based vertices.
Json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const Json& j);

ReportDocument scenario_document(const ScenarioReport& r);
/// One aggregated document; every member report's checks are prefixed with
/// its parameters.
ReportDocument sweep_document(const std::string& name, const std::vector<ScenarioReport>& reports);
ReportDocument ks_document(const std::string& identifier, const RaySet& rs, const Preassignment& pre,
                           const KSResult& result, std::optional<bool> expect_sat);
ReportDocument config_document(const MagicConfiguration& cfg, const ConfigurationReport& r);
/// GHZ predicate, stabilizer identities and, when d^n fits, the graph state.
ReportDocument ghz_document(const std::string& identifier, const WeightedGraph& g,
                            const VerifyOptions& opts = {});

}  // namespace contextlab
