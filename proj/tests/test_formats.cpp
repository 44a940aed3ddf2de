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

#include <doctest.h>

#include <string>

#include "contextlab/errors.hpp"
#include "contextlab/formats.hpp"

using namespace contextlab;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("formats") {

TEST_CASE("report documents round-trip") {
  for (const auto& doc : {scenario_document(cheshire_cat()), scenario_document(pigeonhole_original()),
                          ghz_document("tri", triangle_ghz(4))}) {
    const Json j = report_to_json(doc);
    const ReportDocument back = report_from_json(parse_json_text(j.dump(2)));
    CHECK(back == doc);
    CHECK(report_to_json(back).dump() == j.dump());
    CHECK_FALSE(render_markdown(doc).empty());
  }
}

TEST_CASE("ks documents carry the verdict") {
  const RaySet rs = builtin_48_rays();
  const KSResult r = ks_search(rs);
  CHECK(ks_document("b48", rs, {}, r, false).verdict());
  CHECK_FALSE(ks_document("b48", rs, {}, r, true).verdict());
}

TEST_CASE("configurations round-trip") {
  for (const auto& cfg : builtin_configurations()) {
    CAPTURE(cfg.name());
    const MagicConfiguration back = config_from_json(parse_json_text(config_to_json(cfg).dump()));
    CHECK(back.name() == cfg.name());
    CHECK(back.reconstructed() == cfg.reconstructed());
    REQUIRE(back.nodes().size() == cfg.nodes().size());
    for (std::size_t k = 0; k < cfg.nodes().size(); ++k) {
      CHECK(back.nodes()[k].label == cfg.nodes()[k].label);
      CHECK(back.nodes()[k].op == cfg.nodes()[k].op);
    }
    REQUIRE(back.lines().size() == cfg.lines().size());
    for (std::size_t k = 0; k < cfg.lines().size(); ++k) {
      CHECK(back.lines()[k].claimed_phase == cfg.lines()[k].claimed_phase);
      REQUIRE(back.lines()[k].members.size() == cfg.lines()[k].members.size());
      for (std::size_t m = 0; m < cfg.lines()[k].members.size(); ++m) {
        CHECK(back.lines()[k].members[m].node == cfg.lines()[k].members[m].node);
        CHECK(back.lines()[k].members[m].dagger == cfg.lines()[k].members[m].dagger);
      }
    }
  }
}

TEST_CASE("hand-written configuration with labels") {
  const Json j = parse_json_text(R"({
    "name": "mini", "n": 2, "d": 2,
    "nodes": ["X1", "X2", "X1 X2"],
    "lines": [{"label": "a", "nodes": ["X1", "X2", "X1 X2"]},
              {"label": "b", "nodes": [0, 1, 2]}]
  })");
  const auto cfg = config_from_json(j);
  CHECK(cfg.lines()[1].members[2].node == 2);
  const auto r = check_configuration(cfg);
  CHECK(r.products.all_match);
  CHECK_FALSE(r.parity.contradiction);
}

TEST_CASE("ray sets round-trip") {
  for (const RaySet& rs : {builtin_34_rays(), builtin_48_rays()}) {
    const RaySet back = rayset_from_json(parse_json_text(rayset_to_json(rs).dump()));
    REQUIRE(back.size() == rs.size());
    CHECK(back.bases_declared() == rs.bases_declared());
    CHECK(back.bases().size() == rs.bases().size());
    for (int k = 0; k < rs.size(); ++k) {
      CHECK(back.ray(k).label == rs.ray(k).label);
      CHECK((back.ray(k).vector - rs.ray(k).vector).norm() < 1e-12);
    }
    CHECK(ks_search(back).satisfiable == ks_search(rs).satisfiable);
  }
}

TEST_CASE("graphs round-trip") {
  for (const auto& g : {triangle_ghz(2), triangle_ghz(6), k4_ghz(4, 1, 0, 1), WeightedGraph(3, 5)}) {
    CHECK(graph_from_json(parse_json_text(graph_to_json(g).dump())) == g);
  }
}

TEST_CASE("parse errors locate the problem") {
  const std::string msg = error_of([] { parse_json_text("{\n  \"n\": 3,\n  oops\n}", "g.json"); });
  CHECK(msg.find("g.json:3:") != std::string::npos);
  CHECK_THROWS_AS(parse_json_text("[1, 2"), ParseError);
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"n": 3, "d": 2, "edges": [[1, 4, 1]]})")), Error);
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"n": 3})")), Error);
  CHECK_THROWS_AS(config_from_json(parse_json_text(R"({"name": "x", "n": 1, "d": 2, "nodes": ["Q1"], "lines": []})")),
                  Error);
  CHECK_THROWS_AS(rayset_from_json(parse_json_text(R"({"dimension": 2, "rays": [[[1, 0]]]})")), Error);
  CHECK_THROWS_AS(read_json_file("/nonexistent/contextlab.json"), Error);
}

}
