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

#include <algorithm>
#include <random>

#include "contextlab/errors.hpp"
#include "contextlab/magic.hpp"
#include "oracle.hpp"

using namespace contextlab;

namespace {

const LineCheck& line(const ProductVerification& v, const std::string& label) {
  return *std::find_if(v.lines.begin(), v.lines.end(), [&](const LineCheck& l) { return l.label == label; });
}

}  // namespace

TEST_SUITE("magic") {

TEST_CASE("two-qubit square line products") {
  const auto cfg = pm_square_2q();
  const auto v = verify_quantum_products(cfg);
  CHECK(v.all_match);
  CHECK(v.max_matrix_residual < 1e-12);
  // row 1 and column 3 from the hand-built matrices
  const oracle::M row1 = oracle::paulis("XI") * oracle::paulis("IX") * oracle::paulis("XX");
  const oracle::M col3 = oracle::paulis("XX") * oracle::paulis("ZZ") * oracle::paulis("YY");
  CHECK(row1.isApprox(oracle::M::Identity(4, 4)));
  CHECK(col3.isApprox(-oracle::M::Identity(4, 4)));
  CHECK(line(v, "row 1").computed_phase == 0);
  CHECK(line(v, "column 3").computed_phase == 2);
  for (const char* r : {"row 1", "row 2", "row 3"}) CHECK(line(v, r).computed_phase == 0);
  CHECK(line(v, "column 1").computed_phase == 0);
  CHECK(line(v, "column 2").computed_phase == 0);
  const auto parity = parity_contradiction(cfg);
  CHECK(parity.structure == ParityStructure::kEven);
  CHECK(parity.grand_phase == 2);
  CHECK(parity.contradiction);
}

TEST_CASE("three-qubit square") {
  const auto cfg = pm_square_3q();
  CHECK(cfg.nodes()[0].label == "X12");
  CHECK(cfg.nodes()[4].label == "Z23");
  CHECK(cfg.nodes()[8].label == "Y13");
  const auto v = verify_quantum_products(cfg);
  CHECK(v.all_match);
  for (int c = 0; c < 3; ++c) {
    const char* pairs[] = {"XXI", "IXX", "XIX"};
    std::string zs = pairs[c], ys = pairs[c];
    std::replace(zs.begin(), zs.end(), 'X', 'Z');
    std::replace(ys.begin(), ys.end(), 'X', 'Y');
    const oracle::M col = oracle::paulis(pairs[c]) * oracle::paulis(zs) * oracle::paulis(ys);
    CHECK(col.isApprox(-oracle::M::Identity(8, 8)));
    CHECK(line(v, "column " + std::to_string(c + 1)).computed_phase == 2);
  }
  CHECK(check_configuration(cfg).passed());
}

TEST_CASE("odd squares generalize") {
  for (int n : {3, 5}) {
    const auto r = check_configuration(pm_square_odd(n));
    CHECK(r.passed());
    CHECK(r.parity.grand_phase == 2);
  }
  CHECK_THROWS_AS(pm_square_odd(4), ContractViolation);
}

TEST_CASE("qudit configuration for the triangle") {
  for (int d : {2, 4}) {
    const auto cfg = qudit_config(triangle_ghz(d));
    // row 2 is {Z_N1, Z_N2, Z_N3, I}
    const auto& row2 = cfg.lines()[1];
    REQUIRE(row2.members.size() == 4);
    CHECK(cfg.nodes()[static_cast<std::size_t>(row2.members[0].node)].label == "Z_N1");
    CHECK(cfg.nodes()[static_cast<std::size_t>(row2.members[3].node)].op.is_identity());
    const auto r = check_configuration(cfg);
    CHECK(r.passed());
    CHECK(r.parity.structure == ParityStructure::kDaggerPaired);
    CHECK(r.parity.grand_phase == d);
    CHECK(r.products.lines[2].computed_phase == d);
  }
}

TEST_CASE("reconstructed figures") {
  const auto tri = wa_triangle_3q();
  CHECK(tri.reconstructed());
  CHECK(tri.nodes().size() == 18);
  CHECK(tri.lines().size() == 12);
  for (int k : tri.occurrences()) CHECK(k == 2);
  CHECK(check_configuration(tri).passed());

  const auto star = pentagram_3q();
  CHECK(star.reconstructed());
  CHECK(star.nodes().size() == 10);
  for (int k : star.occurrences()) CHECK(k == 2);
  CHECK(check_configuration(star).passed());
}

TEST_CASE("line order does not change the product") {
  std::mt19937_64 rng(4);
  for (const auto& cfg : builtin_configurations()) {
    const auto base = verify_quantum_products(cfg);
    auto lines = cfg.lines();
    for (auto& l : lines) std::shuffle(l.members.begin(), l.members.end(), rng);
    const MagicConfiguration shuffled(cfg.name(), cfg.nodes(), lines);
    const auto v = verify_quantum_products(shuffled);
    for (std::size_t k = 0; k < lines.size(); ++k) CHECK(v.lines[k].computed_phase == base.lines[k].computed_phase);
  }
}

TEST_CASE("malformed configurations") {
  const std::vector<MagicNode> xz = {{"X1", parse_weyl("X1", 1, 2)}, {"Z1", parse_weyl("Z1", 1, 2)}};
  CHECK_THROWS_AS(MagicConfiguration("bad", xz, {{"l", {{0, false}, {1, false}}, 0}, {"m", {{0, false}, {1, false}}, 0}}),
                  MalformedConfiguration);
  const std::vector<MagicNode> xx = {{"X1", parse_weyl("X1", 2, 2)}, {"X2", parse_weyl("X2", 2, 2)}};
  CHECK_THROWS_AS(MagicConfiguration("lonely", xx, {{"l", {{0, false}, {1, false}}, 0}}), MalformedConfiguration);
  CHECK_THROWS_AS(MagicConfiguration("range", xx, {{"l", {{0, false}, {5, false}}, 0}}), MalformedConfiguration);
  const MagicConfiguration not_phase("np", xx, {{"l", {{0, false}, {1, false}}, 0}, {"m", {{0, false}, {1, false}}, 0}});
  CHECK_THROWS_AS(verify_quantum_products(not_phase), MalformedConfiguration);
}

TEST_CASE("unpaired qudit occurrences are not a parity proof") {
  // Z on a qutrit used twice: Z^2 != I, so values need not multiply to 1.
  const std::vector<MagicNode> nodes = {{"Z", parse_weyl("Z1", 1, 3)}, {"Zsq", parse_weyl("Z1^2", 1, 3)}};
  const MagicConfiguration cfg("qutrit", nodes, {{"a", {{0, false}, {1, false}}, 0}, {"b", {{0, false}, {1, false}}, 0}});
  const auto p = parity_contradiction(cfg);
  CHECK(p.structure == ParityStructure::kNone);
  CHECK_FALSE(p.contradiction);
}

}
