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

#include <cmath>
#include <random>

#include "contextlab/errors.hpp"
#include "contextlab/ghz.hpp"
#include "oracle.hpp"

using namespace contextlab;

namespace {

WeightedGraph cycle4(int d) {
  const Edge edges[] = {{0, 1, 1}, {1, 2, d - 1}, {2, 3, 1}, {3, 0, d - 1}};
  return WeightedGraph::from_edges(4, d, edges);
}

// G_a = X_a prod_b Z_b^{Gamma_ab} from the hand-built matrices
oracle::M oracle_generator(const WeightedGraph& g, int a) {
  const int n = g.vertices(), d = g.dim();
  oracle::M out = oracle::on_site(oracle::shift(d), a, n);
  for (int b = 0; b < n; ++b)
    for (int k = 0; k < g.weight(a, b); ++k) out = out * oracle::on_site(oracle::clock(d), b, n);
  return out;
}

}  // namespace

TEST_SUITE("ghz") {

TEST_CASE("GHZ predicate on triangles") {
  const auto d2 = is_ghz_graph(triangle(2, 1));
  CHECK(d2.is_ghz);
  CHECK(d2.vertex_weights == std::vector<int>{0, 0, 0});
  CHECK(d2.total_weight == 1);
  CHECK(d2.omega_w_is_minus_one);
  const auto d3 = is_ghz_graph(triangle(3, 1));
  CHECK_FALSE(d3.is_ghz);
  CHECK(d3.vertex_weights == std::vector<int>{2, 2, 2});
  // weight 1 leaves d_a = 2, nonzero for every d > 2
  for (int d : {4, 5, 6}) CHECK_FALSE(is_ghz_graph(triangle(d, 1)).is_ghz);
  for (int d : {2, 4, 6, 8}) {
    const auto v = is_ghz_graph(triangle_ghz(d));
    CHECK(v.is_ghz);
    CHECK(v.omega_w_is_minus_one);
  }
}

TEST_CASE("alternating 4-cycle") {
  for (int d : {3, 4, 6}) {
    const auto v = is_ghz_graph(cycle4(d));
    CHECK(v.vertex_weights == std::vector<int>{0, 0, 0, 0});
    CHECK(v.total_weight == 0);
    CHECK_FALSE(v.is_ghz);
  }
}

TEST_CASE("graph validation") {
  Eigen::MatrixXi asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(WeightedGraph(2, asym), ContractViolation);
  Eigen::MatrixXi loop(2, 2);
  loop << 1, 0, 0, 0;
  CHECK_THROWS_AS(WeightedGraph(2, loop), ContractViolation);
}

TEST_CASE("stabilizer generators") {
  const auto gens = stabilizer_generators(triangle_ghz(2));
  CHECK(gens[0] == parse_weyl("X1 Z2 Z3", 3, 2));
  CHECK(gens[1] == parse_weyl("Z1 X2 Z3", 3, 2));
  CHECK(gens[2] == parse_weyl("Z1 Z2 X3", 3, 2));
  const auto edgeless = stabilizer_generators(WeightedGraph(3, 4));
  for (int a = 0; a < 3; ++a) CHECK(edgeless[static_cast<std::size_t>(a)] == WeylOperator::shift(3, 4, a));
  const auto g4 = triangle_ghz(4);
  for (int a = 0; a < 3; ++a) CHECK(to_matrix(stabilizer_generators(g4)[static_cast<std::size_t>(a)]).isApprox(oracle_generator(g4, a)));
}

TEST_CASE("product of generators for arbitrary weightings") {
  std::mt19937_64 rng(17);
  for (int d : {2, 3, 4, 5}) {
    std::uniform_int_distribution<int> w(0, d - 1);
    for (int trial = 0; trial < 30; ++trial) {
      Eigen::MatrixXi gamma = Eigen::MatrixXi::Zero(4, 4);
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) gamma(a, b) = gamma(b, a) = w(rng);
      const WeightedGraph g(d, gamma);
      const auto gens = stabilizer_generators(g);
      for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = 0; b < gens.size(); ++b) CHECK(commutes(gens[a], gens[b]));
      const auto v = is_ghz_graph(g);
      const WeylOperator product = weyl_product(gens, 4, d);
      // w^{-W} X_V prod Z_a^{d_a}, phase in tau units
      const WeylOperator expected(d, {1, 1, 1, 1}, v.vertex_weights, (2 * d - 2 * v.total_weight) % (2 * d));
      CHECK(product == expected);
      if (d <= 3 && trial < 5) {  // dense check kept small
        oracle::M m = oracle::M::Identity(int(std::pow(d, 4)), int(std::pow(d, 4)));
        for (int a = 0; a < 4; ++a) m = m * oracle_generator(g, a);
        CHECK((to_matrix(product) - m).cwiseAbs().maxCoeff() < 1e-10);
      }
      if (v.is_ghz) CHECK(product == global_shift(g).negated());
    }
  }
}

TEST_CASE("graph states") {
  for (int d : {2, 4}) {
    const auto g = triangle_ghz(d);
    const StateVector state = graph_state(g);
    CHECK(std::abs(state.norm() - 1.0) < 1e-12);
    for (int a = 0; a < 3; ++a) CHECK((oracle_generator(g, a) * state - state).norm() < 1e-10);
  }
  const StateVector plus = graph_state(WeightedGraph(1, 2));
  CHECK(same_ray(plus, oracle::plus));
  const auto g2 = triangle_ghz(2);
  const MeasurementContext gens(stabilizer_generators(g2));
  CHECK(same_ray(graph_state(g2), joint_eigenstate(gens, std::vector<int>{0, 0, 0})));
  const int flipped[] = {0, 0, 1};
  CHECK(std::abs(eigenstate_family(g2, flipped).dot(graph_state(g2))) < 1e-12);
  const StateVector projected = graph_state_by_projection(triangle_ghz(4));
  CHECK(same_ray(projected, graph_state(triangle_ghz(4))));
}

TEST_CASE("joint eigenspaces of the generators are one-dimensional") {
  for (int d : {2, 4}) {
    const auto g = triangle_ghz(d);
    std::vector<oracle::M> ops;
    for (int a = 0; a < 3; ++a) ops.push_back(oracle_generator(g, a));
    for (int k = 0; k < d * d * d; ++k) {
      const std::vector<oracle::C> ev = {oracle::omega(k / (d * d), d), oracle::omega((k / d) % d, d), oracle::omega(k % d, d)};
      CHECK(oracle::joint_rank(ops, ev) == 1);
    }
  }
}

TEST_CASE("four-vertex family and enumeration") {
  for (int d : {2, 4, 6}) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const int c = ((d / 2 - a - b) % d + 2 * d) % d;
        const auto g = k4_ghz(d, a, b, c);
        CHECK(is_ghz_graph(g).is_ghz);
      }
  }
  const auto all3 = enumerate_ghz_graphs(3, 4);
  REQUIRE(all3.size() == 1);
  CHECK(all3.front() == triangle_ghz(4));
  for (const auto& g : enumerate_ghz_graphs(4, 4)) CHECK(is_ghz_graph(g).is_ghz);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_ghz_graph(trial % 2 ? 3 : 4, trial % 3 ? 2 : 4, rng);
    CHECK(weyl_product(stabilizer_generators(g), g.vertices(), g.dim()) == global_shift(g).negated());
  }
  CHECK_THROWS_AS(triangle_ghz(3), ContractViolation);
}

}
