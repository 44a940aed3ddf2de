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

#include <random>

#include "contextlab/errors.hpp"
#include "contextlab/scenarios.hpp"
#include "oracle.hpp"

using namespace contextlab;

namespace {

const int kPairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};

// (I + s Z_a Z_b) / 2 on three qubits
oracle::M zz_projector(int a, int b, int sign) {
  const oracle::M zz = oracle::on_site(oracle::pauli('Z'), a, 3) * oracle::on_site(oracle::pauli('Z'), b, 3);
  return (oracle::M::Identity(8, 8) + double(sign) * zz) / 2.0;
}

oracle::V x_state(const Signs& s) {
  return oracle::ket({s[0] > 0 ? oracle::plus : oracle::minus, s[1] > 0 ? oracle::plus : oracle::minus,
                      s[2] > 0 ? oracle::plus : oracle::minus});
}

oracle::V y_state(const Signs& t) {
  return oracle::ket({t[0] > 0 ? oracle::y_plus : oracle::y_minus, t[1] > 0 ? oracle::y_plus : oracle::y_minus,
                      t[2] > 0 ? oracle::y_plus : oracle::y_minus});
}

Signs signs_of(int bits) { return {bits & 4 ? -1 : 1, bits & 2 ? -1 : 1, bits & 1 ? -1 : 1}; }

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("original pigeonhole amplitudes match the oracle") {
  const auto r = pigeonhole_original();
  CHECK(r.passed());
  CHECK(r.contradiction);
  const oracle::V psi_i = x_state({1, 1, 1}), psi_f = y_state({1, 1, 1});
  const char* names[] = {"Z12", "Z23", "Z13"};
  for (int p = 0; p < 3; ++p) {
    const auto& cv = r.context(names[p]);
    const auto* plus = cv.find(std::vector<int>{0});
    const auto* minus = cv.find(std::vector<int>{2});
    REQUIRE(plus);
    REQUIRE(minus);
    const auto want_plus = oracle::braket(psi_i, zz_projector(kPairs[p][0], kPairs[p][1], 1), psi_f);
    const auto want_minus = oracle::braket(psi_i, zz_projector(kPairs[p][0], kPairs[p][1], -1), psi_f);
    CHECK(std::abs(want_plus) < 1e-12);
    CHECK(std::abs(plus->amplitude - want_plus) < 1e-12);
    CHECK(std::abs(minus->amplitude - want_minus) < 1e-12);
    CHECK(minus->status == OutcomeStatus::kForced);
    CHECK(*minus->probability == doctest::Approx(1.0).epsilon(1e-12));
  }
  REQUIRE(r.classical);
  CHECK(r.classical->configurations == 8);
  CHECK(r.classical->consistent == 0);
}

TEST_CASE("state-independent pigeonhole over all sign tuples") {
  const auto reports = sweep_pigeonhole_state_independent();
  REQUIRE(reports.size() == 64);
  for (int k = 0; k < 64; ++k) {
    const Signs s = signs_of(k >> 3), t = signs_of(k & 7);
    const auto& r = reports[static_cast<std::size_t>(k)];
    CHECK(r.passed());
    CHECK(r.feasible);
    int parity = 1;
    for (int p = 0; p < 3; ++p) {
      const int a = kPairs[p][0], b = kPairs[p][1];
      const int v = s[a] * s[b] * t[a] * t[b];
      parity *= v;
      const auto want = oracle::braket(x_state(s), zz_projector(a, b, v), y_state(t));
      CHECK(std::abs(want) < 1e-12);
      const char* names[] = {"Z12", "Z23", "Z13"};
      CHECK(r.value(std::string("v") + (names[p] + 1)) == v);
    }
    CHECK(parity == 1);
    CHECK(r.contradiction);
  }
}

TEST_CASE("magic-square pigeonhole on whole subspaces") {
  const auto r = magic_square_pigeonhole();
  CHECK(r.passed());
  // +1 spaces of the X pairs and Y pairs from the hand-built matrices
  oracle::M p_pre = oracle::M::Identity(8, 8), p_post = oracle::M::Identity(8, 8);
  for (const auto& [a, b] : kPairs) {
    p_pre = p_pre * (oracle::M::Identity(8, 8) + oracle::on_site(oracle::pauli('X'), a, 3) * oracle::on_site(oracle::pauli('X'), b, 3)) / 2.0;
    p_post = p_post * (oracle::M::Identity(8, 8) + oracle::on_site(oracle::pauli('Y'), a, 3) * oracle::on_site(oracle::pauli('Y'), b, 3)) / 2.0;
  }
  CHECK(std::lround(p_pre.trace().real()) == 2);
  for (const auto& [a, b] : kPairs) {
    const oracle::M sandwich = p_pre * zz_projector(a, b, 1) * p_post;
    CHECK(Eigen::JacobiSVD<oracle::M>(sandwich).singularValues()(0) < 1e-12);
  }
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    const auto pre = random_state_in(p_pre, rng), post = random_state_in(p_post, rng);
    const auto v = magic_square_pigeonhole(pre, post);
    CHECK(v.passed());
  }
  CHECK_THROWS_AS(magic_square_pigeonhole(StateVector(x_state({1, 1, -1})), std::nullopt), ContractViolation);
}

TEST_CASE("Cheshire cat forced values follow the closed form") {
  const auto reports = sweep_cheshire_cat();
  REQUIRE(reports.size() == 16);
  for (int k = 0; k < 16; ++k) {
    const int alpha = (k >> 3) & 1, beta = (k >> 2) & 1, mu = (k >> 1) & 1, nu = k & 1;
    const auto& r = reports[static_cast<std::size_t>(k)];
    CHECK(r.passed());
    const int u = (beta + nu) % 2, v = (alpha + mu) % 2, w = (alpha + beta + mu + nu) % 2;
    CHECK(r.value("u") == u);
    CHECK(r.value("v") == v);
    CHECK(r.value("w") == w);
    CHECK(r.context("Z1").forced()->outcome[0] == 2 * u);
    CHECK(r.context("X2").forced()->outcome[0] == 2 * v);
    CHECK(r.context("Z1X2").find(std::vector<int>{2 * w})->status == OutcomeStatus::kForbidden);
    CHECK(r.contradiction);
  }
  // state-dependent amplitudes from the oracle
  const oracle::V phi = (oracle::ket({oracle::zero, oracle::zero}) + oracle::ket({oracle::one, oracle::one})).normalized();
  const oracle::V post = oracle::ket({oracle::plus, oracle::zero});
  const oracle::M i4 = oracle::M::Identity(4, 4);
  const oracle::M z1 = oracle::kron(oracle::pauli('Z'), oracle::pauli('I'));
  const oracle::M x2 = oracle::kron(oracle::pauli('I'), oracle::pauli('X'));
  CHECK(std::abs(oracle::braket(phi, (i4 - z1) / 2.0, post)) < 1e-12);
  CHECK(std::abs(oracle::braket(phi, (i4 - x2) / 2.0, post)) < 1e-12);
  CHECK(std::abs(oracle::braket(phi, (i4 + z1 * x2) / 2.0, post)) < 1e-12);
  const auto r = cheshire_cat();
  CHECK(std::abs(r.context("Z1X2").find(std::vector<int>{0})->amplitude) < 1e-12);
  CHECK_THROWS_AS(cheshire_cat_state_independent(2, 0, 0, 0), ContractViolation);
}

TEST_CASE("GHZ pentagram feasibility and forced pairs") {
  for (const auto& r : sweep_ghz_pentagram()) CHECK(r.passed());
  // oracle |G> for G_a = X_a Z_b Z_c at signs s
  for (int k = 0; k < 64; ++k) {
    const Signs s = signs_of(k >> 3), t = signs_of(k & 7);
    const auto r = ghz_pentagram(s, t);
    const std::vector<oracle::M> gens = {oracle::paulis("XZZ"), oracle::paulis("ZXZ"), oracle::paulis("ZZX")};
    oracle::M p = oracle::M::Identity(8, 8);
    for (int a = 0; a < 3; ++a) p = p * (oracle::M::Identity(8, 8) + double(s[a]) * gens[a]) / 2.0;
    const double overlap = std::sqrt(std::abs(oracle::braket(x_state(t), p, x_state(t))));
    const bool feasible = s[0] * s[1] * s[2] * t[0] * t[1] * t[2] == -1;
    CHECK((overlap > 1e-10) == feasible);
    CHECK(r.feasible == feasible);
    if (!feasible) {
      CHECK(r.contexts.empty());
      continue;
    }
    CHECK(r.contradiction);
    CHECK(r.value("v12") == s[2] * t[2]);
    CHECK(r.value("v23") == s[0] * t[0]);
    CHECK(r.value("v13") == s[1] * t[1]);
  }
}

TEST_CASE("qudit pigeonhole on the qubit triangle") {
  const auto graph = triangle_ghz(2);
  int feasible = 0;
  for (const auto& r : sweep_qudit_pigeonhole(graph)) {
    CHECK(r.passed());
    feasible += r.feasible;
    if (r.feasible) CHECK(r.contradiction);
  }
  CHECK(feasible == 32);
}

TEST_CASE("qudit pigeonhole at d = 4 forces S_a = g_a - h_a") {
  const auto graph = triangle_ghz(4);
  // G_a^2 = X_a^2 also ties g_a and h_a mod 2, besides sum h = sum g + 2
  const int g[] = {1, 0, 3}, h[] = {3, 2, 1};
  const auto r = qudit_pigeonhole(graph, g, h);
  REQUIRE(r.feasible);
  CHECK(r.passed());
  CHECK(r.value("S1") == 2);
  CHECK(r.value("S2") == 2);
  CHECK(r.value("S3") == 2);
  CHECK(r.contradiction);
  const int bad_h[] = {0, 0, 0};
  const auto infeasible = qudit_pigeonhole(graph, g, bad_h);
  CHECK_FALSE(infeasible.feasible);
  CHECK(infeasible.passed());
  CHECK_THROWS_AS(qudit_pigeonhole(triangle(4, 1), g, h), ContractViolation);
}

TEST_CASE("qudit product scenario always contradicts the post-selection") {
  for (int d : {2, 4}) {
    std::mt19937_64 rng(d);
    std::uniform_int_distribution<int> e(0, d - 1);
    const auto graph = triangle_ghz(d);
    for (int trial = 0; trial < 8; ++trial) {
      const int s[] = {e(rng), e(rng), e(rng)}, h[] = {e(rng), e(rng), e(rng)};
      const auto r = qudit_product_prepost(graph, s, h);
      CHECK(r.passed());
      CHECK(r.contradiction);
      CHECK(r.value("xv_derived") == (r.value("xv_post") + d / 2) % d);
    }
  }
}

TEST_CASE("success probability rises from 1/4 to 1") {
  const auto p = postselection_success();
  CHECK(std::abs(p.single_outcome - 0.25) < 1e-12);
  CHECK(std::abs(p.all_outcomes - 1.0) < 1e-12);
  CHECK(std::abs(p.increase_percent - 300.0) < 1e-9);
  CHECK(success_probability_report().passed());
}

}
