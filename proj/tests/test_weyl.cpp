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
#include "contextlab/state.hpp"
#include "contextlab/weyl.hpp"
#include "oracle.hpp"

using namespace contextlab;

namespace {

WeylOperator random_op(int n, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> exp(0, d - 1), ph(0, 2 * d - 1);
  std::vector<int> x(n), z(n);
  for (int k = 0; k < n; ++k) {
    x[k] = exp(rng);
    z[k] = exp(rng);
  }
  return WeylOperator(d, x, z, ph(rng));
}

// tau^p prod_a X_a^x Z_a^z from the hand-written matrices.
oracle::M oracle_matrix(const WeylOperator& op) {
  const int d = op.dim();
  oracle::M out = oracle::M::Identity(1, 1);
  for (int a = 0; a < op.sites(); ++a) {
    oracle::M site = oracle::M::Identity(d, d);
    for (int k = 0; k < op.x()[a]; ++k) site = site * oracle::shift(d);
    for (int k = 0; k < op.z()[a]; ++k) site = site * oracle::clock(d);
    out = oracle::kron(out, site);
  }
  return std::polar(1.0, std::numbers::pi * op.phase() / d) * out;
}

}  // namespace

TEST_SUITE("weyl") {

TEST_CASE("qubit operators match the Pauli matrices") {
  CHECK(to_matrix(parse_weyl("X1", 1, 2)).isApprox(oracle::pauli('X')));
  CHECK(to_matrix(parse_weyl("Z1", 1, 2)).isApprox(oracle::pauli('Z')));
  CHECK(to_matrix(parse_weyl("Y1", 1, 2)).isApprox(oracle::pauli('Y')));
  CHECK(to_matrix(parse_weyl("X1 Y2 Z3", 3, 2)).isApprox(oracle::paulis("XYZ")));
  CHECK(WeylOperator::pauli_y(1, 0) == parse_weyl("i X1 Z1", 1, 2));
}

TEST_CASE("shift and clock obey XZ = wZX") {
  for (int d : {2, 3, 4, 5}) {
    const auto x = WeylOperator::shift(1, d, 0), z = WeylOperator::clock(1, d, 0);
    CHECK(x * z == (z * x).times_phase(2));
    CHECK(to_matrix(x).isApprox(oracle::shift(d)));
    CHECK(to_matrix(z).isApprox(oracle::clock(d)));
    CHECK(symplectic_product(x, z) == 1);
  }
}

TEST_CASE("products of qubit pairs") {
  const auto x12 = parse_weyl("X1 X2", 2, 2), z12 = parse_weyl("Z1 Z2", 2, 2), y12 = parse_weyl("Y1 Y2", 2, 2);
  CHECK(commutes(x12, z12));
  CHECK(x12 * z12 == y12.negated());
  CHECK((x12 * z12 * y12).is_pure_phase());
  CHECK((x12 * z12 * y12).phase() == 2);
}

TEST_CASE("symbolic products agree with matrices on random pairs") {
  std::mt19937_64 rng(7);
  for (int d : {2, 3, 4}) {
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_op(n, d, rng), b = random_op(n, d, rng);
        const oracle::M ma = oracle_matrix(a), mb = oracle_matrix(b);
        CHECK((oracle_matrix(a * b) - ma * mb).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((to_matrix(a) - ma).cwiseAbs().maxCoeff() < 1e-12);
        const bool matrix_commute = (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-9;
        CHECK(commutes(a, b) == matrix_commute);
        CHECK((oracle_matrix(weyl_dagger(a)) - ma.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("multiplication is associative and d-th powers are phases") {
  std::mt19937_64 rng(11);
  for (int d : {2, 3, 4, 6}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_op(3, d, rng), b = random_op(3, d, rng), c = random_op(3, d, rng);
      CHECK((a * b) * c == a * (b * c));
      const auto p = weyl_pow(a, d);
      CHECK(p.is_pure_phase());
      CHECK(p.phase() % d == 0);
      CHECK((a * weyl_pow(a, -1)).is_identity());
      CHECK(symplectic_product(a, b) == (d - symplectic_product(b, a)) % d);
    }
  }
}

TEST_CASE("parse and format round trip") {
  std::mt19937_64 rng(3);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_op(3, d, rng);
      CHECK(parse_weyl(format_weyl(a), 3, d) == a);
    }
  }
  CHECK(format_weyl(parse_weyl("-Y1 Y2", 2, 2)) == "-Y1 Y2");
  CHECK(format_weyl(WeylOperator(2, 2)) == "I");
  CHECK(parse_weyl("", 2, 3).is_identity());
  CHECK(parse_weyl("w^1 X1^2", 1, 3) == WeylOperator::shift(1, 3, 0, 2).times_phase(2));
}

TEST_CASE("parse errors name the position") {
  CHECK_THROWS_AS(parse_weyl("Y1", 1, 3), ParseError);
  CHECK_THROWS_AS(parse_weyl("X4", 3, 2), ParseError);
  CHECK_THROWS_AS(parse_weyl("X1 Q2", 2, 2), ParseError);
  CHECK_THROWS_AS(parse_weyl("i X1", 1, 3), ParseError);
  try {
    parse_weyl("X1 Q2", 2, 2);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(WeylOperator::shift(2, 2, 0) * WeylOperator::shift(3, 2, 0), IncompatibleOperands);
  CHECK_THROWS_AS(WeylOperator::shift(2, 2, 0) * WeylOperator::shift(2, 3, 0), IncompatibleOperands);
  CHECK_THROWS_AS(hilbert_dim(13, 2), SizeError);
  CHECK(hilbert_dim(12, 2) == 4096);
  CHECK_THROWS_AS(to_matrix(WeylOperator(7, 4)), SizeError);
}

TEST_CASE("measurement contexts need commuting observables") {
  CHECK_THROWS_AS(MeasurementContext({parse_weyl("X1", 1, 2), parse_weyl("Z1", 1, 2)}), ContractViolation);
  CHECK_THROWS_AS(MeasurementContext({}), ContractViolation);
  const MeasurementContext ctx({parse_weyl("X1 X2", 2, 2), parse_weyl("Z1 Z2", 2, 2)});
  CHECK(ctx.labels() == std::vector<std::string>{"X1 X2", "Z1 Z2"});
  CHECK(ctx.sites() == 2);
}

}
