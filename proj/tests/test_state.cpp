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
#include "oracle.hpp"

using namespace contextlab;

TEST_SUITE("state") {

TEST_CASE("joint outcomes of {Z1, Z2} are the computational projectors") {
  const MeasurementContext ctx({parse_weyl("Z1", 2, 2), parse_weyl("Z2", 2, 2)});
  const auto outcomes = joint_outcomes(ctx);
  REQUIRE(outcomes.size() == 4);
  Matrix sum = Matrix::Zero(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const Matrix& p = outcomes[k].matrix;
    CHECK(std::abs(p.trace() - 1.0) < 1e-12);
    CHECK((p * p - p).norm() < 1e-12);
    sum += p;
  }
  CHECK(sum.isApprox(Matrix::Identity(4, 4)));
  CHECK(outcomes[0].outcome == std::vector<int>{0, 0});
  CHECK(std::abs(outcomes[0].matrix(0, 0) - 1.0) < 1e-12);
  CHECK(outcomes[3].outcome == std::vector<int>{2, 2});
  CHECK(std::abs(outcomes[3].matrix(3, 3) - 1.0) < 1e-12);
}

TEST_CASE("Weyl eigenprojectors match the kernel oracle") {
  std::mt19937_64 rng(5);
  for (int d : {2, 3, 4}) {
    std::uniform_int_distribution<int> e(0, d - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const WeylOperator op(d, {e(rng), e(rng)}, {e(rng), e(rng)}, 2 * e(rng));
      const oracle::M u = to_matrix(op);
      int total = 0;
      for (const auto& c : spectral_projectors(op)) {
        CHECK((c.projector - oracle::eigenprojector(u, c.eigenvalue)).norm() < 1e-9);
        total += static_cast<int>(std::lround(c.projector.trace().real()));
      }
      CHECK(total == d * d);
    }
  }
}

TEST_CASE("Schur projectors of a normal matrix") {
  const Matrix h = oracle::paulis("XX") + oracle::paulis("ZZ");  // eigenvalues 2, 0, 0, -2
  const auto spaces = spectral_projectors(h);
  REQUIRE(spaces.size() == 3);
  Matrix sum = Matrix::Zero(4, 4);
  for (const auto& s : spaces) {
    CHECK((s.projector - oracle::eigenprojector(h, s.eigenvalue)).norm() < 1e-9);
    sum += s.projector;
  }
  CHECK(sum.isApprox(Matrix::Identity(4, 4)));
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(spectral_projectors(skew), ContractViolation);
}

TEST_CASE("amplitudes conjugate the bra") {
  const StateVector y = oracle::y_plus;
  CHECK(std::abs(amplitude(y, Matrix::Identity(2, 2), y) - 1.0) < 1e-12);
  CHECK(std::abs(amplitude(oracle::plus, oracle::pauli('Y'), y) - oracle::braket(oracle::plus, oracle::pauli('Y'), y)) < 1e-12);
}

TEST_CASE("ABL probabilities") {
  const MeasurementContext z({parse_weyl("Z1", 1, 2)});
  std::vector<Matrix> ps;
  for (const auto& o : joint_outcomes(z)) ps.push_back(o.matrix);
  const auto p = abl_probability(oracle::plus, oracle::y_plus, ps);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));
  // |0> to |+> through Z: the |1> outcome is impossible.
  const auto q = abl_probability(oracle::zero, oracle::plus, ps);
  CHECK(q[0] == 1.0);
  CHECK(q[1] == 0.0);
  CHECK_THROWS_AS(abl_probability(oracle::zero, oracle::one, ps), UndefinedDistribution);
  CHECK_THROWS_AS(abl_probability(oracle::zero, oracle::plus, std::vector<Matrix>{ps[0]}), ContractViolation);
  CHECK_THROWS_AS(abl_probability(oracle::zero, oracle::plus, std::vector<Matrix>{ps[0], ps[0]}), ContractViolation);
}

TEST_CASE("post-selection probabilities") {
  const StateVector phi = (oracle::ket({oracle::zero, oracle::zero}) + oracle::ket({oracle::one, oracle::one})).normalized();
  CHECK(postselection_probability(phi, oracle::ket({oracle::plus, oracle::zero})) == doctest::Approx(0.25));
  CHECK(postselection_probability(phi, Matrix(Matrix::Identity(4, 4))) == doctest::Approx(1.0));
}

TEST_CASE("joint eigenstates") {
  const MeasurementContext bell({parse_weyl("X1 X2", 2, 2), parse_weyl("Z1 Z2", 2, 2)});
  const int zeros[] = {0, 0};
  const StateVector phi = joint_eigenstate(bell, zeros);
  const oracle::V expected = (oracle::ket({oracle::zero, oracle::zero}) + oracle::ket({oracle::one, oracle::one})).normalized();
  CHECK(same_ray(phi, expected));
  const MeasurementContext single({parse_weyl("Z1", 2, 2)});
  CHECK(joint_eigenspace(single, std::vector<int>{0}).size() == 2);
  CHECK_THROWS_AS(joint_eigenstate(single, std::vector<int>{0}), ContractViolation);
  CHECK(joint_eigenspace(single, std::vector<int>{1}).empty());
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(amplitude(oracle::zero, Matrix(Matrix::Identity(4, 4)), oracle::zero), IncompatibleOperands);
  CHECK_THROWS_AS(require_unit(StateVector::Ones(2)), ContractViolation);
  CHECK(operator_norm(oracle::pauli('X')) == doctest::Approx(1.0));
}

}
