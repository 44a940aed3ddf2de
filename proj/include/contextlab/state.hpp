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

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "contextlab/errors.hpp"
#include "contextlab/weyl.hpp"

namespace contextlab {

using Matrix = MatrixC<double>;
using StateVector = VectorC<double>;

inline constexpr double kVanishTolerance = 1e-10;
inline constexpr double kClusterTolerance = 1e-8;

/// Numeric knobs shared by every verification routine.
struct VerifyOptions {
  double tolerance = kVanishTolerance;  // |z| below this counts as zero
  std::size_t max_dim = kDefaultMaxDim;
};

// ---------------------------------------------------------------------------
// Spectral decomposition

struct SpectralComponent {
  int tau_exponent;  // eigenvalue = tau^exponent
  std::complex<double> eigenvalue;
  Matrix projector;
};

/// Eigenvalue exponents (tau units) that a Weyl operator can take: the d-th
/// roots of its d-th power, which is always a pure phase.
std::vector<int> candidate_eigen_exponents(const WeylOperator& op);

/// Projector onto the tau^e eigenspace of `op`, from the polynomial
/// (1/d) sum_k (tau^{-e} op)^k. Zero when tau^e is not in the spectrum.
Matrix eigenprojector(const WeylOperator& op, int tau_exponent,
                      std::size_t max_dim = kDefaultMaxDim);

/// Nonzero eigenprojectors of a Weyl operator, ordered by exponent.
std::vector<SpectralComponent> spectral_projectors(const WeylOperator& op,
                                                   std::size_t max_dim = kDefaultMaxDim);

struct Eigenspace {
  std::complex<double> eigenvalue;
  Matrix projector;
};

/// Spectral projectors of an arbitrary normal matrix via complex Schur form,
/// eigenvalues clustered within `cluster_tol`. Throws ContractViolation if the
/// input is not normal.
std::vector<Eigenspace> spectral_projectors(const Matrix& normal,
                                            double cluster_tol = kClusterTolerance);

// ---------------------------------------------------------------------------
// Contexts and joint eigenspaces

/// Joint outcome of a context: one eigenvalue exponent (tau units) per
/// observable, with its dense projector.
struct OutcomeProjector {
  MeasurementContext context;
  std::vector<int> outcome;
  Matrix matrix;
};

OutcomeProjector outcome_projector(const MeasurementContext& ctx, std::span<const int> outcome,
                                   std::size_t max_dim = kDefaultMaxDim);

/// Every joint outcome whose eigenspace is nonempty, in lexicographic order of
/// exponents. The projectors are complete and mutually orthogonal.
std::vector<OutcomeProjector> joint_outcomes(const MeasurementContext& ctx,
                                             std::size_t max_dim = kDefaultMaxDim);

/// Orthonormal basis of a projector's range (eigenvalue > 1/2).
std::vector<StateVector> range_basis(const Matrix& projector);

/// Orthonormal basis of the joint eigenspace; empty when infeasible.
std::vector<StateVector> joint_eigenspace(const MeasurementContext& ctx,
                                          std::span<const int> outcome,
                                          std::size_t max_dim = kDefaultMaxDim);

/// The unique joint eigenvector; throws ContractViolation unless the joint
/// eigenspace is one-dimensional.
StateVector joint_eigenstate(const MeasurementContext& ctx, std::span<const int> outcome,
                             std::size_t max_dim = kDefaultMaxDim);

// ---------------------------------------------------------------------------
// Transition amplitudes and post-selection

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw IncompatibleOperands(std::string(what) + ": dimension " + std::to_string(a) +
                               " vs " + std::to_string(b));
  }
}

/// <psi_i| P |psi_f>
template <typename DerivedI, typename DerivedP, typename DerivedF>
std::complex<double> amplitude(const Eigen::MatrixBase<DerivedI>& psi_i,
                               const Eigen::MatrixBase<DerivedP>& projector,
                               const Eigen::MatrixBase<DerivedF>& psi_f) {
  require_same_dim(psi_i.rows(), projector.rows(), "amplitude");
  require_same_dim(projector.cols(), psi_f.rows(), "amplitude");
  return (psi_i.adjoint() * (projector * psi_f)).value();
}

inline std::complex<double> amplitude(const StateVector& psi_i, const OutcomeProjector& p,
                                      const StateVector& psi_f) {
  return amplitude(psi_i, p.matrix, psi_f);
}

/// ABL rule: P(k) = |<psi_f|P_k|psi_i>|^2 / sum_j |<psi_f|P_j|psi_i>|^2, with
/// P(k) = 0 exactly when the amplitude is below `tolerance`. Throws
/// ContractViolation for an incomplete or non-orthogonal family and
/// UndefinedDistribution when every amplitude vanishes.
std::vector<double> abl_probability(const StateVector& psi_i, const StateVector& psi_f,
                                    std::span<const Matrix> projectors,
                                    double tolerance = kVanishTolerance);

/// |<psi_f|psi_i>|^2
double postselection_probability(const StateVector& psi_i, const StateVector& psi_f);
/// <psi_i| P |psi_i> for post-selection onto a subspace.
double postselection_probability(const StateVector& psi_i, const Matrix& post_subspace);

/// Largest singular value.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m.eval());
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// State helpers

/// |k_1 k_2 ... k_n>, site 0 most significant.
StateVector basis_state(std::span<const int> digits, int dim,
                        std::size_t max_dim = kDefaultMaxDim);
StateVector tensor(std::initializer_list<StateVector> factors);
StateVector tensor(std::span<const StateVector> factors);
/// Throws ContractViolation when | |v| - 1 | > tolerance.
void require_unit(const StateVector& v, double tolerance = kVanishTolerance);
/// Column-vector states sharing a global phase compare equal.
bool same_ray(const StateVector& a, const StateVector& b, double tolerance = kVanishTolerance);

}  // namespace contextlab
