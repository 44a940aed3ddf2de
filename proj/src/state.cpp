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

#include "contextlab/state.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace contextlab {

std::vector<int> candidate_eigen_exponents(const WeylOperator& op) {
  const int d = op.dim();
  const WeylOperator top = weyl_pow(op, d);
  if (!top.is_pure_phase() || top.phase() % d != 0) {
    throw std::logic_error("d-th power of a Weyl operator is not tau^{d m}");
  }
  const int base = top.phase() / d;
  std::vector<int> out;
  out.reserve(d);
  for (int j = 0; j < d; ++j) out.push_back((base + 2 * j) % (2 * d));
  std::sort(out.begin(), out.end());
  return out;
}

Matrix eigenprojector(const WeylOperator& op, int tau_exponent, std::size_t max_dim) {
  const int d = op.dim();
  const std::size_t n = hilbert_dim(op.sites(), d, max_dim);
  Matrix sum = Matrix::Zero(n, n);
  WeylOperator power(op.sites(), d);
  for (int k = 0; k < d; ++k) {
    sum += tau_power(-static_cast<long long>(tau_exponent) * k, d) * to_matrix(power, max_dim);
    power = weyl_mul(power, op);
  }
  return sum / static_cast<double>(d);
}

std::vector<SpectralComponent> spectral_projectors(const WeylOperator& op, std::size_t max_dim) {
  std::vector<SpectralComponent> out;
  for (int e : candidate_eigen_exponents(op)) {
    Matrix p = eigenprojector(op, e, max_dim);
    if (p.trace().real() > 0.5) out.push_back({e, tau_power(e, op.dim()), std::move(p)});
  }
  return out;
}

std::vector<Eigenspace> spectral_projectors(const Matrix& normal, double cluster_tol) {
  if (normal.rows() != normal.cols()) throw IncompatibleOperands("matrix is not square");
  const double scale = std::max(1.0, normal.squaredNorm());
  if ((normal * normal.adjoint() - normal.adjoint() * normal).norm() > 1e-9 * scale) {
    throw ContractViolation("spectral_projectors needs a normal matrix");
  }
  Eigen::ComplexSchur<Matrix> schur(normal);
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();
  std::vector<Eigenspace> out;
  std::vector<std::vector<Eigen::Index>> members;
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const std::complex<double> lambda = t(i, i);
    auto it = std::find_if(out.begin(), out.end(), [&](const Eigenspace& e) {
      return std::abs(e.eigenvalue - lambda) < cluster_tol;
    });
    if (it == out.end()) {
      out.push_back({lambda, Matrix()});
      members.push_back({i});
    } else {
      members[it - out.begin()].push_back(i);
    }
  }
  for (std::size_t c = 0; c < out.size(); ++c) {
    Matrix cols(u.rows(), static_cast<Eigen::Index>(members[c].size()));
    for (std::size_t j = 0; j < members[c].size(); ++j) cols.col(j) = u.col(members[c][j]);
    out[c].projector = cols * cols.adjoint();
  }
  return out;
}

OutcomeProjector outcome_projector(const MeasurementContext& ctx, std::span<const int> outcome,
                                   std::size_t max_dim) {
  if (outcome.size() != ctx.size()) {
    throw ContractViolation("outcome has " + std::to_string(outcome.size()) +
                            " labels for a context of " + std::to_string(ctx.size()));
  }
  const std::size_t n = hilbert_dim(ctx.sites(), ctx.dim(), max_dim);
  Matrix p = Matrix::Identity(n, n);
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    p = p * eigenprojector(ctx.observables()[i], outcome[i], max_dim);
  }
  return {ctx, std::vector<int>(outcome.begin(), outcome.end()), std::move(p)};
}

std::vector<OutcomeProjector> joint_outcomes(const MeasurementContext& ctx, std::size_t max_dim) {
  const std::size_t n = hilbert_dim(ctx.sites(), ctx.dim(), max_dim);
  std::vector<std::pair<std::vector<int>, Matrix>> partial;
  partial.emplace_back(std::vector<int>{}, Matrix::Identity(n, n));
  for (const auto& op : ctx.observables()) {
    const auto components = spectral_projectors(op, max_dim);
    std::vector<std::pair<std::vector<int>, Matrix>> next;
    for (const auto& [labels, proj] : partial) {
      for (const auto& c : components) {
        Matrix refined = proj * c.projector;
        if (refined.trace().real() < 0.5) continue;
        auto l = labels;
        l.push_back(c.tau_exponent);
        next.emplace_back(std::move(l), std::move(refined));
      }
    }
    partial = std::move(next);
  }
  std::vector<OutcomeProjector> out;
  out.reserve(partial.size());
  for (auto& [labels, proj] : partial) out.push_back({ctx, std::move(labels), std::move(proj)});
  return out;
}

std::vector<StateVector> range_basis(const Matrix& projector) {
  const Matrix h = (projector + projector.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  std::vector<StateVector> out;
  for (Eigen::Index i = eig.eigenvalues().size() - 1; i >= 0; --i) {
    if (eig.eigenvalues()(i) > 0.5) out.push_back(eig.eigenvectors().col(i));
  }
  return out;
}

std::vector<StateVector> joint_eigenspace(const MeasurementContext& ctx,
                                          std::span<const int> outcome, std::size_t max_dim) {
  return range_basis(outcome_projector(ctx, outcome, max_dim).matrix);
}

StateVector joint_eigenstate(const MeasurementContext& ctx, std::span<const int> outcome,
                             std::size_t max_dim) {
  auto basis = joint_eigenspace(ctx, outcome, max_dim);
  if (basis.size() != 1) {
    throw ContractViolation("joint eigenspace has dimension " + std::to_string(basis.size()) +
                            ", expected 1");
  }
  return basis.front();
}

std::vector<double> abl_probability(const StateVector& psi_i, const StateVector& psi_f,
                                    std::span<const Matrix> projectors, double tolerance) {
  if (projectors.empty()) throw ContractViolation("ABL rule needs at least one projector");
  const Eigen::Index n = psi_i.size();
  require_same_dim(n, psi_f.size(), "abl_probability");
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < projectors.size(); ++j) {
    require_same_dim(n, projectors[j].rows(), "abl_probability");
    sum += projectors[j];
    for (std::size_t k = j + 1; k < projectors.size(); ++k) {
      if ((projectors[j] * projectors[k]).norm() > 1e-8) {
        throw ContractViolation("ABL projectors are not mutually orthogonal");
      }
    }
  }
  if ((sum - Matrix::Identity(n, n)).norm() > 1e-8) {
    throw ContractViolation("ABL projectors do not sum to the identity");
  }
  std::vector<double> weights;
  double total = 0.0;
  for (const auto& p : projectors) {
    const double mag = std::abs(amplitude(psi_f, p, psi_i));
    const double w = mag < tolerance ? 0.0 : mag * mag;
    weights.push_back(w);
    total += w;
  }
  if (total == 0.0) {
    throw UndefinedDistribution("every ABL amplitude vanishes: pre/post pair incompatible");
  }
  for (auto& w : weights) w /= total;
  return weights;
}

double postselection_probability(const StateVector& psi_i, const StateVector& psi_f) {
  require_same_dim(psi_i.size(), psi_f.size(), "postselection_probability");
  return std::norm(psi_f.dot(psi_i));
}

double postselection_probability(const StateVector& psi_i, const Matrix& post_subspace) {
  require_same_dim(psi_i.size(), post_subspace.rows(), "postselection_probability");
  return psi_i.dot(post_subspace * psi_i).real();
}

StateVector basis_state(std::span<const int> digits, int dim, std::size_t max_dim) {
  const std::size_t n = hilbert_dim(static_cast<int>(digits.size()), dim, max_dim);
  std::size_t index = 0;
  for (int k : digits) {
    if (k < 0 || k >= dim) throw ContractViolation("basis digit out of range");
    index = index * dim + static_cast<std::size_t>(k);
  }
  StateVector v = StateVector::Zero(n);
  v(index) = 1.0;
  return v;
}

StateVector tensor(std::span<const StateVector> factors) {
  StateVector out = StateVector::Ones(1);
  for (const auto& f : factors) {
    StateVector next = Eigen::kroneckerProduct(out, f);
    out = std::move(next);
  }
  return out;
}

StateVector tensor(std::initializer_list<StateVector> factors) {
  return tensor(std::span<const StateVector>(factors.begin(), factors.size()));
}

void require_unit(const StateVector& v, double tolerance) {
  if (std::abs(v.norm() - 1.0) > tolerance) {
    throw ContractViolation("state has norm " + std::to_string(v.norm()) + ", expected 1");
  }
}

bool same_ray(const StateVector& a, const StateVector& b, double tolerance) {
  if (a.size() != b.size()) return false;
  return std::abs(std::abs(a.dot(b)) - a.norm() * b.norm()) < tolerance;
}

}  // namespace contextlab
