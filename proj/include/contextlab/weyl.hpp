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
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "contextlab/errors.hpp"

namespace contextlab {

inline constexpr std::size_t kDefaultMaxDim = 4096;

template <typename Real>
using MatrixC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using VectorC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// e^{2 pi i k / n}, exact on the quarter turns.
template <typename Real = double>
std::complex<Real> root_of_unity(long long k, long long n) {
  long long r = ((k % n) + n) % n;
  if ((4 * r) % n == 0) {
    switch ((4 * r) / n) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }
  return std::polar(Real(1), Real(2) * std::numbers::pi_v<Real> * Real(r) / Real(n));
}

/// tau^p with tau = e^{i pi / d}.
template <typename Real = double>
std::complex<Real> tau_power(long long p, int d) {
  return root_of_unity<Real>(p, 2LL * d);
}

/// Generalized Pauli operator tau^p * prod_a X_a^{x_a} Z_a^{z_a} on n qudits of
/// dimension d, with tau = e^{i pi/d}. Per site the shift X is written left
/// of the clock Z. X = sum_k |k><k+1| and Z = sum_k w^k |k><k|, so XZ = wZX.
///
/// Sites are 0-based in the C++ API and 1-based in the text grammar.
class WeylOperator {
 public:
  /// Identity on `sites` qudits.
  WeylOperator(int sites, int dim);
  /// Exponents are reduced mod d and the phase mod 2d.
  WeylOperator(int dim, std::vector<int> x, std::vector<int> z, int phase = 0);

  static WeylOperator shift(int sites, int dim, int site, int power = 1);
  static WeylOperator clock(int sites, int dim, int site, int power = 1);
  /// Qubit Y = iXZ on one site.
  static WeylOperator pauli_y(int sites, int site);

  int sites() const { return static_cast<int>(x_.size()); }
  int dim() const { return d_; }
  std::span<const int> x() const { return x_; }
  std::span<const int> z() const { return z_; }
  /// Exponent of tau, in [0, 2d).
  int phase() const { return phase_; }

  bool is_pure_phase() const;
  bool is_identity() const { return is_pure_phase() && phase_ == 0; }
  WeylOperator times_phase(int tau_exponent) const;
  WeylOperator negated() const { return times_phase(d_); }

  friend bool operator==(const WeylOperator&, const WeylOperator&) = default;

 private:
  int d_;
  std::vector<int> x_;
  std::vector<int> z_;
  int phase_;
};

/// Normal-form product A*B.
WeylOperator weyl_mul(const WeylOperator& a, const WeylOperator& b);
inline WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
  return weyl_mul(a, b);
}
WeylOperator weyl_dagger(const WeylOperator& a);
/// a^k for any integer k (negative powers go through the dagger).
WeylOperator weyl_pow(const WeylOperator& a, long long k);
/// Product of a list, left to right; identity when empty.
WeylOperator weyl_product(std::span<const WeylOperator> ops, int sites, int dim);

/// s with A*B = w^s * B*A, in [0, d).
int symplectic_product(const WeylOperator& a, const WeylOperator& b);
bool commutes(const WeylOperator& a, const WeylOperator& b);

/// d^n. Throws SizeError past `max_dim`. Basis index digits run site 0 first
/// (most significant).
std::size_t hilbert_dim(int sites, int dim, std::size_t max_dim = kDefaultMaxDim);

/// Dense d^n x d^n realization. Throws SizeError past `max_dim`.
template <typename Real = double>
MatrixC<Real> to_matrix(const WeylOperator& a, std::size_t max_dim = kDefaultMaxDim) {
  const std::size_t n = hilbert_dim(a.sites(), a.dim(), max_dim);
  const int d = a.dim();
  const int sites = a.sites();
  MatrixC<Real> m = MatrixC<Real>::Zero(n, n);
  std::vector<int> digits(sites, 0);
  for (std::size_t col = 0; col < n; ++col) {
    // X^x Z^z |j> = w^{z j} |j - x>
    std::size_t row = 0;
    long long clock_exp = 0;
    for (int s = 0; s < sites; ++s) {
      const int j = digits[s];
      row = row * d + static_cast<std::size_t>(((j - a.x()[s]) % d + d) % d);
      clock_exp += static_cast<long long>(a.z()[s]) * j;
    }
    m(row, col) = tau_power<Real>(a.phase() + 2 * (clock_exp % d), d);
    for (int s = sites - 1; s >= 0; --s) {
      if (++digits[s] < d) break;
      digits[s] = 0;
    }
  }
  return m;
}

/// Grammar: optional phase tag ("+", "-", "i", "-i", "tau^k", "w^k") followed
/// by factors "X3", "Z2", "Y1" (d = 2 only), "X3^2", "I". Factors multiply left
/// to right; whitespace is optional between factors.
WeylOperator parse_weyl(std::string_view text, int sites, int dim);
/// Emits the same grammar; parse_weyl(format_weyl(a)) == a.
std::string format_weyl(const WeylOperator& a);

/// Pairwise-commuting list of observables.
class MeasurementContext {
 public:
  /// Throws ContractViolation if the list is empty, operands differ in shape,
  /// or any pair fails to commute.
  explicit MeasurementContext(std::vector<WeylOperator> observables,
                              std::vector<std::string> labels = {});

  const std::vector<WeylOperator>& observables() const { return observables_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return observables_.size(); }
  int sites() const;
  int dim() const;

 private:
  std::vector<WeylOperator> observables_;
  std::vector<std::string> labels_;
};

}  // namespace contextlab
