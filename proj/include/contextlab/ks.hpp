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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "contextlab/state.hpp"

namespace contextlab {

struct Ray {
  std::string label;
  StateVector vector;
};

using Basis = std::vector<int>;

/// Deduplicated rays with their orthogonality graph and complete bases.
class RaySet {
 public:
  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(rays_.size()); }
  const std::vector<Ray>& rays() const { return rays_; }
  const Ray& ray(int i) const { return rays_[static_cast<std::size_t>(i)]; }
  bool orthogonal(int i, int j) const { return orthogonal_(i, j); }
  const std::vector<int>& neighbors(int i) const { return neighbors_[static_cast<std::size_t>(i)]; }
  const std::vector<Basis>& bases() const { return bases_; }
  /// Indices of the bases containing ray i.
  const std::vector<int>& bases_of(int i) const { return bases_of_[static_cast<std::size_t>(i)]; }
  bool bases_declared() const { return bases_declared_; }
  /// Ray index of every input vector, after dedup.
  const std::vector<int>& input_to_ray() const { return input_to_ray_; }
  std::optional<int> index_of(std::string_view label) const;

 private:
  friend RaySet build_rayset(const std::vector<Ray>&, const std::optional<std::vector<Basis>>&);
  friend RaySet permute_rays(const RaySet&, std::span<const int>);
  void index();

  int dimension_ = 0;
  std::vector<Ray> rays_;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> orthogonal_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<Basis> bases_;
  std::vector<std::vector<int>> bases_of_;
  bool bases_declared_ = false;
  std::vector<int> input_to_ray_;
};

/// Vector with its first nonzero amplitude made real and positive.
StateVector canonical_phase(const StateVector& v);

/// Rays equal up to a global phase collapse to the first one given. Declared
/// bases index the input list. Without bases, every orthogonal clique of size
/// `dimension` is used. Throws ContractViolation for a non-unit vector or a
/// declared basis that is not orthonormal and complete.
RaySet build_rayset(const std::vector<Ray>& rays,
                    const std::optional<std::vector<Basis>>& bases = std::nullopt);

/// Ray k of the result is ray order[k] of `rs`.
RaySet permute_rays(const RaySet& rs, std::span<const int> order);

/// All orthogonal cliques of exactly `size` rays.
std::vector<Basis> orthogonal_cliques(const RaySet& rs, int size);

/// Ray index to 0 or 1.
using Preassignment = std::map<int, int>;

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t propagations = 0;
  std::int64_t conflicts = 0;
  int max_depth = 0;
};

/// Values are 0, 1, or -1 for unassigned.
struct Propagation {
  bool conflict = false;
  std::vector<int> values;
};

/// Unit propagation: a 1 forces its neighbours to 0, and a basis with one
/// unassigned ray and no 1 forces that ray to 1.
Propagation propagate(const RaySet& rs, std::vector<int> values, SearchStats* stats = nullptr);

struct KSResult {
  bool satisfiable = false;
  std::vector<int> assignment;  // empty when unsatisfiable
  SearchStats stats;
};

/// Exhaustive backtracking. Branches on rays by descending degree, then index,
/// trying 1 before 0. Throws ContractViolation for a preassignment that puts
/// two orthogonal rays at 1, zeroes a whole basis, or is out of range.
KSResult ks_search(const RaySet& rs, const Preassignment& pre = {});

/// Violated rules, empty for a valid KS assignment.
std::vector<std::string> validate_assignment(const RaySet& rs, std::span<const int> values);

/// psi_i, psi_f, the 24 Bell-pair rays and the computational basis of three
/// qubits; bases discovered.
RaySet builtin_34_rays();
/// Joint eigenstates of {X_a}, {Y_a}, {Z_a} and {X_ab, Y_ab, Z_c} over the
/// cyclic pairs, with these six bases declared.
RaySet builtin_48_rays();

}  // namespace contextlab
