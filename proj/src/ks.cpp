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

#include "contextlab/ks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "contextlab/errors.hpp"
#include "contextlab/weyl.hpp"

namespace contextlab {
namespace {

constexpr double kOrthogonalTolerance = 1e-10;
constexpr double kSameRayTolerance = 1e-8;

}  // namespace

std::optional<int> RaySet::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (rays_[static_cast<std::size_t>(i)].label == label) return i;
  }
  return std::nullopt;
}

void RaySet::index() {
  const int n = size();
  orthogonal_.resize(n, n);
  neighbors_.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    orthogonal_(i, i) = false;
    for (int j = i + 1; j < n; ++j) {
      const bool o = std::abs(ray(i).vector.dot(ray(j).vector)) < kOrthogonalTolerance;
      orthogonal_(i, j) = orthogonal_(j, i) = o;
      if (o) {
        neighbors_[static_cast<std::size_t>(i)].push_back(j);
        neighbors_[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  }
  bases_of_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    for (int r : bases_[b]) bases_of_[static_cast<std::size_t>(r)].push_back(static_cast<int>(b));
  }
}

StateVector canonical_phase(const StateVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > kOrthogonalTolerance) return v * (std::conj(v[k]) / std::abs(v[k]));
  }
  return v;
}

RaySet build_rayset(const std::vector<Ray>& rays, const std::optional<std::vector<Basis>>& bases) {
  if (rays.empty()) throw ContractViolation("ray set is empty");
  RaySet rs;
  rs.dimension_ = static_cast<int>(rays.front().vector.size());
  for (const auto& r : rays) {
    require_same_dim(r.vector.size(), rs.dimension_, "ray set");
    if (std::abs(r.vector.norm() - 1.0) > kOrthogonalTolerance) {
      throw ContractViolation("ray " + r.label + " is not a unit vector");
    }
    const StateVector c = canonical_phase(r.vector);
    int found = -1;
    for (int j = 0; j < rs.size(); ++j) {
      if ((rs.rays_[static_cast<std::size_t>(j)].vector - c).norm() < kSameRayTolerance) {
        found = j;
        break;
      }
    }
    if (found < 0) {
      found = rs.size();
      rs.rays_.push_back({r.label, c});
    }
    rs.input_to_ray_.push_back(found);
  }
  rs.index();
  if (bases) {
    rs.bases_declared_ = true;
    for (const auto& basis : *bases) {
      Basis mapped;
      for (int k : basis) {
        if (k < 0 || k >= static_cast<int>(rays.size())) {
          throw ContractViolation("basis index " + std::to_string(k) + " out of range");
        }
        mapped.push_back(rs.input_to_ray_[static_cast<std::size_t>(k)]);
      }
      if (static_cast<int>(mapped.size()) != rs.dimension_) {
        throw ContractViolation("basis has " + std::to_string(mapped.size()) +
                                " rays, dimension is " + std::to_string(rs.dimension_));
      }
      for (std::size_t a = 0; a < mapped.size(); ++a) {
        for (std::size_t b = a + 1; b < mapped.size(); ++b) {
          if (!rs.orthogonal(mapped[a], mapped[b])) {
            throw ContractViolation("declared basis is not orthonormal");
          }
        }
      }
      rs.bases_.push_back(std::move(mapped));
    }
  } else {
    rs.bases_ = orthogonal_cliques(rs, rs.dimension_);
  }
  rs.index();
  return rs;
}

RaySet permute_rays(const RaySet& rs, std::span<const int> order) {
  if (static_cast<int>(order.size()) != rs.size()) throw ContractViolation("order has wrong size");
  std::vector<int> where(order.size(), -1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int from = order[k];
    if (from < 0 || from >= rs.size() || where[static_cast<std::size_t>(from)] >= 0) {
      throw ContractViolation("order is not a permutation");
    }
    where[static_cast<std::size_t>(from)] = static_cast<int>(k);
  }
  RaySet out;
  out.dimension_ = rs.dimension_;
  for (int from : order) out.rays_.push_back(rs.ray(from));
  for (const auto& basis : rs.bases_) {
    Basis mapped;
    for (int r : basis) mapped.push_back(where[static_cast<std::size_t>(r)]);
    std::sort(mapped.begin(), mapped.end());
    out.bases_.push_back(std::move(mapped));
  }
  out.bases_declared_ = rs.bases_declared_;
  for (int r : rs.input_to_ray_) out.input_to_ray_.push_back(where[static_cast<std::size_t>(r)]);
  out.index();
  return out;
}

std::vector<Basis> orthogonal_cliques(const RaySet& rs, int size) {
  std::vector<Basis> out;
  Basis current;
  auto extend = [&](auto&& self, const std::vector<int>& candidates) -> void {
    if (static_cast<int>(current.size()) == size) {
      out.push_back(current);
      return;
    }
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const int c = candidates[k];
      std::vector<int> next;
      for (std::size_t m = k + 1; m < candidates.size(); ++m) {
        if (rs.orthogonal(c, candidates[m])) next.push_back(candidates[m]);
      }
      if (current.size() + 1 + next.size() < static_cast<std::size_t>(size)) continue;
      current.push_back(c);
      self(self, next);
      current.pop_back();
    }
  };
  std::vector<int> all(static_cast<std::size_t>(rs.size()));
  std::iota(all.begin(), all.end(), 0);
  extend(extend, all);
  return out;
}

Propagation propagate(const RaySet& rs, std::vector<int> values, SearchStats* stats) {
  Propagation out;
  std::deque<int> queue;
  for (int i = 0; i < rs.size(); ++i) {
    if (values[static_cast<std::size_t>(i)] >= 0) queue.push_back(i);
  }
  auto set = [&](int r, int v) {
    values[static_cast<std::size_t>(r)] = v;
    queue.push_back(r);
    if (stats) ++stats->propagations;
  };
  while (!queue.empty() && !out.conflict) {
    const int r = queue.front();
    queue.pop_front();
    if (values[static_cast<std::size_t>(r)] == 1) {
      for (int nb : rs.neighbors(r)) {
        const int v = values[static_cast<std::size_t>(nb)];
        if (v == 1) {
          out.conflict = true;
          break;
        }
        if (v < 0) set(nb, 0);
      }
      continue;
    }
    for (int b : rs.bases_of(r)) {
      int ones = 0, open = 0, last = -1;
      for (int m : rs.bases()[static_cast<std::size_t>(b)]) {
        const int v = values[static_cast<std::size_t>(m)];
        if (v == 1) ++ones;
        if (v < 0) {
          ++open;
          last = m;
        }
      }
      if (ones > 0) continue;
      if (open == 0) {
        out.conflict = true;
        break;
      }
      if (open == 1) set(last, 1);
    }
  }
  out.values = std::move(values);
  return out;
}

KSResult ks_search(const RaySet& rs, const Preassignment& pre) {
  std::vector<int> values(static_cast<std::size_t>(rs.size()), -1);
  for (const auto& [r, v] : pre) {
    if (r < 0 || r >= rs.size()) throw ContractViolation("preassigned ray " + std::to_string(r) + " out of range");
    if (v != 0 && v != 1) throw ContractViolation("preassigned values must be 0 or 1");
    values[static_cast<std::size_t>(r)] = v;
  }
  for (const auto& [r, v] : pre) {
    if (v != 1) continue;
    for (int nb : rs.neighbors(r)) {
      if (values[static_cast<std::size_t>(nb)] == 1) {
        throw ContractViolation("preassignment puts orthogonal rays " + rs.ray(r).label + " and " +
                                rs.ray(nb).label + " at 1");
      }
    }
  }
  for (const auto& basis : rs.bases()) {
    if (std::all_of(basis.begin(), basis.end(),
                    [&](int r) { return values[static_cast<std::size_t>(r)] == 0; })) {
      throw ContractViolation("preassignment sets a whole basis to 0");
    }
  }

  std::vector<int> order(static_cast<std::size_t>(rs.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rs.neighbors(a).size() > rs.neighbors(b).size();
  });

  KSResult result;
  auto search = [&](auto&& self, std::vector<int> current, int depth) -> bool {
    ++result.stats.nodes;
    result.stats.max_depth = std::max(result.stats.max_depth, depth);
    Propagation p = propagate(rs, std::move(current), &result.stats);
    if (p.conflict) {
      ++result.stats.conflicts;
      return false;
    }
    const auto next = std::find_if(order.begin(), order.end(),
                                   [&](int r) { return p.values[static_cast<std::size_t>(r)] < 0; });
    if (next == order.end()) {
      result.assignment = std::move(p.values);
      return true;
    }
    for (int v : {1, 0}) {
      std::vector<int> branch = p.values;
      branch[static_cast<std::size_t>(*next)] = v;
      if (self(self, std::move(branch), depth + 1)) return true;
    }
    return false;
  };
  result.satisfiable = search(search, std::move(values), 0);
  if (result.satisfiable && !validate_assignment(rs, result.assignment).empty()) {
    throw std::logic_error("search returned an invalid assignment");
  }
  return result;
}

std::vector<std::string> validate_assignment(const RaySet& rs, std::span<const int> values) {
  std::vector<std::string> out;
  if (static_cast<int>(values.size()) != rs.size()) {
    out.push_back("assignment has " + std::to_string(values.size()) + " values for " +
                  std::to_string(rs.size()) + " rays");
    return out;
  }
  for (int i = 0; i < rs.size(); ++i) {
    const int v = values[static_cast<std::size_t>(i)];
    if (v != 0 && v != 1) out.push_back("ray " + rs.ray(i).label + " has value " + std::to_string(v));
    for (int j = i + 1; j < rs.size(); ++j) {
      if (rs.orthogonal(i, j) && v == 1 && values[static_cast<std::size_t>(j)] == 1) {
        out.push_back("orthogonal rays " + rs.ray(i).label + " and " + rs.ray(j).label + " both 1");
      }
    }
  }
  for (std::size_t b = 0; b < rs.bases().size(); ++b) {
    const auto& basis = rs.bases()[b];
    if (std::none_of(basis.begin(), basis.end(),
                     [&](int r) { return values[static_cast<std::size_t>(r)] == 1; })) {
      out.push_back("basis " + std::to_string(b) + " has no ray at 1");
    }
  }
  return out;
}

namespace {

StateVector qubit_ket(int bit) {
  StateVector v = StateVector::Zero(2);
  v[bit] = 1.0;
  return v;
}

// Two-qubit state on qubits (a, b) times |mu> on c.
StateVector place_pair(const StateVector& pair, int a, int b, int c, int mu) {
  StateVector v = StateVector::Zero(8);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      int bits[3];
      bits[a] = i;
      bits[b] = j;
      bits[c] = mu;
      v[4 * bits[0] + 2 * bits[1] + bits[2]] += pair[2 * i + j];
    }
  }
  return v;
}

}  // namespace

RaySet builtin_34_rays() {
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector plus = (qubit_ket(0) + qubit_ket(1)) * s;
  const StateVector y0 = (qubit_ket(0) + std::complex<double>(0, 1) * qubit_ket(1)) * s;
  std::vector<Ray> rays = {{"psi_i", tensor({plus, plus, plus})}, {"psi_f", tensor({y0, y0, y0})}};
  const StateVector k00 = tensor({qubit_ket(0), qubit_ket(0)}), k11 = tensor({qubit_ket(1), qubit_ket(1)});
  const StateVector k01 = tensor({qubit_ket(0), qubit_ket(1)}), k10 = tensor({qubit_ket(1), qubit_ket(0)});
  const std::pair<const char*, StateVector> bell[] = {
      {"Phi+", (k00 + k11) * s}, {"Phi-", (k00 - k11) * s},
      {"Psi+", (k01 + k10) * s}, {"Psi-", (k01 - k10) * s}};
  const int cyclic[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& [a, b, c] : cyclic) {
    for (int mu = 0; mu < 2; ++mu) {
      for (const auto& [name, state] : bell) {
        rays.push_back({std::string(name) + "_" + std::to_string(a + 1) + std::to_string(b + 1) + ":" +
                            std::to_string(mu),
                        place_pair(state, a, b, c, mu)});
      }
    }
  }
  for (int k = 0; k < 8; ++k) {
    const int digits[] = {(k >> 2) & 1, (k >> 1) & 1, k & 1};
    rays.push_back({std::to_string(digits[0]) + std::to_string(digits[1]) + std::to_string(digits[2]),
                    basis_state(digits, 2)});
  }
  return build_rayset(rays);
}

RaySet builtin_48_rays() {
  // Rays are labelled by context and signs, e.g. XY12:+-+ for {X12, Y12, Z3}.
  const std::vector<std::pair<std::string, std::vector<std::string>>> contexts = {
      {"XXX", {"X1", "X2", "X3"}},          {"YYY", {"Y1", "Y2", "Y3"}},
      {"ZZZ", {"Z1", "Z2", "Z3"}},          {"XY12", {"X1 X2", "Y1 Y2", "Z3"}},
      {"XY23", {"X2 X3", "Y2 Y3", "Z1"}},   {"XY31", {"X3 X1", "Y3 Y1", "Z2"}}};
  std::vector<Ray> rays;
  std::vector<Basis> bases;
  for (const auto& [ctx_label, names] : contexts) {
    std::vector<WeylOperator> ops;
    for (const auto& name : names) ops.push_back(parse_weyl(name, 3, 2));
    const MeasurementContext ctx(std::move(ops), names);
    Basis basis;
    for (const auto& o : joint_outcomes(ctx)) {
      std::string signs;
      for (int e : o.outcome) signs += e == 0 ? '+' : '-';
      basis.push_back(static_cast<int>(rays.size()));
      rays.push_back({ctx_label + ":" + signs, range_basis(o.matrix).front()});
    }
    bases.push_back(std::move(basis));
  }
  return build_rayset(rays, bases);
}

}  // namespace contextlab
