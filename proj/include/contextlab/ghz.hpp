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

#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "contextlab/state.hpp"
#include "contextlab/weyl.hpp"

namespace contextlab {

/// Undirected edge, 0-based vertices.
struct Edge {
  int a;
  int b;
  int weight;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Z_d-weighted undirected graph without self loops.
class WeightedGraph {
 public:
  /// Edgeless graph.
  WeightedGraph(int vertices, int dim);
  /// Entries are reduced mod d. Throws ContractViolation unless `gamma` is
  /// square, symmetric mod d, and zero on the diagonal.
  WeightedGraph(int dim, Eigen::MatrixXi gamma);
  /// Repeated edges add their weights.
  static WeightedGraph from_edges(int vertices, int dim, std::span<const Edge> edges);

  int vertices() const { return static_cast<int>(gamma_.rows()); }
  int dim() const { return d_; }
  int weight(int a, int b) const { return gamma_(a, b); }
  const Eigen::MatrixXi& adjacency() const { return gamma_; }
  /// Nonzero edges with a < b.
  std::vector<Edge> edges() const;

  friend bool operator==(const WeightedGraph& l, const WeightedGraph& r) {
    return l.d_ == r.d_ && l.gamma_ == r.gamma_;
  }

 private:
  int d_;
  Eigen::MatrixXi gamma_;
};

struct GhzVerdict {
  bool is_ghz = false;
  std::vector<int> vertex_weights;  // d_a mod d
  int total_weight = 0;             // W mod d
  bool omega_w_is_minus_one = false;
};

/// All vertex sums vanish mod d and the total weight does not.
GhzVerdict is_ghz_graph(const WeightedGraph& g);

/// Z_{N_a} = prod_b Z_b^{Gamma_ab}
WeylOperator neighborhood_clock(const WeightedGraph& g, int a);
/// X_V = prod_a X_a
WeylOperator global_shift(const WeightedGraph& g);
/// G_a = X_a Z_{N_a}, a = 0..n-1.
std::vector<WeylOperator> stabilizer_generators(const WeightedGraph& g);
MeasurementContext stabilizer_context(const WeightedGraph& g);

/// +1 joint eigenstate of the stabilizers, built from the quadratic form
/// sum_k w^{-sum_{a<b} Gamma_ab k_a k_b} |k> and checked against G_a|G> = |G>.
/// Falls back to graph_state_by_projection if the check fails.
StateVector graph_state(const WeightedGraph& g, std::size_t max_dim = kDefaultMaxDim);
/// prod_a (sum_k G_a^k / d) applied to the first basis vector it does not
/// annihilate, renormalized.
StateVector graph_state_by_projection(const WeightedGraph& g,
                                      std::size_t max_dim = kDefaultMaxDim);
/// Common eigenstate of {G_a} with eigenvalues w^{exponents[a]}.
StateVector eigenstate_family(const WeightedGraph& g, std::span<const int> omega_exponents,
                              std::size_t max_dim = kDefaultMaxDim);

/// Uniform-weight triangle.
WeightedGraph triangle(int dim, int weight);
/// The triangle GHZ graph: every edge carries d/2 (the only triangle that
/// passes is_ghz_graph).
WeightedGraph triangle_ghz(int dim);
/// Complete graph on 4 vertices with matchings {12: a, 34: a'}, {13: b, 24: b'},
/// {23: c, 14: c'} where x' = d/2 + x. GHZ whenever a + b + c = d/2 mod d.
WeightedGraph k4_ghz(int dim, int a, int b, int c);
/// Brute force over all d^{n(n-1)/2} weightings; requires at most 10^6 of them.
std::vector<WeightedGraph> enumerate_ghz_graphs(int vertices, int dim);
/// Rejection sampling over uniform weightings.
WeightedGraph random_ghz_graph(int vertices, int dim, std::mt19937_64& rng);

}  // namespace contextlab
