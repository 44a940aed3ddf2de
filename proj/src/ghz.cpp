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

#include "contextlab/ghz.hpp"

#include <cmath>

namespace contextlab {
namespace {

int mod(long long v, long long m) { return static_cast<int>(((v % m) + m) % m); }

bool stabilized(const std::vector<WeylOperator>& gens, const StateVector& v, std::size_t max_dim) {
  for (const auto& g : gens) {
    if ((to_matrix(g, max_dim) * v - v).norm() > kVanishTolerance) return false;
  }
  return true;
}

}  // namespace

WeightedGraph::WeightedGraph(int vertices, int dim)
    : d_(dim), gamma_(Eigen::MatrixXi::Zero(vertices, vertices)) {
  if (dim < 2) throw ContractViolation("graph dimension must be >= 2");
}

WeightedGraph::WeightedGraph(int dim, Eigen::MatrixXi gamma) : d_(dim), gamma_(std::move(gamma)) {
  if (dim < 2) throw ContractViolation("graph dimension must be >= 2");
  if (gamma_.rows() != gamma_.cols()) throw ContractViolation("adjacency matrix is not square");
  gamma_ = gamma_.unaryExpr([dim](int w) { return mod(w, dim); });
  for (Eigen::Index a = 0; a < gamma_.rows(); ++a) {
    if (gamma_(a, a) != 0) throw ContractViolation("graph has a self loop");
    for (Eigen::Index b = a + 1; b < gamma_.cols(); ++b) {
      if (gamma_(a, b) != gamma_(b, a)) throw ContractViolation("adjacency is not symmetric");
    }
  }
}

WeightedGraph WeightedGraph::from_edges(int vertices, int dim, std::span<const Edge> edges) {
  Eigen::MatrixXi gamma = Eigen::MatrixXi::Zero(vertices, vertices);
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= vertices || e.b >= vertices) {
      throw ContractViolation("edge endpoint out of range");
    }
    if (e.a == e.b) throw ContractViolation("graph has a self loop");
    gamma(e.a, e.b) += e.weight;
    gamma(e.b, e.a) += e.weight;
  }
  return WeightedGraph(dim, std::move(gamma));
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  for (int a = 0; a < vertices(); ++a) {
    for (int b = a + 1; b < vertices(); ++b) {
      if (gamma_(a, b) != 0) out.push_back({a, b, gamma_(a, b)});
    }
  }
  return out;
}

GhzVerdict is_ghz_graph(const WeightedGraph& g) {
  const int d = g.dim();
  GhzVerdict v;
  bool rows_vanish = true;
  long long total = 0;
  for (int a = 0; a < g.vertices(); ++a) {
    long long row = 0;
    for (int b = 0; b < g.vertices(); ++b) {
      row += g.weight(a, b);
      if (a > b) total += g.weight(a, b);
    }
    v.vertex_weights.push_back(mod(row, d));
    rows_vanish = rows_vanish && v.vertex_weights.back() == 0;
  }
  v.total_weight = mod(total, d);
  v.omega_w_is_minus_one = 2 * v.total_weight == d;
  v.is_ghz = rows_vanish && v.total_weight != 0;
  if (v.is_ghz && (d % 2 != 0 || !v.omega_w_is_minus_one)) {
    // Vanishing row sums give 2W = 0 mod d.
    throw std::logic_error("GHZ graph with odd d or w^W != -1");
  }
  return v;
}

WeylOperator neighborhood_clock(const WeightedGraph& g, int a) {
  std::vector<int> x(g.vertices(), 0), z(g.vertices(), 0);
  for (int b = 0; b < g.vertices(); ++b) z[b] = g.weight(a, b);
  return WeylOperator(g.dim(), std::move(x), std::move(z));
}

WeylOperator global_shift(const WeightedGraph& g) {
  return WeylOperator(g.dim(), std::vector<int>(g.vertices(), 1),
                      std::vector<int>(g.vertices(), 0));
}

std::vector<WeylOperator> stabilizer_generators(const WeightedGraph& g) {
  std::vector<WeylOperator> out;
  for (int a = 0; a < g.vertices(); ++a) {
    out.push_back(WeylOperator::shift(g.vertices(), g.dim(), a) * neighborhood_clock(g, a));
  }
  return out;
}

MeasurementContext stabilizer_context(const WeightedGraph& g) {
  std::vector<std::string> labels;
  for (int a = 0; a < g.vertices(); ++a) labels.push_back("G" + std::to_string(a + 1));
  return MeasurementContext(stabilizer_generators(g), std::move(labels));
}

StateVector graph_state(const WeightedGraph& g, std::size_t max_dim) {
  const int n = g.vertices();
  const int d = g.dim();
  const std::size_t dim = hilbert_dim(n, d, max_dim);
  StateVector v(dim);
  std::vector<int> k(n, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    long long q = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) q += static_cast<long long>(g.weight(a, b)) * k[a] * k[b];
    }
    v(idx) = root_of_unity(-q, d);
    for (int a = n - 1; a >= 0; --a) {
      if (++k[a] < d) break;
      k[a] = 0;
    }
  }
  v /= std::sqrt(static_cast<double>(dim));
  if (stabilized(stabilizer_generators(g), v, max_dim)) return v;
  return graph_state_by_projection(g, max_dim);
}

StateVector graph_state_by_projection(const WeightedGraph& g, std::size_t max_dim) {
  const auto gens = stabilizer_generators(g);
  const std::size_t dim = hilbert_dim(g.vertices(), g.dim(), max_dim);
  Matrix p = Matrix::Identity(dim, dim);
  for (const auto& gen : gens) p = p * eigenprojector(gen, 0, max_dim);
  for (std::size_t i = 0; i < dim; ++i) {
    StateVector v = p.col(static_cast<Eigen::Index>(i));
    if (v.norm() > 0.1) {
      v.normalize();
      if (!stabilized(gens, v, max_dim)) break;
      return v;
    }
  }
  throw Error("graph state construction failed the stabilizer eigen-condition");
}

StateVector eigenstate_family(const WeightedGraph& g, std::span<const int> omega_exponents,
                              std::size_t max_dim) {
  if (static_cast<int>(omega_exponents.size()) != g.vertices()) {
    throw ContractViolation("need one eigenvalue per vertex");
  }
  std::vector<int> tau;
  for (int e : omega_exponents) tau.push_back(mod(2LL * e, 2LL * g.dim()));
  return joint_eigenstate(stabilizer_context(g), tau, max_dim);
}

WeightedGraph triangle(int dim, int weight) {
  const Edge edges[] = {{0, 1, weight}, {1, 2, weight}, {0, 2, weight}};
  return WeightedGraph::from_edges(3, dim, edges);
}

WeightedGraph triangle_ghz(int dim) {
  if (dim % 2 != 0) throw ContractViolation("GHZ graphs need even d");
  return triangle(dim, dim / 2);
}

WeightedGraph k4_ghz(int dim, int a, int b, int c) {
  if (dim % 2 != 0) throw ContractViolation("GHZ graphs need even d");
  const int h = dim / 2;
  const Edge edges[] = {{0, 1, a}, {2, 3, h + a}, {0, 2, b}, {1, 3, h + b}, {1, 2, c}, {0, 3, h + c}};
  return WeightedGraph::from_edges(4, dim, edges);
}

std::vector<WeightedGraph> enumerate_ghz_graphs(int vertices, int dim) {
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < vertices; ++a) {
    for (int b = a + 1; b < vertices; ++b) slots.emplace_back(a, b);
  }
  double count = std::pow(static_cast<double>(dim), static_cast<double>(slots.size()));
  if (count > 1e6) throw SizeError("too many weightings to enumerate");
  std::vector<WeightedGraph> out;
  std::vector<int> w(slots.size(), 0);
  while (true) {
    Eigen::MatrixXi gamma = Eigen::MatrixXi::Zero(vertices, vertices);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      gamma(slots[i].first, slots[i].second) = w[i];
      gamma(slots[i].second, slots[i].first) = w[i];
    }
    WeightedGraph g(dim, std::move(gamma));
    if (is_ghz_graph(g).is_ghz) out.push_back(std::move(g));
    std::size_t i = 0;
    for (; i < w.size(); ++i) {
      if (++w[i] < dim) break;
      w[i] = 0;
    }
    if (i == w.size()) break;
  }
  return out;
}

WeightedGraph random_ghz_graph(int vertices, int dim, std::mt19937_64& rng) {
  if (vertices < 3 || dim % 2 != 0) throw ContractViolation("GHZ graphs need n >= 3 and even d");
  std::uniform_int_distribution<int> weight(0, dim - 1);
  while (true) {
    Eigen::MatrixXi gamma = Eigen::MatrixXi::Zero(vertices, vertices);
    for (int a = 0; a < vertices; ++a) {
      for (int b = a + 1; b < vertices; ++b) gamma(a, b) = gamma(b, a) = weight(rng);
    }
    WeightedGraph g(dim, std::move(gamma));
    if (is_ghz_graph(g).is_ghz) return g;
  }
}

}  // namespace contextlab
