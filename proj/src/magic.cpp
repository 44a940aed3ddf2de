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

#include "contextlab/magic.hpp"

#include <algorithm>
#include <cmath>

#include "contextlab/errors.hpp"

namespace contextlab {
namespace {

int mod(long long v, long long m) { return static_cast<int>(((v % m) + m) % m); }

WeylOperator occurrence_op(const MagicConfiguration& cfg, const LineOccurrence& o) {
  const WeylOperator& op = cfg.nodes()[static_cast<std::size_t>(o.node)].op;
  return o.dagger ? weyl_dagger(op) : op;
}

WeylOperator line_product(const MagicConfiguration& cfg, const MagicLine& line) {
  WeylOperator out(cfg.sites(), cfg.dim());
  for (const auto& o : line.members) out = out * occurrence_op(cfg, o);
  return out;
}

std::string phase_label(int tau_exponent, int d) {
  if (tau_exponent == 0) return "+1";
  if (tau_exponent == d) return "-1";
  return "tau^" + std::to_string(tau_exponent);
}

// Nodes from operator strings plus lines of node indices, all plain.
struct Builder {
  int sites;
  int dim;
  std::vector<MagicNode> nodes;
  std::vector<MagicLine> lines;

  int node(const std::string& label, const std::string& op) {
    nodes.push_back({label, parse_weyl(op, sites, dim)});
    return static_cast<int>(nodes.size()) - 1;
  }
  void line(std::string label, std::initializer_list<int> members, int phase) {
    MagicLine l{std::move(label), {}, phase};
    for (int m : members) l.members.push_back({m, false});
    lines.push_back(std::move(l));
  }
};

}  // namespace

MagicConfiguration::MagicConfiguration(std::string name, std::vector<MagicNode> nodes,
                                       std::vector<MagicLine> lines, bool reconstructed)
    : name_(std::move(name)), nodes_(std::move(nodes)), lines_(std::move(lines)),
      reconstructed_(reconstructed) {
  if (nodes_.empty()) throw MalformedConfiguration(name_ + ": no nodes");
  for (const auto& n : nodes_) {
    if (n.op.sites() != sites() || n.op.dim() != dim()) {
      throw MalformedConfiguration(name_ + ": node " + n.label + " has a different shape");
    }
  }
  for (auto& line : lines_) {
    if (line.members.empty()) throw MalformedConfiguration(name_ + ": line " + line.label + " is empty");
    for (const auto& o : line.members) {
      if (o.node < 0 || o.node >= static_cast<int>(nodes_.size())) {
        throw MalformedConfiguration(name_ + ": line " + line.label + " references node " +
                                     std::to_string(o.node));
      }
    }
    for (std::size_t a = 0; a < line.members.size(); ++a) {
      for (std::size_t b = a + 1; b < line.members.size(); ++b) {
        const auto& na = nodes_[static_cast<std::size_t>(line.members[a].node)];
        const auto& nb = nodes_[static_cast<std::size_t>(line.members[b].node)];
        if (!commutes(na.op, nb.op)) {
          throw MalformedConfiguration(name_ + ": " + na.label + " and " + nb.label + " on line " +
                                       line.label + " do not commute");
        }
      }
    }
    line.claimed_phase = mod(line.claimed_phase, 2LL * dim());
  }
  const auto occ = occurrences();
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (occ[k] < 2) {
      throw MalformedConfiguration(name_ + ": node " + nodes_[k].label + " sits on " +
                                   std::to_string(occ[k]) + " line(s)");
    }
  }
}

std::vector<int> MagicConfiguration::occurrences() const {
  std::vector<int> out(nodes_.size(), 0);
  for (const auto& line : lines_) {
    for (const auto& o : line.members) ++out[static_cast<std::size_t>(o.node)];
  }
  return out;
}

ProductVerification verify_quantum_products(const MagicConfiguration& cfg,
                                            const VerifyOptions& opts) {
  ProductVerification out;
  out.all_match = true;
  const std::size_t n = hilbert_dim(cfg.sites(), cfg.dim(), opts.max_dim);
  for (const auto& line : cfg.lines()) {
    const WeylOperator product = line_product(cfg, line);
    if (!product.is_pure_phase()) {
      throw MalformedConfiguration(cfg.name() + ": product of line " + line.label + " is " +
                                   format_weyl(product) + ", not a phase");
    }
    Matrix m = Matrix::Identity(n, n);
    for (const auto& o : line.members) {
      const Matrix node = to_matrix(cfg.nodes()[static_cast<std::size_t>(o.node)].op, opts.max_dim);
      m = o.dagger ? Matrix(m * node.adjoint()) : Matrix(m * node);
    }
    LineCheck check;
    check.label = line.label;
    check.computed_phase = product.phase();
    check.claimed_phase = line.claimed_phase;
    check.matrix_residual =
        (m - tau_power(product.phase(), cfg.dim()) * Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    check.matches_claim = check.computed_phase == check.claimed_phase;
    out.all_match = out.all_match && check.matches_claim;
    out.max_matrix_residual = std::max(out.max_matrix_residual, check.matrix_residual);
    out.lines.push_back(std::move(check));
  }
  return out;
}

const char* to_string(ParityStructure s) {
  switch (s) {
    case ParityStructure::kEven: return "even";
    case ParityStructure::kDaggerPaired: return "dagger-paired";
    default: return "none";
  }
}

ParityResult parity_contradiction(const MagicConfiguration& cfg) {
  ParityResult out;
  std::vector<long long> net(cfg.nodes().size(), 0);
  bool any_dagger = false;
  long long grand = 0;
  for (const auto& line : cfg.lines()) {
    grand += line.claimed_phase;
    for (const auto& o : line.members) {
      net[static_cast<std::size_t>(o.node)] += o.dagger ? -1 : 1;
      any_dagger = any_dagger || o.dagger;
    }
  }
  out.grand_phase = mod(grand, 2LL * cfg.dim());
  bool sound = true;
  for (std::size_t k = 0; k < net.size(); ++k) {
    const WeylOperator p = weyl_pow(cfg.nodes()[k].op, net[k]);
    sound = sound && p.is_identity();
  }
  if (sound) out.structure = any_dagger ? ParityStructure::kDaggerPaired : ParityStructure::kEven;
  out.contradiction = sound && out.grand_phase != 0;
  if (!sound) {
    out.verdict = "not a parity proof: occurrences are neither even nor dagger-paired";
  } else if (out.contradiction) {
    out.verdict = "noncontextual value assignment impossible";
  } else {
    out.verdict = "no contradiction: grand product is 1";
  }
  return out;
}

bool ConfigurationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

ConfigurationReport check_configuration(const MagicConfiguration& cfg, const VerifyOptions& opts) {
  ConfigurationReport r;
  r.products = verify_quantum_products(cfg, opts);
  r.parity = parity_contradiction(cfg);
  for (const auto& line : r.products.lines) {
    r.checks.push_back(exact_check("line " + line.label + " product matches its claim",
                                   line.matches_claim,
                                   "computed " + phase_label(line.computed_phase, cfg.dim()) +
                                       ", claimed " + phase_label(line.claimed_phase, cfg.dim())));
    r.checks.push_back(numeric_check("line " + line.label + " symbolic and matrix products agree",
                                     line.matrix_residual, opts.tolerance));
  }
  r.checks.push_back(exact_check("occurrences are even or dagger-paired",
                                 r.parity.structure != ParityStructure::kNone,
                                 to_string(r.parity.structure)));
  r.checks.push_back(exact_check("grand product contradicts every noncontextual valuation",
                                 r.parity.contradiction,
                                 "grand product " + phase_label(r.parity.grand_phase, cfg.dim())));
  return r;
}

MagicConfiguration pm_square_2q() {
  Builder b{2, 2, {}, {}};
  const int x1 = b.node("X1", "X1"), x2 = b.node("X2", "X2"), x12 = b.node("X1X2", "X1 X2");
  const int z2 = b.node("Z2", "Z2"), z1 = b.node("Z1", "Z1"), z12 = b.node("Z1Z2", "Z1 Z2");
  const int xz = b.node("X1Z2", "X1 Z2"), zx = b.node("Z1X2", "Z1 X2"), y12 = b.node("Y1Y2", "Y1 Y2");
  b.line("row 1", {x1, x2, x12}, 0);
  b.line("row 2", {z2, z1, z12}, 0);
  b.line("row 3", {xz, zx, y12}, 0);
  b.line("column 1", {x1, z2, xz}, 0);
  b.line("column 2", {x2, z1, zx}, 0);
  b.line("column 3", {x12, z12, y12}, 2);
  return MagicConfiguration("pm_square_2q", std::move(b.nodes), std::move(b.lines));
}

MagicConfiguration pm_square_3q() {
  Builder b{3, 2, {}, {}};
  const char* pairs[] = {"12", "23", "13"};
  int grid[3][3];
  const char letters[] = {'X', 'Z', 'Y'};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const std::string l(1, letters[r]);
      grid[r][c] = b.node(l + pairs[c], l + pairs[c][0] + " " + l + pairs[c][1]);
    }
  }
  for (int r = 0; r < 3; ++r) b.line("row " + std::to_string(r + 1), {grid[r][0], grid[r][1], grid[r][2]}, 0);
  for (int c = 0; c < 3; ++c) b.line("column " + std::to_string(c + 1), {grid[0][c], grid[1][c], grid[2][c]}, 2);
  return MagicConfiguration("pm_square_3q", std::move(b.nodes), std::move(b.lines));
}

MagicConfiguration pm_square_odd(int n) {
  if (n < 3 || n % 2 == 0) throw ContractViolation("pm_square_odd needs odd n >= 3");
  std::vector<MagicNode> nodes;
  const char letters[] = {'X', 'Z', 'Y'};
  for (char letter : letters) {
    for (int a = 0; a < n; ++a) {
      const int b = (a + 1) % n;
      const std::string l(1, letter);
      const std::string sa = std::to_string(a + 1), sb = std::to_string(b + 1);
      nodes.push_back({l + sa + "," + sb, parse_weyl(l + sa + " " + l + sb, n, 2)});
    }
  }
  std::vector<MagicLine> lines;
  for (int r = 0; r < 3; ++r) {
    MagicLine line{"row " + std::to_string(r + 1), {}, 0};
    for (int a = 0; a < n; ++a) line.members.push_back({r * n + a, false});
    lines.push_back(std::move(line));
  }
  for (int a = 0; a < n; ++a) {
    lines.push_back({"column " + std::to_string(a + 1), {{a, false}, {n + a, false}, {2 * n + a, false}}, 2});
  }
  return MagicConfiguration("pm_square_odd_" + std::to_string(n), std::move(nodes), std::move(lines));
}

MagicConfiguration qudit_config(const WeightedGraph& graph) {
  if (!is_ghz_graph(graph).is_ghz) throw ContractViolation("qudit_config needs a GHZ graph");
  const int n = graph.vertices();
  const int d = graph.dim();
  const auto gens = stabilizer_generators(graph);
  std::vector<MagicNode> nodes;
  // Row-major: row 1 X_a then X_V^dag, row 2 Z_{N_a} then I, row 3 G_a^dag then X_V.
  for (int a = 0; a < n; ++a) nodes.push_back({"X" + std::to_string(a + 1), WeylOperator::shift(n, d, a)});
  nodes.push_back({"X_V^dag", weyl_dagger(global_shift(graph))});
  for (int a = 0; a < n; ++a) nodes.push_back({"Z_N" + std::to_string(a + 1), neighborhood_clock(graph, a)});
  nodes.push_back({"I", WeylOperator(n, d)});
  for (int a = 0; a < n; ++a) {
    nodes.push_back({"G" + std::to_string(a + 1) + "^dag", weyl_dagger(gens[static_cast<std::size_t>(a)])});
  }
  nodes.push_back({"X_V", global_shift(graph)});
  const int width = n + 1;
  std::vector<MagicLine> lines;
  for (int r = 0; r < 3; ++r) {
    MagicLine line{"row " + std::to_string(r + 1), {}, r == 2 ? d : 0};
    for (int c = 0; c < width; ++c) line.members.push_back({r * width + c, false});
    lines.push_back(std::move(line));
  }
  for (int c = 0; c < width; ++c) {
    MagicLine line{"column " + std::to_string(c + 1), {}, 0};
    for (int r = 0; r < 3; ++r) line.members.push_back({r * width + c, true});
    lines.push_back(std::move(line));
  }
  return MagicConfiguration("qudit_config_n" + std::to_string(n) + "_d" + std::to_string(d),
                            std::move(nodes), std::move(lines));
}

MagicConfiguration wa_triangle_3q() {
  Builder b{3, 2, {}, {}};
  int single[3][3];  // [letter][site]
  int pair[3][3];    // [letter][pair]
  const char letters[] = {'X', 'Y', 'Z'};
  const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
  for (int l = 0; l < 3; ++l) {
    const std::string s(1, letters[l]);
    for (int a = 0; a < 3; ++a) single[l][a] = b.node(s + std::to_string(a + 1), s + std::to_string(a + 1));
    for (int p = 0; p < 3; ++p) {
      const std::string i = std::to_string(pairs[p][0] + 1), j = std::to_string(pairs[p][1] + 1);
      pair[l][p] = b.node(s + i + j, s + i + " " + s + j);
    }
  }
  for (int l = 0; l < 3; ++l) {
    for (int p = 0; p < 3; ++p) {
      b.line(std::string(1, letters[l]) + " edge " + std::to_string(p + 1),
             {single[l][pairs[p][0]], single[l][pairs[p][1]], pair[l][p]}, 0);
    }
  }
  for (int p = 0; p < 3; ++p) {
    b.line("pair " + std::to_string(p + 1), {pair[0][p], pair[1][p], pair[2][p]}, 2);
  }
  return MagicConfiguration("wa_triangle_3q", std::move(b.nodes), std::move(b.lines), true);
}

MagicConfiguration pentagram_3q() {
  Builder b{3, 2, {}, {}};
  const int g1 = b.node("G1", "X1 Z2 Z3"), g2 = b.node("G2", "Z1 X2 Z3"), g3 = b.node("G3", "Z1 Z2 X3");
  const int x1 = b.node("X1", "X1"), x2 = b.node("X2", "X2"), x3 = b.node("X3", "X3");
  const int x123 = b.node("X123", "X1 X2 X3");
  const int z23 = b.node("Z23", "Z2 Z3"), z13 = b.node("Z13", "Z1 Z3"), z12 = b.node("Z12", "Z1 Z2");
  b.line("stabilizers", {g1, g2, g3, x123}, 2);
  b.line("shifts", {x1, x2, x3, x123}, 0);
  b.line("vertex 1", {g1, x1, z23}, 0);
  b.line("vertex 2", {g2, x2, z13}, 0);
  b.line("vertex 3", {g3, x3, z12}, 0);
  b.line("pairs", {z12, z23, z13}, 0);
  return MagicConfiguration("pentagram_3q", std::move(b.nodes), std::move(b.lines), true);
}

std::vector<MagicConfiguration> builtin_configurations() {
  return {pm_square_2q(),   pm_square_3q(),   pm_square_odd(5),
          qudit_config(triangle_ghz(2)), qudit_config(triangle_ghz(4)),
          wa_triangle_3q(), pentagram_3q()};
}

}  // namespace contextlab
