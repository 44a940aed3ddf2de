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

#include <string>
#include <string_view>
#include <vector>

#include "contextlab/ghz.hpp"
#include "contextlab/report.hpp"
#include "contextlab/state.hpp"
#include "contextlab/weyl.hpp"

namespace contextlab {

struct MagicNode {
  std::string label;
  WeylOperator op;
};

struct LineOccurrence {
  int node = 0;
  bool dagger = false;
};

struct MagicLine {
  std::string label;
  std::vector<LineOccurrence> members;
  int claimed_phase = 0;  // tau exponent
};

/// Observables (nodes) arranged in lines of commuting members, each line
/// carrying a claimed product.
class MagicConfiguration {
 public:
  /// Throws MalformedConfiguration if nodes differ in shape, a line is empty,
  /// references a missing node or holds non-commuting members, or a node sits
  /// on fewer than two lines.
  MagicConfiguration(std::string name, std::vector<MagicNode> nodes, std::vector<MagicLine> lines,
                     bool reconstructed = false);

  const std::string& name() const { return name_; }
  const std::vector<MagicNode>& nodes() const { return nodes_; }
  const std::vector<MagicLine>& lines() const { return lines_; }
  bool reconstructed() const { return reconstructed_; }
  int sites() const { return nodes_.front().op.sites(); }
  int dim() const { return nodes_.front().op.dim(); }
  /// Number of lines each node occurs on.
  std::vector<int> occurrences() const;

 private:
  std::string name_;
  std::vector<MagicNode> nodes_;
  std::vector<MagicLine> lines_;
  bool reconstructed_ = false;
};

struct LineCheck {
  std::string label;
  int computed_phase = 0;  // tau exponent of the symbolic product
  int claimed_phase = 0;
  /// max |M - tau^computed I| over the matrix product.
  double matrix_residual = 0.0;
  bool matches_claim = false;
};

struct ProductVerification {
  std::vector<LineCheck> lines;
  bool all_match = false;
  double max_matrix_residual = 0.0;
};

/// Multiplies every line left to right, symbolically and as matrices (the
/// adjoint for daggered occurrences). Throws MalformedConfiguration if a
/// product is not a multiple of the identity.
ProductVerification verify_quantum_products(const MagicConfiguration& cfg,
                                            const VerifyOptions& opts = {});

enum class ParityStructure { kEven, kDaggerPaired, kNone };
const char* to_string(ParityStructure s);

struct ParityResult {
  ParityStructure structure = ParityStructure::kNone;
  int grand_phase = 0;  // tau exponent of the product of claimed phases
  bool contradiction = false;
  std::string verdict;
};

/// A node used e times net (plain minus daggered) contributes v^e to the
/// valuation product; when node^e = I for every node, any noncontextual
/// valuation multiplies to 1 and a grand product other than 1 is a
/// contradiction.
ParityResult parity_contradiction(const MagicConfiguration& cfg);

struct ConfigurationReport {
  ProductVerification products;
  ParityResult parity;
  std::vector<Check> checks;
  bool passed() const;
};
ConfigurationReport check_configuration(const MagicConfiguration& cfg,
                                        const VerifyOptions& opts = {});

/// Two-qubit square, rows {X1, X2, X12}, {Z2, Z1, Z12}, {X1Z2, Z1X2, Y12}.
MagicConfiguration pm_square_2q();
/// Three-qubit square, rows of X, Z and Y pairs over (12, 23, 13).
MagicConfiguration pm_square_3q();
/// Rows of X, Z and Y pairs over the n cyclic adjacent pairs, n odd.
MagicConfiguration pm_square_odd(int n);
/// 3 x (n+1) qudit square for a GHZ graph: rows {X_a, X_V^dag}, {Z_Na, I},
/// {G_a^dag, X_V}; rows plain, columns daggered.
MagicConfiguration qudit_config(const WeightedGraph& graph);
/// Triangle over {X_a, Y_a, Z_a, X_ab, Y_ab, Z_ab}, reconstructed.
MagicConfiguration wa_triangle_3q();
/// Ten nodes {G_a, X_a, Z_ab, X123}, each on two lines, reconstructed.
MagicConfiguration pentagram_3q();

/// Every shipped configuration, including pm_square_odd(5) and the qudit square
/// for the GHZ triangle at d = 2 and d = 4.
std::vector<MagicConfiguration> builtin_configurations();

}  // namespace contextlab
