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

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "contextlab/ghz.hpp"
#include "contextlab/report.hpp"
#include "contextlab/state.hpp"
#include "contextlab/weyl.hpp"

namespace contextlab {

enum class OutcomeStatus { kForbidden, kForced, kPossible };
const char* to_string(OutcomeStatus s);

/// What the operator-sandwich derivation says about one outcome of an
/// intermediate context.
struct Prediction {
  enum class Kind { kForbidden, kForced };
  Kind kind;
  std::vector<int> outcome;  // tau exponents, one per observable
};

struct OutcomeVerdict {
  std::vector<int> outcome;  // tau exponents
  std::string label;
  /// <psi_i|P|psi_f>, or ||P_pre P P_post|| for subspace scenarios.
  std::complex<double> amplitude;
  std::optional<double> probability;  // ABL; absent for subspace scenarios
  OutcomeStatus status = OutcomeStatus::kPossible;
};

struct ContextVerdict {
  std::string name;
  MeasurementContext context;
  std::vector<OutcomeVerdict> outcomes;
  std::optional<Prediction> prediction;
  bool prediction_agrees = true;

  const OutcomeVerdict* find(std::span<const int> outcome) const;
  /// The forced outcome, if one exists.
  const OutcomeVerdict* forced() const;
};

/// Result of enumerating every joint outcome of the "hole" context (classical
/// configurations) against the quantum verdicts.
struct ClassicalCheck {
  std::string hole_context;
  int configurations = 0;
  int consistent = 0;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> parameters;
  bool feasible = true;
  /// |<psi_i|psi_f>|, or ||P_pre P_post|| for subspace scenarios.
  double overlap = 0.0;
  std::vector<ContextVerdict> contexts;
  std::vector<std::pair<std::string, int>> values;
  std::optional<ClassicalCheck> classical;
  bool contradiction = false;
  std::vector<Check> checks;
  std::vector<std::string> trace;

  bool passed() const;
  /// Throws std::out_of_range for an unknown name.
  const ContextVerdict& context(std::string_view name) const;
  int value(std::string_view name) const;
};

using Signs = std::array<int, 3>;

/// |+,+,+> to |0,0,0>_Y with Z_ab measured in between.
ScenarioReport pigeonhole_original(const VerifyOptions& opts = {});
/// Pre {X_a} = s, post {Y_a} = t; Pi_ab^{v_ab} is forbidden for v_ab = s_a s_b t_a t_b.
ScenarioReport pigeonhole_state_independent(const Signs& s, const Signs& t,
                                            const VerifyOptions& opts = {});
/// Pre in the +1 space of {X_12, X_23, X_13}, post in the +1 space of the Y
/// pairs. Without vectors, checks ||P_pre Pi_ab^+ P_post|| = 0 on the whole
/// subspaces. Throws ContractViolation if a vector lies outside its subspace.
ScenarioReport magic_square_pigeonhole(const std::optional<StateVector>& pre = std::nullopt,
                                       const std::optional<StateVector>& post = std::nullopt,
                                       const VerifyOptions& opts = {});
/// |Phi_+> to |+>|0> with {Z_1}, {X_2}, {Z_1 X_2} in between.
ScenarioReport cheshire_cat(const VerifyOptions& opts = {});
/// Pre {X_12, Z_12} = ((-1)^alpha, (-1)^beta), post {X_1, Z_2} = ((-1)^mu, (-1)^nu).
ScenarioReport cheshire_cat_state_independent(int alpha, int beta, int mu, int nu,
                                              const VerifyOptions& opts = {});
/// Pre {G_a = X_a Z_b Z_c} = s, post {X_a} = t; feasible iff s t = -1.
ScenarioReport ghz_pentagram(const Signs& s, const Signs& t, const VerifyOptions& opts = {});
/// Pre {G_a} = w^g, post {X_a} = w^h (exponents), intermediate Z_{N_a}.
/// Throws ContractViolation unless `graph` is a GHZ graph.
ScenarioReport qudit_pigeonhole(const WeightedGraph& graph, std::span<const int> g,
                                std::span<const int> h, const VerifyOptions& opts = {});
/// Pre {Z_a} = w^s, post {X_a} = w^h, intermediate G_a.
ScenarioReport qudit_product_prepost(const WeightedGraph& graph, std::span<const int> s,
                                     std::span<const int> h, const VerifyOptions& opts = {});

/// Post-selection success with |Phi_+> prepared: a single {X_1, Z_2} outcome
/// versus accepting all four.
struct SuccessProbability {
  double single_outcome = 0.0;
  double all_outcomes = 0.0;
  double increase_percent = 0.0;
};
SuccessProbability postselection_success(const VerifyOptions& opts = {});
ScenarioReport success_probability_report(const VerifyOptions& opts = {});

// Exhaustive parameter sweeps, in deterministic order.
std::vector<ScenarioReport> sweep_pigeonhole_state_independent(const VerifyOptions& opts = {});
std::vector<ScenarioReport> sweep_cheshire_cat(const VerifyOptions& opts = {});
std::vector<ScenarioReport> sweep_ghz_pentagram(const VerifyOptions& opts = {});
/// Every (g, h) pair of exponent tuples.
std::vector<ScenarioReport> sweep_qudit_pigeonhole(const WeightedGraph& graph,
                                                   const VerifyOptions& opts = {});
std::vector<ScenarioReport> sweep_qudit_product(const WeightedGraph& graph,
                                                const VerifyOptions& opts = {});
/// `count` random unit-vector pairs drawn inside the two 2-dim subspaces.
std::vector<ScenarioReport> sweep_magic_square_random(int count, std::uint64_t seed,
                                                      const VerifyOptions& opts = {});

/// Random unit vector in the range of a projector.
StateVector random_state_in(const Matrix& projector, std::mt19937_64& rng);

}  // namespace contextlab
