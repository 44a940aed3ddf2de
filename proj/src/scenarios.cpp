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

#include "contextlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace contextlab {
namespace {

int mod(long long v, long long m) { return static_cast<int>(((v % m) + m) % m); }

// Qubit eigenvalue (-1)^bit or a sign, in tau units (tau = i for d = 2).
int tau_of_sign(int sign) { return sign > 0 ? 0 : 2; }
int tau_of_bit(int bit) { return mod(bit, 2) == 0 ? 0 : 2; }

std::string sign_str(int sign) { return sign > 0 ? "+" : "-"; }

std::string signs_str(const Signs& s) {
  return sign_str(s[0]) + "," + sign_str(s[1]) + "," + sign_str(s[2]);
}

std::string ints_str(std::span<const int> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string eigen_label(int tau_exponent, int d) {
  if (tau_exponent % 2 != 0) return "tau^" + std::to_string(tau_exponent);
  const int k = tau_exponent / 2;
  if (d == 2) return k == 0 ? "+1" : "-1";
  return k == 0 ? "1" : "w^" + std::to_string(k);
}

std::string outcome_label(const MeasurementContext& ctx, std::span<const int> outcome) {
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx.labels()[i] + "=" + eigen_label(outcome[i], ctx.dim());
  }
  return out;
}

WeylOperator qubits(std::string_view text, int n = 3) { return parse_weyl(text, n, 2); }

MeasurementContext context_of(std::initializer_list<std::string_view> ops, int n, int d) {
  std::vector<WeylOperator> obs;
  std::vector<std::string> labels;
  for (auto op : ops) {
    obs.push_back(parse_weyl(op, n, d));
    labels.emplace_back(op);
  }
  return MeasurementContext(std::move(obs), std::move(labels));
}

void finalize(ContextVerdict& cv) {
  for (auto& o : cv.outcomes) {
    if (o.status == OutcomeStatus::kForbidden) continue;
    const bool siblings_forbidden =
        std::all_of(cv.outcomes.begin(), cv.outcomes.end(), [&](const OutcomeVerdict& other) {
          return &other == &o || other.status == OutcomeStatus::kForbidden;
        });
    o.status = siblings_forbidden ? OutcomeStatus::kForced : OutcomeStatus::kPossible;
  }
  if (!cv.prediction) return;
  const OutcomeVerdict* target = cv.find(cv.prediction->outcome);
  if (cv.prediction->kind == Prediction::Kind::kForbidden) {
    cv.prediction_agrees = target == nullptr || target->status == OutcomeStatus::kForbidden;
  } else {
    cv.prediction_agrees = target != nullptr && target->status == OutcomeStatus::kForced;
  }
}

ContextVerdict evaluate_vectors(std::string name, const MeasurementContext& ctx,
                                const StateVector& psi_i, const StateVector& psi_f,
                                std::optional<Prediction> prediction, const VerifyOptions& opts) {
  ContextVerdict cv{std::move(name), ctx, {}, std::move(prediction), true};
  std::vector<Matrix> projectors;
  bool any_nonzero = false;
  for (auto& op : joint_outcomes(ctx, opts.max_dim)) {
    OutcomeVerdict o;
    o.outcome = op.outcome;
    o.label = outcome_label(ctx, op.outcome);
    o.amplitude = amplitude(psi_i, op.matrix, psi_f);
    o.status = std::abs(o.amplitude) < opts.tolerance ? OutcomeStatus::kForbidden
                                                      : OutcomeStatus::kPossible;
    any_nonzero = any_nonzero || o.status != OutcomeStatus::kForbidden;
    cv.outcomes.push_back(std::move(o));
    projectors.push_back(std::move(op.matrix));
  }
  if (any_nonzero) {
    const auto p = abl_probability(psi_i, psi_f, projectors, opts.tolerance);
    for (std::size_t k = 0; k < p.size(); ++k) cv.outcomes[k].probability = p[k];
  }
  finalize(cv);
  return cv;
}

// `pre` and `post` hold either one state (a column) or a projector; the
// "amplitude" is ||pre^dag P post||.
ContextVerdict evaluate_subspaces(std::string name, const MeasurementContext& ctx,
                                  const Matrix& pre, const Matrix& post,
                                  std::optional<Prediction> prediction, const VerifyOptions& opts) {
  ContextVerdict cv{std::move(name), ctx, {}, std::move(prediction), true};
  for (auto& op : joint_outcomes(ctx, opts.max_dim)) {
    OutcomeVerdict o;
    o.outcome = op.outcome;
    o.label = outcome_label(ctx, op.outcome);
    o.amplitude = operator_norm(pre.adjoint() * op.matrix * post);
    o.status = std::abs(o.amplitude) < opts.tolerance ? OutcomeStatus::kForbidden
                                                      : OutcomeStatus::kPossible;
    cv.outcomes.push_back(std::move(o));
  }
  finalize(cv);
  return cv;
}

// Every joint outcome of `hole` is a classical configuration; it is consistent
// when no intermediate context takes a forbidden value on it.
ClassicalCheck classical_check(const MeasurementContext& hole, std::string hole_name,
                               const std::vector<ContextVerdict>& verdicts,
                               const VerifyOptions& opts) {
  ClassicalCheck out{std::move(hole_name), 0, 0};
  std::vector<std::vector<Matrix>> projectors;
  for (const auto& cv : verdicts) {
    std::vector<Matrix> ps;
    for (const auto& o : cv.outcomes) {
      ps.push_back(outcome_projector(cv.context, o.outcome, opts.max_dim).matrix);
    }
    projectors.push_back(std::move(ps));
  }
  for (const auto& config : joint_outcomes(hole, opts.max_dim)) {
    ++out.configurations;
    const auto basis = range_basis(config.matrix);
    bool consistent = true;
    for (std::size_t c = 0; c < verdicts.size(); ++c) {
      std::size_t which = projectors[c].size();
      for (std::size_t k = 0; k < projectors[c].size(); ++k) {
        const bool contains = std::all_of(basis.begin(), basis.end(), [&](const StateVector& v) {
          return (projectors[c][k] * v - v).norm() < 1e-8;
        });
        if (contains) {
          which = k;
          break;
        }
      }
      if (which == projectors[c].size()) {
        throw std::logic_error("hole configuration does not fix the value of " +
                               verdicts[c].name);
      }
      if (verdicts[c].outcomes[which].status == OutcomeStatus::kForbidden) consistent = false;
    }
    if (consistent) ++out.consistent;
  }
  return out;
}

void add_overlap(ScenarioReport& r, const StateVector& psi_i, const StateVector& psi_f,
                 const VerifyOptions& opts) {
  r.overlap = std::abs(psi_i.dot(psi_f));
  r.feasible = r.overlap > opts.tolerance;
}

void add_context_checks(ScenarioReport& r, const VerifyOptions& opts) {
  for (const auto& cv : r.contexts) {
    if (!cv.prediction) continue;
    const OutcomeVerdict* target = cv.find(cv.prediction->outcome);
    const bool forbidden = cv.prediction->kind == Prediction::Kind::kForbidden;
    std::string what = forbidden ? "forbidden" : "forced";
    std::string label =
        target ? target->label : outcome_label(cv.context, cv.prediction->outcome);
    r.checks.push_back(exact_check(cv.name + ": derivation and amplitudes agree", cv.prediction_agrees,
                                   label + " predicted " + what));
    if (forbidden && target) {
      r.checks.push_back(numeric_check(cv.name + ": predicted outcome has zero amplitude",
                                       std::abs(target->amplitude), opts.tolerance, label));
    }
    if (!forbidden && target) {
      for (const auto& o : cv.outcomes) {
        if (&o == target) continue;
        r.checks.push_back(numeric_check(cv.name + ": sibling of forced outcome vanishes",
                                         std::abs(o.amplitude), opts.tolerance, o.label));
      }
    }
  }
}

Check identity_check(const std::string& name, const WeylOperator& lhs, const WeylOperator& rhs) {
  return exact_check(name, lhs == rhs, format_weyl(lhs) + " vs " + format_weyl(rhs));
}

const std::array<std::array<int, 3>, 3> kPairs = {{{0, 1, 2}, {1, 2, 0}, {0, 2, 1}}};

std::string pair_name(int a, int b) { return std::to_string(a + 1) + std::to_string(b + 1); }

WeylOperator pair_op(char letter, int a, int b) {
  return qubits(std::string(1, letter) + std::to_string(a + 1) + " " + letter +
                std::to_string(b + 1));
}

MeasurementContext z_pair_context(int a, int b) {
  return MeasurementContext({pair_op('Z', a, b)}, {"Z" + pair_name(a, b)});
}

// Shared by the original and the state-independent pigeonhole scenarios.
ScenarioReport pigeonhole_impl(std::string name, const Signs& s, const Signs& t,
                               const VerifyOptions& opts) {
  ScenarioReport r;
  r.scenario = std::move(name);
  r.parameters = {{"s", signs_str(s)}, {"t", signs_str(t)}};
  const auto pre = context_of({"X1", "X2", "X3"}, 3, 2);
  const auto post = context_of({"Y1", "Y2", "Y3"}, 3, 2);
  const int pre_out[] = {tau_of_sign(s[0]), tau_of_sign(s[1]), tau_of_sign(s[2])};
  const int post_out[] = {tau_of_sign(t[0]), tau_of_sign(t[1]), tau_of_sign(t[2])};
  const StateVector psi_i = joint_eigenstate(pre, pre_out, opts.max_dim);
  const StateVector psi_f = joint_eigenstate(post, post_out, opts.max_dim);
  add_overlap(r, psi_i, psi_f, opts);
  r.trace.push_back("prepare {X1,X2,X3} = (" + signs_str(s) + "), post-select {Y1,Y2,Y3} = (" +
                    signs_str(t) + ")");

  int parity = 1;
  for (const auto& [a, b, c] : kPairs) {
    const std::string ab = pair_name(a, b);
    const int v = s[a] * s[b] * t[a] * t[b];
    parity *= v;
    r.values.emplace_back("v" + ab, v);
    const WeylOperator xab = pair_op('X', a, b), yab = pair_op('Y', a, b), zab = pair_op('Z', a, b);
    r.checks.push_back(identity_check("Y" + ab + " = -Z" + ab + " X" + ab, yab, (zab * xab).negated()));
    r.checks.push_back(exact_check("X" + ab + " commutes with Z" + ab, commutes(xab, zab)));
    r.trace.push_back("v" + ab + " <psi_i|Pi^v|psi_f> = <psi_i|X" + ab + " Pi^v Y" + ab +
                      "|psi_f> = -<psi_i|X" + ab + " Pi^v Z" + ab + " X" + ab +
                      "|psi_f> = -v" + ab + " <psi_i|Pi^v|psi_f>, v" + ab + " = " +
                      sign_str(v) + "1, so Pi_" + ab + "^" + sign_str(v) + " never fires");
    Prediction p{Prediction::Kind::kForbidden, {tau_of_sign(v)}};
    r.contexts.push_back(
        evaluate_vectors("Z" + ab, z_pair_context(a, b), psi_i, psi_f, std::move(p), opts));
  }
  r.values.emplace_back("parity", parity);
  r.checks.push_back(exact_check("v12 v23 v13 = +1", parity == 1));
  add_context_checks(r, opts);

  r.classical = classical_check(context_of({"Z1", "Z2", "Z3"}, 3, 2), "{Z1,Z2,Z3}", r.contexts, opts);
  r.contradiction = r.feasible && r.classical->consistent == 0;
  r.checks.push_back(exact_check("no classical configuration matches the forced Z_ab values",
                                 r.contradiction,
                                 std::to_string(r.classical->consistent) + " of " +
                                     std::to_string(r.classical->configurations) + " consistent"));
  r.trace.push_back("with parity +1 the forced values need an odd number of unequal pairs; "
                    "three pigeons in two holes give an even number");
  return r;
}

}  // namespace

const char* to_string(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::kForbidden: return "forbidden";
    case OutcomeStatus::kForced: return "forced";
    default: return "possible";
  }
}

const OutcomeVerdict* ContextVerdict::find(std::span<const int> outcome) const {
  for (const auto& o : outcomes) {
    if (std::equal(o.outcome.begin(), o.outcome.end(), outcome.begin(), outcome.end())) return &o;
  }
  return nullptr;
}

const OutcomeVerdict* ContextVerdict::forced() const {
  for (const auto& o : outcomes) {
    if (o.status == OutcomeStatus::kForced) return &o;
  }
  return nullptr;
}

bool ScenarioReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const ContextVerdict& ScenarioReport::context(std::string_view name) const {
  for (const auto& c : contexts) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no context named " + std::string(name));
}

int ScenarioReport::value(std::string_view name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  throw std::out_of_range("no value named " + std::string(name));
}

ScenarioReport pigeonhole_original(const VerifyOptions& opts) {
  ScenarioReport r = pigeonhole_impl("pigeonhole-original", {1, 1, 1}, {1, 1, 1}, opts);
  r.parameters.clear();
  for (const auto& cv : r.contexts) {
    const OutcomeVerdict* minus = cv.find(std::vector<int>{2});
    const double p = minus && minus->probability ? *minus->probability : 0.0;
    r.checks.push_back(numeric_check(cv.name + ": ABL probability of Pi^- is 1", std::abs(1.0 - p),
                                     opts.tolerance));
  }
  return r;
}

ScenarioReport pigeonhole_state_independent(const Signs& s, const Signs& t,
                                            const VerifyOptions& opts) {
  for (int v : s) {
    if (v != 1 && v != -1) throw ContractViolation("signs must be +1 or -1");
  }
  for (int v : t) {
    if (v != 1 && v != -1) throw ContractViolation("signs must be +1 or -1");
  }
  return pigeonhole_impl("pigeonhole-si", s, t, opts);
}

ScenarioReport magic_square_pigeonhole(const std::optional<StateVector>& pre,
                                       const std::optional<StateVector>& post,
                                       const VerifyOptions& opts) {
  ScenarioReport r;
  r.scenario = "magic-square-pigeonhole";
  const int zeros[] = {0, 0, 0};
  const Matrix p_pre = outcome_projector(context_of({"X1 X2", "X2 X3", "X1 X3"}, 3, 2), zeros,
                                         opts.max_dim).matrix;
  const Matrix p_post = outcome_projector(context_of({"Y1 Y2", "Y2 Y3", "Y1 Y3"}, 3, 2), zeros,
                                          opts.max_dim).matrix;
  auto validate = [&](const StateVector& v, const Matrix& p, const char* which) {
    require_same_dim(v.size(), p.rows(), which);
    require_unit(v, opts.tolerance);
    if ((p * v - v).norm() > opts.tolerance) {
      throw ContractViolation(std::string(which) + " vector lies outside its +1 subspace");
    }
  };
  if (pre) validate(*pre, p_pre, "pre-selection");
  if (post) validate(*post, p_post, "post-selection");
  r.parameters = {{"pre", pre ? "vector" : "subspace"}, {"post", post ? "vector" : "subspace"}};
  r.trace.push_back("pre-selection: +1 space of {X12,X23,X13} (rank " +
                    std::to_string(std::lround(p_pre.trace().real())) +
                    "); post-selection: +1 space of {Y12,Y23,Y13} (rank " +
                    std::to_string(std::lround(p_post.trace().real())) + ")");

  const bool vector_mode = pre && post;
  const Matrix a = pre ? Matrix(*pre) : p_pre;
  const Matrix b = post ? Matrix(*post) : p_post;
  if (vector_mode) {
    add_overlap(r, *pre, *post, opts);
  } else {
    r.overlap = operator_norm(a.adjoint() * b);
    r.feasible = r.overlap > opts.tolerance;
  }
  for (const auto& [x, y, c] : kPairs) {
    const std::string ab = pair_name(x, y);
    Prediction p{Prediction::Kind::kForbidden, {0}};
    auto cv = vector_mode
                  ? evaluate_vectors("Z" + ab, z_pair_context(x, y), *pre, *post, p, opts)
                  : evaluate_subspaces("Z" + ab, z_pair_context(x, y), a, b, p, opts);
    const OutcomeVerdict* plus = cv.find(std::vector<int>{0});
    r.checks.push_back(numeric_check("||P_pre Pi_" + ab + "^+ P_post|| vanishes",
                                     plus ? std::abs(plus->amplitude) : 0.0, opts.tolerance));
    r.trace.push_back("P_pre Pi_" + ab + "^+ P_post = 0, so Pi_" + ab +
                      "^+ is forbidden for every pre/post pair in the subspaces");
    r.contexts.push_back(std::move(cv));
  }
  add_context_checks(r, opts);
  r.classical = classical_check(context_of({"Z1", "Z2", "Z3"}, 3, 2), "{Z1,Z2,Z3}", r.contexts, opts);
  r.contradiction = r.feasible && r.classical->consistent == 0;
  r.checks.push_back(exact_check("no classical configuration has every pair different",
                                 r.contradiction,
                                 std::to_string(r.classical->consistent) + " of " +
                                     std::to_string(r.classical->configurations) + " consistent"));
  return r;
}

ScenarioReport cheshire_cat_state_independent(int alpha, int beta, int mu, int nu,
                                              const VerifyOptions& opts) {
  for (int bit : {alpha, beta, mu, nu}) {
    if (bit != 0 && bit != 1) throw ContractViolation("Cheshire parameters must be bits");
  }
  ScenarioReport r;
  r.scenario = "cheshire-si";
  r.parameters = {{"alpha", std::to_string(alpha)},
                  {"beta", std::to_string(beta)},
                  {"mu", std::to_string(mu)},
                  {"nu", std::to_string(nu)}};
  const auto pre = context_of({"X1 X2", "Z1 Z2"}, 2, 2);
  const auto post = context_of({"X1", "Z2"}, 2, 2);
  const int pre_out[] = {tau_of_bit(alpha), tau_of_bit(beta)};
  const int post_out[] = {tau_of_bit(mu), tau_of_bit(nu)};
  const StateVector psi_i = joint_eigenstate(pre, pre_out, opts.max_dim);
  const StateVector psi_f = joint_eigenstate(post, post_out, opts.max_dim);
  add_overlap(r, psi_i, psi_f, opts);

  const int u = mod(beta + nu, 2);
  const int v = mod(alpha + mu, 2);
  const int w = mod(alpha + beta + mu + nu, 2);
  r.values = {{"u", u}, {"v", v}, {"w", w}, {"z1x2_forced", mod(w + 1, 2)}};

  const auto z1 = qubits("Z1", 2), z2 = qubits("Z2", 2), x1 = qubits("X1", 2), x2 = qubits("X2", 2);
  const auto x12 = qubits("X1 X2", 2), z12 = qubits("Z1 Z2", 2), y12 = qubits("Y1 Y2", 2);
  const auto x1z2 = qubits("X1 Z2", 2), z1x2 = qubits("Z1 X2", 2);
  r.checks.push_back(identity_check("Z12 Z2 = Z1", z12 * z2, z1));
  r.checks.push_back(identity_check("X12 X1 = X2", x12 * x1, x2));
  r.checks.push_back(identity_check("Y12 = -X12 Z12", y12, (x12 * z12).negated()));
  r.checks.push_back(identity_check("Y12 X1 Z2 = Z1 X2", y12 * x1z2, z1x2));
  r.checks.push_back(exact_check("Z2 commutes with Z1, X1 with X2, and Y12, X1Z2 with Z1X2",
                                 commutes(z2, z1) && commutes(x1, x2) && commutes(y12, z1x2) &&
                                     commutes(x1z2, z1x2)));
  r.trace.push_back("(-1)^(beta+nu) <Pi^Z1_u> = <psi_i|Z12 Pi^Z1_u Z2|psi_f> = (-1)^u <Pi^Z1_u>: "
                    "path u = " + std::to_string(u) + " is forced");
  r.trace.push_back("(-1)^(alpha+mu) <Pi^X2_v> = <psi_i|X12 Pi^X2_v X1|psi_f> = (-1)^v <Pi^X2_v>: "
                    "spin v = " + std::to_string(v) + " is forced");
  r.trace.push_back("(-1)^(alpha+beta+mu+nu) <Pi^ZX_w> = -<psi_i|Y12 Pi^ZX_w X1 Z2|psi_f> = "
                    "-(-1)^w <Pi^ZX_w>: outcome w = " + std::to_string(w) + " of Z1X2 never fires");

  r.contexts.push_back(evaluate_vectors("Z1", MeasurementContext({z1}, {"Z1"}), psi_i, psi_f,
                                        Prediction{Prediction::Kind::kForced, {tau_of_bit(u)}}, opts));
  r.contexts.push_back(evaluate_vectors("X2", MeasurementContext({x2}, {"X2"}), psi_i, psi_f,
                                        Prediction{Prediction::Kind::kForced, {tau_of_bit(v)}}, opts));
  r.contexts.push_back(evaluate_vectors("Z1X2", MeasurementContext({z1x2}, {"Z1X2"}), psi_i, psi_f,
                                        Prediction{Prediction::Kind::kForbidden, {tau_of_bit(w)}},
                                        opts));
  add_context_checks(r, opts);

  // The correlation is forced to (-1)^{w+1} while path and spin multiply to (-1)^{u+v} = (-1)^w.
  const bool anti = mod(w + 1, 2) != mod(u + v, 2);
  r.checks.push_back(exact_check("forced Z1X2 value is anti-aligned with path times spin", anti));
  r.trace.push_back(std::string("the spin |") + (v == 0 ? "+" : "-") + ">_2 is correlated with path |" +
                    std::to_string(mod(u + 1, 2)) + ">_1 while the particle takes path |" +
                    std::to_string(u) + ">_1");
  r.classical = classical_check(context_of({"Z1", "X2"}, 2, 2), "{Z1,X2}", r.contexts, opts);
  r.contradiction = r.feasible && r.classical->consistent == 0;
  r.checks.push_back(exact_check("no noncontextual (path, spin) pair fits all three verdicts",
                                 r.contradiction,
                                 std::to_string(r.classical->consistent) + " of " +
                                     std::to_string(r.classical->configurations) + " consistent"));
  return r;
}

ScenarioReport cheshire_cat(const VerifyOptions& opts) {
  ScenarioReport r = cheshire_cat_state_independent(0, 0, 0, 0, opts);
  r.scenario = "cheshire-cat";
  r.parameters.clear();
  return r;
}

ScenarioReport ghz_pentagram(const Signs& s, const Signs& t, const VerifyOptions& opts) {
  for (int v : s) {
    if (v != 1 && v != -1) throw ContractViolation("signs must be +1 or -1");
  }
  for (int v : t) {
    if (v != 1 && v != -1) throw ContractViolation("signs must be +1 or -1");
  }
  ScenarioReport r;
  r.scenario = "ghz-pentagram";
  r.parameters = {{"s", signs_str(s)}, {"t", signs_str(t)}};
  const std::vector<WeylOperator> g = {qubits("X1 Z2 Z3"), qubits("Z1 X2 Z3"), qubits("Z1 Z2 X3")};
  const MeasurementContext pre(g, {"G1", "G2", "G3"});
  const auto post = context_of({"X1", "X2", "X3"}, 3, 2);
  const int pre_out[] = {tau_of_sign(s[0]), tau_of_sign(s[1]), tau_of_sign(s[2])};
  const int post_out[] = {tau_of_sign(t[0]), tau_of_sign(t[1]), tau_of_sign(t[2])};
  const StateVector psi_i = joint_eigenstate(pre, pre_out, opts.max_dim);
  const StateVector psi_f = joint_eigenstate(post, post_out, opts.max_dim);
  add_overlap(r, psi_i, psi_f, opts);

  const int st = s[0] * s[1] * s[2] * t[0] * t[1] * t[2];
  r.values.emplace_back("st", st);
  r.checks.push_back(identity_check("G1 G2 G3 = -X123", g[0] * g[1] * g[2], qubits("-X1 X2 X3")));
  r.checks.push_back(exact_check("feasible exactly when st = -1", r.feasible == (st == -1),
                                 "|<psi_i|psi_f>| = " + std::to_string(r.overlap)));
  r.trace.push_back("-s <psi_i|psi_f> = <psi_i|X123|psi_f> = t <psi_i|psi_f>, so the pair is "
                    "orthogonal unless st = -1 (here st = " + sign_str(st) + "1)");
  if (!r.feasible) {
    r.checks.push_back(numeric_check("infeasible pair has zero overlap", r.overlap, opts.tolerance));
    r.trace.push_back("pre/post pair is infeasible; no intermediate verdicts");
    return r;
  }
  int parity = 1;
  for (const auto& [a, b, c] : kPairs) {
    const std::string ab = pair_name(a, b);
    const int v = t[c] * s[c];
    parity *= v;
    r.values.emplace_back("v" + ab, v);
    const WeylOperator xc = WeylOperator::shift(3, 2, c);
    r.checks.push_back(identity_check("G" + std::to_string(c + 1) + " X" + std::to_string(c + 1) +
                                          " = Z" + ab,
                                      g[c] * xc, pair_op('Z', a, b)));
    r.trace.push_back("s" + std::to_string(c + 1) + "t" + std::to_string(c + 1) +
                      " <Pi_ab^v> = <psi_i|G_c Pi_ab^v X_c|psi_f> = v <Pi_ab^v>: Z" + ab +
                      " is forced to " + sign_str(v) + "1");
    Prediction p{Prediction::Kind::kForced, {tau_of_sign(v)}};
    r.contexts.push_back(
        evaluate_vectors("Z" + ab, z_pair_context(a, b), psi_i, psi_f, std::move(p), opts));
  }
  r.values.emplace_back("parity", parity);
  r.checks.push_back(exact_check("v12 v23 v13 = st = -1", parity == st && parity == -1));
  add_context_checks(r, opts);
  r.classical = classical_check(context_of({"Z1", "Z2", "Z3"}, 3, 2), "{Z1,Z2,Z3}", r.contexts, opts);
  r.contradiction = r.classical->consistent == 0;
  r.checks.push_back(exact_check("no classical configuration has an odd number of unequal pairs",
                                 r.contradiction,
                                 std::to_string(r.classical->consistent) + " of " +
                                     std::to_string(r.classical->configurations) + " consistent"));
  return r;
}

namespace {

void require_ghz(const WeightedGraph& graph) {
  if (!is_ghz_graph(graph).is_ghz) throw ContractViolation("graph is not a GHZ graph");
}

void require_exponents(std::span<const int> v, const WeightedGraph& graph, const char* what) {
  if (static_cast<int>(v.size()) != graph.vertices()) {
    throw ContractViolation(std::string(what) + " needs one exponent per vertex");
  }
}

MeasurementContext site_context(char letter, const WeightedGraph& graph) {
  std::vector<WeylOperator> ops;
  std::vector<std::string> labels;
  for (int a = 0; a < graph.vertices(); ++a) {
    ops.push_back(letter == 'X' ? WeylOperator::shift(graph.vertices(), graph.dim(), a)
                                : WeylOperator::clock(graph.vertices(), graph.dim(), a));
    labels.push_back(std::string(1, letter) + std::to_string(a + 1));
  }
  return MeasurementContext(std::move(ops), std::move(labels));
}

std::vector<int> doubled(std::span<const int> omega_exponents, int d) {
  std::vector<int> out;
  for (int e : omega_exponents) out.push_back(mod(2LL * e, 2LL * d));
  return out;
}

long long sum_of(std::span<const int> v) {
  long long s = 0;
  for (int e : v) s += e;
  return s;
}

}  // namespace

ScenarioReport qudit_pigeonhole(const WeightedGraph& graph, std::span<const int> g,
                                std::span<const int> h, const VerifyOptions& opts) {
  require_ghz(graph);
  require_exponents(g, graph, "g");
  require_exponents(h, graph, "h");
  const int n = graph.vertices();
  const int d = graph.dim();
  ScenarioReport r;
  r.scenario = "qudit-pigeonhole";
  r.parameters = {{"n", std::to_string(n)}, {"d", std::to_string(d)},
                  {"g", ints_str(g)}, {"h", ints_str(h)}};
  const auto gens = stabilizer_generators(graph);
  const StateVector psi_i = eigenstate_family(graph, g, opts.max_dim);
  const StateVector psi_f = joint_eigenstate(site_context('X', graph), doubled(h, d), opts.max_dim);
  add_overlap(r, psi_i, psi_f, opts);

  r.checks.push_back(identity_check("prod G_a = -X_V", weyl_product(gens, n, d),
                                    global_shift(graph).negated()));
  // prod h = -prod g  <=>  sum h = sum g + d/2 (mod d)
  const bool predicted_feasible = mod(sum_of(h) - sum_of(g) - d / 2, d) == 0;
  r.checks.push_back(exact_check("feasible only when prod h = -prod g",
                                 !r.feasible || predicted_feasible,
                                 "|<psi_i|psi_f>| = " + std::to_string(r.overlap)));
  r.trace.push_back("X_V = -prod G_a, so <psi_i|X_V|psi_f> forces prod h = -prod g");
  if (!r.feasible) {
    r.checks.push_back(numeric_check("infeasible pair has zero overlap", r.overlap, opts.tolerance));
    return r;
  }
  long long s_total = 0;
  for (int a = 0; a < n; ++a) {
    const std::string idx = std::to_string(a + 1);
    const int sa = mod(static_cast<long long>(g[a]) - h[a], d);
    s_total += sa;
    r.values.emplace_back("S" + idx, sa);
    const WeylOperator zn = neighborhood_clock(graph, a);
    const WeylOperator xa = WeylOperator::shift(n, d, a);
    r.checks.push_back(identity_check("G" + idx + " X" + idx + "^dag = Z_N" + idx,
                                      gens[a] * weyl_dagger(xa), zn));
    r.checks.push_back(exact_check("X" + idx + " commutes with Z_N" + idx, commutes(xa, zn)));
    r.trace.push_back("S <Pi^ZN" + idx + "_S> = <psi_i|G" + idx + " Pi X" + idx +
                      "^dag|psi_f> = g h^* <Pi>: Z_N" + idx + " forced to w^" + std::to_string(sa));
    Prediction p{Prediction::Kind::kForced, {mod(2LL * sa, 2LL * d)}};
    r.contexts.push_back(evaluate_vectors("Z_N" + idx, MeasurementContext({zn}, {"Z_N" + idx}),
                                          psi_i, psi_f, std::move(p), opts));
  }
  r.values.emplace_back("prod_S", mod(s_total, d));
  r.checks.push_back(exact_check("prod S_a = -1", mod(2 * s_total, 2LL * d) == d,
                                 "sum of exponents " + std::to_string(mod(s_total, d))));
  add_context_checks(r, opts);
  r.classical = classical_check(site_context('Z', graph), "{Z_a}", r.contexts, opts);
  r.contradiction = r.classical->consistent == 0;
  r.checks.push_back(exact_check("every classical configuration gives prod S_a = 1",
                                 r.contradiction,
                                 std::to_string(r.classical->consistent) + " of " +
                                     std::to_string(r.classical->configurations) + " consistent"));
  return r;
}

ScenarioReport qudit_product_prepost(const WeightedGraph& graph, std::span<const int> s,
                                     std::span<const int> h, const VerifyOptions& opts) {
  require_ghz(graph);
  require_exponents(s, graph, "s");
  require_exponents(h, graph, "h");
  const int n = graph.vertices();
  const int d = graph.dim();
  ScenarioReport r;
  r.scenario = "qudit-product";
  r.parameters = {{"n", std::to_string(n)}, {"d", std::to_string(d)},
                  {"s", ints_str(s)}, {"h", ints_str(h)}};
  const auto gens = stabilizer_generators(graph);
  const StateVector psi_i = joint_eigenstate(site_context('Z', graph), doubled(s, d), opts.max_dim);
  const StateVector psi_f = joint_eigenstate(site_context('X', graph), doubled(h, d), opts.max_dim);
  add_overlap(r, psi_i, psi_f, opts);
  r.checks.push_back(exact_check("product pre/post pair is feasible", r.feasible,
                                 "|<psi_i|psi_f>| = " + std::to_string(r.overlap)));
  const WeylOperator stab_product = weyl_product(gens, n, d);
  r.checks.push_back(identity_check("prod G_a = -X_V", stab_product, global_shift(graph).negated()));

  long long s_product = 0;
  for (int a = 0; a < n; ++a) {
    const std::string idx = std::to_string(a + 1);
    long long sa = 0;
    for (int b = 0; b < n; ++b) sa += static_cast<long long>(graph.weight(a, b)) * s[b];
    sa = mod(sa, d);
    s_product += sa;
    const int ga = mod(h[a] + sa, d);
    r.values.emplace_back("S" + idx, static_cast<int>(sa));
    r.values.emplace_back("g" + idx, ga);
    const WeylOperator zn = neighborhood_clock(graph, a);
    const WeylOperator xa = WeylOperator::shift(n, d, a);
    r.checks.push_back(identity_check("Z_N" + idx + " X" + idx + " = G" + idx, zn * xa, gens[a]));
    r.trace.push_back("h S <Pi^G" + idx + "_g> = <psi_i|Z_N" + idx + " Pi X" + idx +
                      "|psi_f> = g <Pi>: G" + idx + " forced to w^" + std::to_string(ga));
    Prediction p{Prediction::Kind::kForced, {mod(2LL * ga, 2LL * d)}};
    r.contexts.push_back(evaluate_vectors("G" + idx, MeasurementContext({gens[a]}, {"G" + idx}),
                                          psi_i, psi_f, std::move(p), opts));
  }
  r.values.emplace_back("prod_S", mod(s_product, d));
  r.checks.push_back(exact_check("prod S_a = 1", mod(s_product, d) == 0));
  add_context_checks(r, opts);

  // X_V = (prod G_a) / phase, evaluated on the numerically forced outcomes.
  long long forced_sum = 0;
  bool all_forced = true;
  for (const auto& cv : r.contexts) {
    const OutcomeVerdict* f = cv.forced();
    if (!f) {
      all_forced = false;
      break;
    }
    forced_sum += f->outcome[0];
  }
  const int derived_tau = mod(forced_sum - stab_product.phase(), 2LL * d);
  const std::complex<double> post_value =
      psi_f.dot(to_matrix(global_shift(graph), opts.max_dim) * psi_f);
  const int post_tau = mod(2 * (sum_of(h) % d), 2LL * d);
  r.values.emplace_back("xv_derived", derived_tau / 2);
  r.values.emplace_back("xv_post", post_tau / 2);
  r.checks.push_back(numeric_check("post-selected state has X_V eigenvalue prod h",
                                   std::abs(post_value - tau_power(post_tau, d)), opts.tolerance));
  r.contradiction = all_forced && derived_tau != post_tau;
  r.checks.push_back(exact_check("derived X_V value -prod g contradicts the eigenvalue prod h",
                                 r.contradiction,
                                 "derived w^" + std::to_string(derived_tau / 2) + " vs w^" +
                                     std::to_string(post_tau / 2)));
  r.trace.push_back("from the forced G_a values X_V = -prod g_a = -prod h_a, yet |psi_f> is an "
                    "X_V eigenstate with eigenvalue prod h_a");
  return r;
}

SuccessProbability postselection_success(const VerifyOptions& opts) {
  const auto pre = context_of({"X1 X2", "Z1 Z2"}, 2, 2);
  const auto post = context_of({"X1", "Z2"}, 2, 2);
  const int zeros[] = {0, 0};
  const StateVector psi_i = joint_eigenstate(pre, zeros, opts.max_dim);
  SuccessProbability out;
  out.single_outcome = postselection_probability(psi_i, joint_eigenstate(post, zeros, opts.max_dim));
  for (const auto& o : joint_outcomes(post, opts.max_dim)) {
    out.all_outcomes += postselection_probability(psi_i, o.matrix);
  }
  out.increase_percent = (out.all_outcomes / out.single_outcome - 1.0) * 100.0;
  return out;
}

ScenarioReport success_probability_report(const VerifyOptions& opts) {
  const SuccessProbability p = postselection_success(opts);
  ScenarioReport r;
  r.scenario = "success-probability";
  r.overlap = std::sqrt(p.single_outcome);
  r.values = {{"increase_percent", static_cast<int>(std::lround(p.increase_percent))}};
  r.checks.push_back(numeric_check("single outcome |+>|0> succeeds with 1/4",
                                   std::abs(p.single_outcome - 0.25), 1e-12));
  r.checks.push_back(numeric_check("accepting all four {X1,Z2} outcomes succeeds with 1",
                                   std::abs(p.all_outcomes - 1.0), 1e-12));
  r.checks.push_back(numeric_check("increase is 300%",
                                   std::abs(p.all_outcomes / p.single_outcome - 4.0), 1e-12));
  std::ostringstream line;
  line.precision(17);
  line << "P(single) = " << p.single_outcome << ", P(all) = " << p.all_outcomes
       << ", increase = " << p.increase_percent << "%";
  r.trace.push_back(line.str());
  return r;
}

std::vector<ScenarioReport> sweep_pigeonhole_state_independent(const VerifyOptions& opts) {
  std::vector<ScenarioReport> out;
  for (int mask = 0; mask < 64; ++mask) {
    Signs s, t;
    for (int a = 0; a < 3; ++a) {
      s[a] = (mask >> (5 - a)) & 1 ? -1 : 1;
      t[a] = (mask >> (2 - a)) & 1 ? -1 : 1;
    }
    out.push_back(pigeonhole_state_independent(s, t, opts));
  }
  return out;
}

std::vector<ScenarioReport> sweep_cheshire_cat(const VerifyOptions& opts) {
  std::vector<ScenarioReport> out;
  for (int mask = 0; mask < 16; ++mask) {
    out.push_back(cheshire_cat_state_independent((mask >> 3) & 1, (mask >> 2) & 1,
                                                 (mask >> 1) & 1, mask & 1, opts));
  }
  return out;
}

std::vector<ScenarioReport> sweep_ghz_pentagram(const VerifyOptions& opts) {
  std::vector<ScenarioReport> out;
  for (int mask = 0; mask < 64; ++mask) {
    Signs s, t;
    for (int a = 0; a < 3; ++a) {
      s[a] = (mask >> (5 - a)) & 1 ? -1 : 1;
      t[a] = (mask >> (2 - a)) & 1 ? -1 : 1;
    }
    out.push_back(ghz_pentagram(s, t, opts));
  }
  return out;
}

namespace {

// Calls f(g, h) for every pair of exponent tuples in Z_d^n x Z_d^n.
template <typename F>
void for_each_exponent_pair(int n, int d, F&& f) {
  std::vector<int> a(n, 0), b(n, 0);
  auto advance = [d](std::vector<int>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
      if (++v[i] < d) return true;
      v[i] = 0;
    }
    return false;
  };
  do {
    std::fill(b.begin(), b.end(), 0);
    do {
      f(a, b);
    } while (advance(b));
  } while (advance(a));
}

}  // namespace

std::vector<ScenarioReport> sweep_qudit_pigeonhole(const WeightedGraph& graph,
                                                   const VerifyOptions& opts) {
  std::vector<ScenarioReport> out;
  for_each_exponent_pair(graph.vertices(), graph.dim(), [&](const auto& g, const auto& h) {
    out.push_back(qudit_pigeonhole(graph, g, h, opts));
  });
  return out;
}

std::vector<ScenarioReport> sweep_qudit_product(const WeightedGraph& graph,
                                                const VerifyOptions& opts) {
  std::vector<ScenarioReport> out;
  for_each_exponent_pair(graph.vertices(), graph.dim(), [&](const auto& s, const auto& h) {
    out.push_back(qudit_product_prepost(graph, s, h, opts));
  });
  return out;
}

StateVector random_state_in(const Matrix& projector, std::mt19937_64& rng) {
  const auto basis = range_basis(projector);
  if (basis.empty()) throw ContractViolation("cannot sample from an empty subspace");
  std::normal_distribution<double> gauss;
  StateVector v = StateVector::Zero(projector.rows());
  for (const auto& b : basis) v += std::complex<double>(gauss(rng), gauss(rng)) * b;
  return v.normalized();
}

std::vector<ScenarioReport> sweep_magic_square_random(int count, std::uint64_t seed,
                                                      const VerifyOptions& opts) {
  std::mt19937_64 rng(seed);
  const int zeros[] = {0, 0, 0};
  const Matrix p_pre = outcome_projector(context_of({"X1 X2", "X2 X3", "X1 X3"}, 3, 2), zeros,
                                         opts.max_dim).matrix;
  const Matrix p_post = outcome_projector(context_of({"Y1 Y2", "Y2 Y3", "Y1 Y3"}, 3, 2), zeros,
                                          opts.max_dim).matrix;
  std::vector<ScenarioReport> out;
  for (int i = 0; i < count; ++i) {
    StateVector pre = random_state_in(p_pre, rng);
    StateVector post = random_state_in(p_post, rng);
    out.push_back(magic_square_pigeonhole(pre, post, opts));
  }
  return out;
}

}  // namespace contextlab
