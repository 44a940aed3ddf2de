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

#include "contextlab/formats.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "contextlab/errors.hpp"

namespace contextlab {
namespace {

int mod(long long v, long long m) { return static_cast<int>(((v % m) + m) % m); }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  if (!j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

template <typename T>
T as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  return j;
}

StateVector amplitudes_from_json(const Json& j, const std::string& where) {
  array_at(j, where);
  StateVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "/" + std::to_string(k);
    const Json& a = j[k];
    if (a.is_number()) {
      v[static_cast<Eigen::Index>(k)] = as<double>(a, at);
    } else if (a.is_array() && a.size() == 2) {
      v[static_cast<Eigen::Index>(k)] = {as<double>(a[0], at + "/0"), as<double>(a[1], at + "/1")};
    } else {
      throw ParseError(at + ": expected [re, im]");
    }
  }
  return v;
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": invalid JSON");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(path.string() + ": cannot write");
  out << text;
}

Json rayset_to_json(const RaySet& rs) {
  Json j{{"dimension", rs.dimension()}, {"rays", Json::array()}};
  for (const auto& r : rs.rays()) {
    Json amps = Json::array();
    for (Eigen::Index k = 0; k < r.vector.size(); ++k) amps.push_back(complex_json(r.vector[k]));
    j["rays"].push_back({{"label", r.label}, {"amplitudes", std::move(amps)}});
  }
  if (rs.bases_declared()) j["bases"] = rs.bases();
  return j;
}

RaySet rayset_from_json(const Json& j) {
  const Json& rays_json = array_at(field(j, "rays", "rays"), "rays");
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < rays_json.size(); ++k) {
    const std::string where = "rays/" + std::to_string(k);
    const Json& r = rays_json[k];
    if (r.is_array()) {
      rays.push_back({"r" + std::to_string(k), amplitudes_from_json(r, where)});
    } else {
      std::string label = r.contains("label") ? as<std::string>(r["label"], where + "/label")
                                              : "r" + std::to_string(k);
      rays.push_back({std::move(label), amplitudes_from_json(field(r, "amplitudes", where), where + "/amplitudes")});
    }
  }
  if (j.contains("dimension")) {
    const int dim = as<int>(j["dimension"], "dimension");
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (rays[k].vector.size() != dim) {
        throw ParseError("rays/" + std::to_string(k) + ": expected " + std::to_string(dim) + " amplitudes");
      }
    }
  }
  std::optional<std::vector<Basis>> bases;
  if (j.contains("bases")) bases = as<std::vector<Basis>>(array_at(j["bases"], "bases"), "bases");
  return build_rayset(rays, bases);
}

Json config_to_json(const MagicConfiguration& cfg) {
  Json j{{"name", cfg.name()}, {"n", cfg.sites()}, {"d", cfg.dim()},
         {"reconstructed", cfg.reconstructed()}, {"nodes", Json::array()}, {"lines", Json::array()}};
  for (const auto& n : cfg.nodes()) j["nodes"].push_back({{"label", n.label}, {"operator", format_weyl(n.op)}});
  for (const auto& line : cfg.lines()) {
    Json nodes = Json::array(), dagger = Json::array();
    for (const auto& o : line.members) {
      nodes.push_back(cfg.nodes()[static_cast<std::size_t>(o.node)].label);
      dagger.push_back(o.dagger);
    }
    j["lines"].push_back({{"label", line.label}, {"nodes", std::move(nodes)}, {"dagger", std::move(dagger)},
                          {"claimed_phase", line.claimed_phase}});
  }
  return j;
}

MagicConfiguration config_from_json(const Json& j) {
  const int n = as<int>(field(j, "n", "config"), "n");
  const int d = as<int>(field(j, "d", "config"), "d");
  const std::string name = j.contains("name") ? as<std::string>(j["name"], "name") : "config";
  const bool reconstructed = j.contains("reconstructed") && as<bool>(j["reconstructed"], "reconstructed");
  std::vector<MagicNode> nodes;
  const Json& nodes_json = array_at(field(j, "nodes", "config"), "nodes");
  for (std::size_t k = 0; k < nodes_json.size(); ++k) {
    const std::string where = "nodes/" + std::to_string(k);
    const Json& node = nodes_json[k];
    std::string label, text;
    if (node.is_string()) {
      text = label = node.get<std::string>();
    } else {
      text = as<std::string>(field(node, "operator", where), where + "/operator");
      label = node.contains("label") ? as<std::string>(node["label"], where + "/label") : text;
    }
    try {
      nodes.push_back({label, parse_weyl(text, n, d)});
    } catch (const ParseError& e) {
      throw ParseError(where + "/operator: " + e.what());
    }
  }
  std::vector<MagicLine> lines;
  const Json& lines_json = array_at(field(j, "lines", "config"), "lines");
  for (std::size_t k = 0; k < lines_json.size(); ++k) {
    const std::string where = "lines/" + std::to_string(k);
    const Json& line = lines_json[k];
    MagicLine out;
    out.label = line.contains("label") ? as<std::string>(line["label"], where + "/label") : std::to_string(k + 1);
    const Json& members = array_at(field(line, "nodes", where), where + "/nodes");
    std::vector<bool> dagger(members.size(), false);
    if (line.contains("dagger")) {
      dagger = as<std::vector<bool>>(line["dagger"], where + "/dagger");
      if (dagger.size() != members.size()) throw ParseError(where + "/dagger: one flag per node expected");
    }
    for (std::size_t m = 0; m < members.size(); ++m) {
      const std::string at = where + "/nodes/" + std::to_string(m);
      int index = -1;
      if (members[m].is_string()) {
        const auto label = members[m].get<std::string>();
        const auto it = std::find_if(nodes.begin(), nodes.end(), [&](const MagicNode& nd) { return nd.label == label; });
        if (it == nodes.end()) throw ParseError(at + ": unknown node \"" + label + "\"");
        index = static_cast<int>(it - nodes.begin());
      } else {
        index = as<int>(members[m], at);
      }
      out.members.push_back({index, dagger[m]});
    }
    out.claimed_phase = line.contains("claimed_phase") ? as<int>(line["claimed_phase"], where + "/claimed_phase") : 0;
    lines.push_back(std::move(out));
  }
  return MagicConfiguration(name, std::move(nodes), std::move(lines), reconstructed);
}

Json graph_to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.a + 1, e.b + 1, e.weight});
  return Json{{"n", g.vertices()}, {"d", g.dim()}, {"edges", std::move(edges)}};
}

WeightedGraph graph_from_json(const Json& j) {
  const int n = as<int>(field(j, "n", "graph"), "n");
  const int d = as<int>(field(j, "d", "graph"), "d");
  if (n < 1 || d < 2) throw ParseError("graph: need n >= 1 and d >= 2");
  std::vector<Edge> edges;
  const Json& edges_json = array_at(field(j, "edges", "graph"), "edges");
  for (std::size_t k = 0; k < edges_json.size(); ++k) {
    const std::string where = "edges/" + std::to_string(k);
    const auto e = as<std::vector<int>>(edges_json[k], where);
    if (e.size() != 3) throw ParseError(where + ": expected [a, b, weight]");
    if (e[0] < 1 || e[0] > n || e[1] < 1 || e[1] > n || e[0] == e[1]) {
      throw ParseError(where + ": vertices must be distinct and in 1.." + std::to_string(n));
    }
    edges.push_back({e[0] - 1, e[1] - 1, e[2]});
  }
  return WeightedGraph::from_edges(n, d, edges);
}

ReportDocument scenario_document(const ScenarioReport& r) {
  ReportDocument doc;
  doc.kind = "scenario";
  doc.identifier = r.scenario;
  for (const auto& [k, v] : r.parameters) doc.inputs[k] = v;
  doc.checks = r.checks;
  doc.trace = r.trace;
  Json& d = doc.details;
  d["feasible"] = r.feasible;
  d["overlap"] = r.overlap;
  d["contradiction"] = r.contradiction;
  d["values"] = Json::object();
  for (const auto& [k, v] : r.values) d["values"][k] = v;
  d["contexts"] = Json::array();
  for (const auto& cv : r.contexts) {
    Json c{{"name", cv.name}, {"outcomes", Json::array()}};
    for (const auto& o : cv.outcomes) {
      Json oj{{"outcome", o.label}, {"amplitude", complex_json(o.amplitude)}, {"status", to_string(o.status)}};
      if (o.probability) oj["probability"] = *o.probability;
      c["outcomes"].push_back(std::move(oj));
    }
    d["contexts"].push_back(std::move(c));
  }
  if (r.classical) {
    d["classical"] = {{"hole_context", r.classical->hole_context},
                      {"configurations", r.classical->configurations},
                      {"consistent", r.classical->consistent}};
  }
  return doc;
}

ReportDocument sweep_document(const std::string& name, const std::vector<ScenarioReport>& reports) {
  ReportDocument doc;
  doc.kind = "sweep";
  doc.identifier = name;
  doc.inputs["cases"] = reports.size();
  int feasible = 0, contradictions = 0, passed = 0;
  Json cases = Json::array();
  for (const auto& r : reports) {
    std::string params;
    for (const auto& [k, v] : r.parameters) params += (params.empty() ? "" : " ") + k + "=" + v;
    feasible += r.feasible;
    contradictions += r.contradiction;
    passed += r.passed();
    Json values = Json::object();
    for (const auto& [k, v] : r.values) values[k] = v;
    cases.push_back({{"parameters", params}, {"feasible", r.feasible}, {"contradiction", r.contradiction},
                     {"passed", r.passed()}, {"values", std::move(values)}});
    for (const auto& c : r.checks) {
      Check prefixed = c;
      prefixed.name = "[" + params + "] " + c.name;
      doc.checks.push_back(std::move(prefixed));
    }
  }
  doc.details = {{"feasible", feasible}, {"contradictions", contradictions}, {"passed", passed},
                 {"cases", std::move(cases)}};
  doc.trace.push_back(std::to_string(reports.size()) + " cases, " + std::to_string(feasible) + " feasible, " +
                      std::to_string(contradictions) + " with a contradiction verdict");
  return doc;
}

ReportDocument ks_document(const std::string& identifier, const RaySet& rs, const Preassignment& pre,
                           const KSResult& result, std::optional<bool> expect_sat) {
  ReportDocument doc;
  doc.kind = "ks-search";
  doc.identifier = identifier;
  doc.inputs["rays"] = rs.size();
  doc.inputs["dimension"] = rs.dimension();
  doc.inputs["bases"] = rs.bases().size();
  doc.inputs["bases_declared"] = rs.bases_declared();
  doc.inputs["preassign"] = Json::object();
  for (const auto& [r, v] : pre) doc.inputs["preassign"][rs.ray(r).label] = v;
  if (result.satisfiable) {
    const auto violations = validate_assignment(rs, result.assignment);
    std::string detail;
    for (const auto& v : violations) detail += (detail.empty() ? "" : "; ") + v;
    doc.checks.push_back(exact_check("assignment satisfies the KS rules", violations.empty(), detail));
    bool honours = true;
    for (const auto& [r, v] : pre) honours = honours && result.assignment[static_cast<std::size_t>(r)] == v;
    doc.checks.push_back(exact_check("assignment honours the preassignment", honours));
  }
  if (expect_sat) {
    doc.checks.push_back(exact_check(std::string("search is ") + (*expect_sat ? "satisfiable" : "unsatisfiable"),
                                     result.satisfiable == *expect_sat));
  }
  doc.details["result"] = result.satisfiable ? "sat" : "unsat";
  doc.details["stats"] = {{"nodes", result.stats.nodes},
                          {"propagations", result.stats.propagations},
                          {"conflicts", result.stats.conflicts},
                          {"max_depth", result.stats.max_depth}};
  if (result.satisfiable) {
    Json ones = Json::array();
    for (int r = 0; r < rs.size(); ++r) {
      if (result.assignment[static_cast<std::size_t>(r)] == 1) ones.push_back(rs.ray(r).label);
    }
    doc.details["rays_at_1"] = std::move(ones);
  }
  doc.trace.push_back(std::string(result.satisfiable ? "found a KS value assignment" : "no KS value assignment exists") +
                      " after " + std::to_string(result.stats.nodes) + " nodes");
  return doc;
}

ReportDocument config_document(const MagicConfiguration& cfg, const ConfigurationReport& r) {
  ReportDocument doc;
  doc.kind = "configuration";
  doc.identifier = cfg.name();
  doc.inputs = {{"n", cfg.sites()}, {"d", cfg.dim()}, {"nodes", cfg.nodes().size()},
                {"lines", cfg.lines().size()}, {"reconstructed", cfg.reconstructed()}};
  doc.checks = r.checks;
  Json lines = Json::array();
  for (std::size_t k = 0; k < r.products.lines.size(); ++k) {
    const auto& l = r.products.lines[k];
    std::string members;
    for (const auto& o : cfg.lines()[k].members) {
      members += (members.empty() ? "" : " * ") + cfg.nodes()[static_cast<std::size_t>(o.node)].label +
                 (o.dagger ? "^dag" : "");
    }
    lines.push_back({{"label", l.label}, {"members", members}, {"computed_phase", l.computed_phase},
                     {"claimed_phase", l.claimed_phase}, {"matrix_residual", l.matrix_residual}});
    doc.trace.push_back(l.label + ": " + members + " = " +
                        format_weyl(WeylOperator(cfg.dim(), std::vector<int>(static_cast<std::size_t>(cfg.sites()), 0),
                                                 std::vector<int>(static_cast<std::size_t>(cfg.sites()), 0),
                                                 l.computed_phase)));
  }
  doc.details = {{"lines", std::move(lines)},
                 {"structure", to_string(r.parity.structure)},
                 {"grand_phase", r.parity.grand_phase},
                 {"contradiction", r.parity.contradiction},
                 {"verdict", r.parity.verdict}};
  doc.trace.push_back(r.parity.verdict);
  return doc;
}

ReportDocument ghz_document(const std::string& identifier, const WeightedGraph& g, const VerifyOptions& opts) {
  ReportDocument doc;
  doc.kind = "ghz-check";
  doc.identifier = identifier;
  doc.inputs = graph_to_json(g);
  const int n = g.vertices(), d = g.dim();
  const GhzVerdict v = is_ghz_graph(g);
  const auto gens = stabilizer_generators(g);
  bool commuting = true;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) commuting = commuting && commutes(gens[static_cast<std::size_t>(a)], gens[static_cast<std::size_t>(b)]);
  }
  doc.checks.push_back(exact_check("stabilizer generators commute", commuting));

  // prod G_a = w^{-W} X_V prod Z_a^{d_a}
  const WeylOperator product = weyl_product(gens, n, d);
  std::vector<int> ones(static_cast<std::size_t>(n), 1);
  const WeylOperator expected(d, ones, v.vertex_weights, mod(-2LL * v.total_weight, 2LL * d));
  doc.checks.push_back(exact_check("prod G_a = w^-W X_V prod Z_a^d_a", product == expected,
                                   format_weyl(product)));
  if (v.is_ghz) {
    doc.checks.push_back(exact_check("prod G_a = -X_V", product == global_shift(g).negated()));
    doc.checks.push_back(exact_check("d is even and w^W = -1", d % 2 == 0 && v.omega_w_is_minus_one));
  }
  std::size_t hdim = 0;
  try {
    hdim = hilbert_dim(n, d, opts.max_dim);
  } catch (const SizeError&) {
    doc.trace.push_back("d^n exceeds --max-dim; graph state skipped");
  }
  if (hdim > 0) {
    const StateVector state = graph_state(g, opts.max_dim);
    for (int a = 0; a < n; ++a) {
      const Matrix ga = to_matrix(gens[static_cast<std::size_t>(a)], opts.max_dim);
      doc.checks.push_back(numeric_check("G" + std::to_string(a + 1) + "|G> = |G>", (ga * state - state).norm(),
                                         opts.tolerance));
    }
  }
  Json generators = Json::array();
  for (const auto& op : gens) generators.push_back(format_weyl(op));
  doc.details = {{"is_ghz", v.is_ghz},
                 {"vertex_weights", v.vertex_weights},
                 {"total_weight", v.total_weight},
                 {"omega_w_is_minus_one", v.omega_w_is_minus_one},
                 {"generators", std::move(generators)},
                 {"product", format_weyl(product)}};
  std::string sums;
  for (int w : v.vertex_weights) sums += (sums.empty() ? "" : ",") + std::to_string(w);
  doc.trace.push_back("d_a = (" + sums + "), W = " + std::to_string(v.total_weight) + " mod " + std::to_string(d) +
                      (v.is_ghz ? ": GHZ graph" : ": not a GHZ graph"));
  return doc;
}

}  // namespace contextlab
