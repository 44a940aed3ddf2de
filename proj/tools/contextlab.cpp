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

// Command-line front end: runs scenarios, sweeps and checkers and prints a
// JSON or Markdown report. Exit status: 0 when every check passes, 1 when a
// check fails, 2 on usage or input errors.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contextlab/errors.hpp"
#include "contextlab/formats.hpp"
#include "contextlab/ghz.hpp"
#include "contextlab/ks.hpp"
#include "contextlab/magic.hpp"
#include "contextlab/scenarios.hpp"

namespace cl = contextlab;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  std::string format = "json";
  double tolerance = 1e-10;
  std::size_t max_dim = cl::kDefaultMaxDim;
  std::string expect;

  cl::VerifyOptions options() const { return {tolerance, max_dim}; }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "Write the report to this file instead of stdout");
  app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "md"}));
  app->add_option("--tolerance", c.tolerance, "Vanishing tolerance")->check(CLI::PositiveNumber);
  app->add_option("--max-dim", c.max_dim, "Largest Hilbert-space dimension to realize");
  app->add_option("--expect", c.expect, "Expected outcome")
      ->check(CLI::IsMember({"sat", "unsat", "feasible", "infeasible"}));
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("CONTEXTLAB_SEED");
  if (!env || !*env) return 20260101;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw UsageError("CONTEXTLAB_SEED must be an unsigned integer");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

cl::Signs parse_signs(const std::string& text, const char* what) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError(std::string(what) + ": expected three signs like +,-,+");
  cl::Signs s{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (parts[k] == "+" || parts[k] == "+1" || parts[k] == "1") {
      s[k] = 1;
    } else if (parts[k] == "-" || parts[k] == "-1") {
      s[k] = -1;
    } else {
      throw UsageError(std::string(what) + ": bad sign \"" + parts[k] + "\"");
    }
  }
  return s;
}

std::vector<int> parse_ints(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": bad integer \"" + part + "\"");
    }
  }
  return out;
}

int emit(const cl::ReportDocument& doc, const Common& c) {
  const std::string text = c.format == "md" ? cl::render_markdown(doc) : cl::report_to_json(doc).dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    cl::write_text_file(c.out, text);
  }
  return doc.verdict() ? 0 : 1;
}

void add_feasibility_expectation(cl::ReportDocument& doc, const Common& c, bool feasible) {
  if (c.expect.empty()) return;
  if (c.expect != "feasible" && c.expect != "infeasible") {
    throw UsageError("--expect for scenarios takes feasible or infeasible");
  }
  const bool want = c.expect == "feasible";
  doc.checks.push_back(cl::exact_check(std::string("pre/post pair is ") + c.expect, feasible == want));
}

cl::WeightedGraph graph_option(const std::string& path, int d) {
  if (!path.empty()) return cl::graph_from_json(cl::read_json_file(path));
  return cl::triangle_ghz(d);
}

const std::map<std::string, cl::RaySet (*)()>& builtin_raysets() {
  static const std::map<std::string, cl::RaySet (*)()> sets = {{"builtin34", cl::builtin_34_rays},
                                                               {"builtin48", cl::builtin_48_rays}};
  return sets;
}

std::optional<cl::MagicConfiguration> builtin_config(const std::string& name) {
  for (auto& cfg : cl::builtin_configurations()) {
    if (cfg.name() == name) return cfg;
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify contextuality scenarios, parity proofs and Kochen-Specker ray sets", "contextlab"};
  app.require_subcommand(1);
  Common common;

  std::string scenario, s_text, t_text, g_text, h_text, graph_path;
  int alpha = 0, beta = 0, mu = 0, nu = 0, dim = 2;
  auto* demo = app.add_subcommand("demo", "Run one pre/post-selection scenario");
  demo->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  demo->add_option("scenario", scenario, "Scenario name")->required();
  demo->add_option("--s", s_text, "Pre-selection signs (pigeonhole-si, ghz-pentagram) or Z exponents (qudit-product)");
  demo->add_option("--t", t_text, "Post-selection signs");
  demo->add_option("--alpha", alpha)->check(CLI::Range(0, 1));
  demo->add_option("--beta", beta)->check(CLI::Range(0, 1));
  demo->add_option("--mu", mu)->check(CLI::Range(0, 1));
  demo->add_option("--nu", nu)->check(CLI::Range(0, 1));
  demo->add_option("--g", g_text, "G_a eigenvalue exponents, e.g. 0,0,1");
  demo->add_option("--h", h_text, "X_a eigenvalue exponents");
  demo->add_option("--graph", graph_path, "GHZ graph file (default: triangle)");
  demo->add_option("--d", dim, "Qudit dimension of the default triangle");
  add_common(demo, common);

  std::string sweep_name;
  int count = 100;
  auto* sweep = app.add_subcommand("sweep", "Run an exhaustive parameter sweep");
  sweep->add_option("name", sweep_name, "pigeonhole-si, cheshire-si, ghz-pentagram, qudit-pigeonhole, "
                                        "qudit-product or magic-square-random")->required();
  sweep->add_option("--graph", graph_path, "GHZ graph file (default: triangle)");
  sweep->add_option("--d", dim, "Qudit dimension of the default triangle");
  sweep->add_option("--count", count, "Random samples for magic-square-random")->check(CLI::PositiveNumber);
  add_common(sweep, common);

  std::string config_source;
  auto* verify = app.add_subcommand("verify-config", "Check a magic configuration file or builtin name");
  verify->add_option("config", config_source)->required();
  add_common(verify, common);

  std::string rays_source, preassign_text;
  int orderings = 0;
  auto* ks = app.add_subcommand("ks-search", "Search a ray set for a KS value assignment");
  ks->add_option("rays", rays_source, "Ray-set file, builtin34 or builtin48")->required();
  ks->add_option("--preassign", preassign_text, "label=value list, e.g. psi_i=1,psi_f=1");
  ks->add_option("--orderings", orderings, "Repeat under this many random ray orderings")->check(CLI::NonNegativeNumber);
  add_common(ks, common);

  std::string ghz_source;
  auto* ghz = app.add_subcommand("ghz-check", "Test the GHZ-graph conditions and stabilizer identities");
  ghz->add_option("graph", ghz_source)->required();
  add_common(ghz, common);

  std::string export_dir;
  auto* exporter = app.add_subcommand("export-builtins", "Write every builtin ray set, configuration and graph");
  exporter->add_option("dir", export_dir)->required();

  std::string report_path;
  auto* report = app.add_subcommand("report", "Re-render a saved JSON report");
  report->add_option("file", report_path)->required()->check(CLI::ExistingFile);
  add_common(report, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const cl::VerifyOptions opts = common.options();
    if (*demo) {
      cl::ScenarioReport r;
      if (scenario == "pigeonhole-original") {
        r = cl::pigeonhole_original(opts);
      } else if (scenario == "pigeonhole-si") {
        r = cl::pigeonhole_state_independent(parse_signs(s_text.empty() ? "+,+,+" : s_text, "--s"),
                                             parse_signs(t_text.empty() ? "+,+,+" : t_text, "--t"), opts);
      } else if (scenario == "magic-square-pigeonhole") {
        r = cl::magic_square_pigeonhole(std::nullopt, std::nullopt, opts);
      } else if (scenario == "cheshire-cat") {
        r = cl::cheshire_cat(opts);
      } else if (scenario == "cheshire-si") {
        r = cl::cheshire_cat_state_independent(alpha, beta, mu, nu, opts);
      } else if (scenario == "ghz-pentagram") {
        r = cl::ghz_pentagram(parse_signs(s_text.empty() ? "+,+,+" : s_text, "--s"),
                              parse_signs(t_text.empty() ? "+,+,-" : t_text, "--t"), opts);
      } else if (scenario == "qudit-pigeonhole" || scenario == "qudit-product") {
        const auto graph = graph_option(graph_path, dim);
        const std::vector<int> zeros(static_cast<std::size_t>(graph.vertices()), 0);
        std::vector<int> h = h_text.empty() ? zeros : parse_ints(h_text, "--h");
        if (scenario == "qudit-pigeonhole") {
          const auto g = g_text.empty() ? zeros : parse_ints(g_text, "--g");
          if (h_text.empty() && !g.empty()) {
            // h = g with a half turn on the first site satisfies prod h = -prod g.
            h = g;
            h[0] = (g[0] + graph.dim() / 2) % graph.dim();
          }
          r = cl::qudit_pigeonhole(graph, g, h, opts);
        } else {
          const auto s = s_text.empty() ? zeros : parse_ints(s_text, "--s");
          r = cl::qudit_product_prepost(graph, s, h, opts);
        }
      } else if (scenario == "success-probability") {
        r = cl::success_probability_report(opts);
      } else {
        throw UsageError("unknown scenario \"" + scenario + "\"");
      }
      auto doc = cl::scenario_document(r);
      add_feasibility_expectation(doc, common, r.feasible);
      return emit(doc, common);
    }

    if (*sweep) {
      std::vector<cl::ScenarioReport> reports;
      if (sweep_name == "pigeonhole-si") {
        reports = cl::sweep_pigeonhole_state_independent(opts);
      } else if (sweep_name == "cheshire-si") {
        reports = cl::sweep_cheshire_cat(opts);
      } else if (sweep_name == "ghz-pentagram") {
        reports = cl::sweep_ghz_pentagram(opts);
      } else if (sweep_name == "qudit-pigeonhole") {
        reports = cl::sweep_qudit_pigeonhole(graph_option(graph_path, dim), opts);
      } else if (sweep_name == "qudit-product") {
        reports = cl::sweep_qudit_product(graph_option(graph_path, dim), opts);
      } else if (sweep_name == "magic-square-random") {
        reports = cl::sweep_magic_square_random(count, seed_from_env(), opts);
      } else {
        throw UsageError("unknown sweep \"" + sweep_name + "\"");
      }
      return emit(cl::sweep_document(sweep_name, reports), common);
    }

    if (*verify) {
      std::optional<cl::MagicConfiguration> cfg;
      if (std::filesystem::exists(config_source)) {
        cfg = cl::config_from_json(cl::read_json_file(config_source));
      } else {
        cfg = builtin_config(config_source);
        if (!cfg) throw UsageError("no file or builtin configuration named \"" + config_source + "\"");
      }
      const auto r = cl::check_configuration(*cfg, opts);
      return emit(cl::config_document(*cfg, r), common);
    }

    if (*ks) {
      const auto builtin = builtin_raysets().find(rays_source);
      const cl::RaySet rs = builtin != builtin_raysets().end()
                                ? builtin->second()
                                : cl::rayset_from_json(cl::read_json_file(rays_source));
      std::map<std::string, int> by_label;
      if (!preassign_text.empty()) {
        for (const auto& item : split(preassign_text, ',')) {
          const auto eq = item.find('=');
          if (eq == std::string::npos) throw UsageError("--preassign: expected label=value, got \"" + item + "\"");
          const auto value = parse_ints(item.substr(eq + 1), "--preassign");
          by_label[item.substr(0, eq)] = value.front();
        }
      }
      auto resolve = [&](const cl::RaySet& set) {
        cl::Preassignment pre;
        for (const auto& [label, v] : by_label) {
          const auto idx = set.index_of(label);
          if (!idx) throw UsageError("--preassign: no ray labelled \"" + label + "\"");
          pre[*idx] = v;
        }
        return pre;
      };
      std::optional<bool> expect_sat;
      if (!common.expect.empty()) {
        if (common.expect != "sat" && common.expect != "unsat") throw UsageError("--expect for ks-search takes sat or unsat");
        expect_sat = common.expect == "sat";
      }
      const auto pre = resolve(rs);
      const auto start = std::chrono::steady_clock::now();
      const auto result = cl::ks_search(rs, pre);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      auto doc = cl::ks_document(rays_source, rs, pre, result, expect_sat);
      doc.details["seconds"] = seconds;
      if (orderings > 0) {
        std::mt19937_64 rng(seed_from_env());
        int agree = 0;
        for (int k = 0; k < orderings; ++k) {
          std::vector<int> order(static_cast<std::size_t>(rs.size()));
          for (int i = 0; i < rs.size(); ++i) order[static_cast<std::size_t>(i)] = i;
          std::shuffle(order.begin(), order.end(), rng);
          const auto permuted = cl::permute_rays(rs, order);
          agree += cl::ks_search(permuted, resolve(permuted)).satisfiable == result.satisfiable;
        }
        doc.checks.push_back(cl::exact_check("verdict stable under random ray orderings", agree == orderings,
                                             std::to_string(agree) + " of " + std::to_string(orderings)));
      }
      return emit(doc, common);
    }

    if (*ghz) {
      const auto graph = cl::graph_from_json(cl::read_json_file(ghz_source));
      return emit(cl::ghz_document(ghz_source, graph, opts), common);
    }

    if (*exporter) {
      namespace fs = std::filesystem;
      fs::create_directories(export_dir);
      const fs::path dir(export_dir);
      auto dump = [&](const std::string& file, const cl::Json& j) {
        cl::write_text_file(dir / file, j.dump(2) + "\n");
        std::cout << (dir / file).string() << "\n";
      };
      dump("rays34.json", cl::rayset_to_json(cl::builtin_34_rays()));
      dump("rays48.json", cl::rayset_to_json(cl::builtin_48_rays()));
      for (const auto& cfg : cl::builtin_configurations()) dump(cfg.name() + ".json", cl::config_to_json(cfg));
      for (int d : {2, 4, 6}) dump("triangle_d" + std::to_string(d) + ".json", cl::graph_to_json(cl::triangle_ghz(d)));
      dump("k4_d4.json", cl::graph_to_json(cl::k4_ghz(4, 1, 1, 0)));
      const cl::Edge cycle[] = {{0, 1, 1}, {1, 2, 3}, {2, 3, 1}, {3, 0, 3}};
      dump("cycle4_d4.json", cl::graph_to_json(cl::WeightedGraph::from_edges(4, 4, cycle)));
      return 0;
    }

    if (*report) {
      const auto doc = cl::report_from_json(cl::read_json_file(report_path));
      return emit(doc, common);
    }
  } catch (const UsageError& e) {
    std::cerr << "contextlab: " << e.what() << "\n";
    return 2;
  } catch (const cl::Error& e) {
    std::cerr << "contextlab: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
