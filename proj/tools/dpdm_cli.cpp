// Copyright 2026 The dpdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpdm/experiments.hpp"
#include "dpdm/verification.hpp"

namespace {

using namespace dpdm;

// 12 significant digits everywhere so text, json and csv renderings carry
// identical numeric values.
std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::map<int, double> parse_values_stream(std::istream& in,
                                          const std::string& tag) {
  std::map<int, double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    int id;
    double value;
    if (!(ls >> id >> value) || id < 0) {
      throw std::runtime_error(tag + ": malformed value at line " +
                               std::to_string(line_no));
    }
    std::string rest;
    if (ls >> rest) {
      throw std::runtime_error(tag + ": trailing tokens at line " +
                               std::to_string(line_no));
    }
    if (!values.emplace(id, value).second) {
      throw std::runtime_error(tag + ": duplicate id at line " +
                               std::to_string(line_no));
    }
  }
  return values;
}

std::map<int, double> load_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_values_stream(in, path);
}

struct InstanceFlags {
  std::string graph_path;
  std::string values_path;
  int seller = 0;
  bool directed = false;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& flags,
                        bool values_required) {
  cmd->add_option("--graph", flags.graph_path, "edge list file")->required();
  auto* values =
      cmd->add_option("--values", flags.values_path,
                      "valuation file, one 'id valuation' per line");
  if (values_required) values->required();
  cmd->add_option("--seller", flags.seller, "seller vertex id");
  cmd->add_flag("--directed", flags.directed, "treat the edge list as directed");
}

GlobalProfile load_instance(const InstanceFlags& flags) {
  EdgeList graph = load_edge_list(flags.graph_path, flags.directed);
  std::map<int, double> values;
  if (!flags.values_path.empty()) values = load_values(flags.values_path);
  std::vector<double> ordered(graph.nodes.size(), 0.0);
  for (std::size_t k = 0; k < graph.nodes.size(); ++k) {
    int node = graph.nodes[k];
    auto it = values.find(node);
    if (it != values.end()) {
      ordered[k] = it->second;
    } else if (!flags.values_path.empty() && node != flags.seller) {
      throw std::runtime_error(flags.values_path + ": no valuation for vertex " +
                               std::to_string(node));
    }
  }
  return make_global_profile(graph, flags.seller, ordered);
}

enum class Format { kText, kJson, kCsv };

Format parse_format(const std::string& name) {
  if (name == "text") return Format::kText;
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  throw CLI::ValidationError("--format", "must be text, json or csv");
}

// --- tree ---------------------------------------------------------------

void print_tree(const CriticalTree& tree, Format format) {
  if (format == Format::kJson) {
    std::cout << "{\"nodes\":[";
    bool first = true;
    for (BuyerId i : tree.reachable) {
      if (!first) std::cout << ',';
      first = false;
      std::cout << "{\"id\":" << i << ",\"parent\":" << tree.parent.at(i)
                << ",\"depth\":" << tree.depth.at(i) << '}';
    }
    std::cout << "],\"d_max\":" << tree.d_max << "}\n";
    return;
  }
  if (format == Format::kCsv) std::cout << "id,parent,depth\n";
  else std::cout << "id parent depth\n";
  char sep = format == Format::kCsv ? ',' : ' ';
  for (BuyerId i : tree.reachable) {
    std::cout << i << sep << tree.parent.at(i) << sep << tree.depth.at(i)
              << '\n';
  }
  if (format == Format::kText) std::cout << "d_max " << tree.d_max << '\n';
}

// --- dist ---------------------------------------------------------------

void print_dist(const WinDistribution& dist, Format format) {
  if (format == Format::kJson) {
    std::cout << "{\"mechanism\":\"" << to_string(dist.tag) << "\",\"prob\":{";
    bool first = true;
    for (const auto& [i, p] : dist.prob) {
      if (!first) std::cout << ',';
      first = false;
      std::cout << '"' << i << "\":" << fmt12(p);
    }
    std::cout << "},\"no_sale\":" << fmt12(dist.no_sale) << "}\n";
    return;
  }
  if (format == Format::kCsv) {
    std::cout << "id,probability\n";
    for (const auto& [i, p] : dist.prob) std::cout << i << ',' << fmt12(p) << '\n';
    std::cout << "no_sale," << fmt12(dist.no_sale) << '\n';
    return;
  }
  std::cout << "mechanism " << to_string(dist.tag) << '\n';
  for (const auto& [i, p] : dist.prob) std::cout << i << ' ' << fmt12(p) << '\n';
  std::cout << "no_sale " << fmt12(dist.no_sale) << '\n';
}

// --- auction ------------------------------------------------------------

void print_outcome(Mechanism mech, const AuctionOutcome& outcome,
                   Format format) {
  std::string winner =
      outcome.winner ? std::to_string(*outcome.winner) : "none";
  if (format == Format::kJson) {
    std::cout << "{\"mechanism\":\"" << to_string(mech) << "\",\"winner\":";
    std::cout << (outcome.winner ? winner : std::string("null"));
    std::cout << ",\"payment\":" << fmt12(outcome.payment)
              << ",\"seller_revenue\":" << fmt12(outcome.seller_revenue)
              << ",\"social_welfare\":" << fmt12(outcome.social_welfare)
              << ",\"utilities\":{";
    bool first = true;
    for (const auto& [i, u] : outcome.utilities) {
      if (!first) std::cout << ',';
      first = false;
      std::cout << '"' << i << "\":" << fmt12(u);
    }
    std::cout << "}}\n";
    return;
  }
  char sep = format == Format::kCsv ? ',' : ' ';
  if (format == Format::kCsv) std::cout << "field,value\n";
  std::cout << "mechanism" << sep << to_string(mech) << '\n';
  std::cout << "winner" << sep << winner << '\n';
  std::cout << "payment" << sep << fmt12(outcome.payment) << '\n';
  std::cout << "seller_revenue" << sep << fmt12(outcome.seller_revenue) << '\n';
  std::cout << "social_welfare" << sep << fmt12(outcome.social_welfare) << '\n';
  for (const auto& [i, u] : outcome.utilities) {
    std::cout << "utility_" << i << sep << fmt12(u) << '\n';
  }
}

// --- verify -------------------------------------------------------------

bool print_reports(const std::vector<PropertyReport>& reports, Format format) {
  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;
  if (format == Format::kJson) {
    std::cout << "{\"reports\":[";
    bool first = true;
    for (const auto& r : reports) {
      if (!first) std::cout << ',';
      first = false;
      std::cout << "{\"property\":\"" << r.property << "\",\"pass\":"
                << (r.pass ? "true" : "false") << ",\"instances\":"
                << r.instances << ",\"max_violation\":" << fmt12(r.max_violation)
                << "}";
    }
    std::cout << "],\"pass\":" << (all_pass ? "true" : "false") << "}\n";
    return all_pass;
  }
  if (format == Format::kCsv) {
    std::cout << "property,pass,instances,max_violation\n";
    for (const auto& r : reports) {
      std::cout << r.property << ',' << (r.pass ? "pass" : "fail") << ','
                << r.instances << ',' << fmt12(r.max_violation) << '\n';
    }
    return all_pass;
  }
  for (const auto& r : reports) std::cout << r.summary() << '\n';
  return all_pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private diffusion auctions"};
  app.require_subcommand(1);

  std::string format_name = "text";
  app.add_option("--format", format_name, "output format: text, json or csv")
      ->capture_default_str();

  InstanceFlags tree_flags;
  auto* tree_cmd =
      app.add_subcommand("tree", "print the critical diffusion tree");
  add_instance_flags(tree_cmd, tree_flags, /*values_required=*/false);

  InstanceFlags dist_flags;
  std::string dist_mech = "rec";
  double dist_eps = 0.1, dist_a = 2.0, dist_vmax = 0.0;
  auto* dist_cmd =
      app.add_subcommand("dist", "print the winning-probability distribution");
  add_instance_flags(dist_cmd, dist_flags, /*values_required=*/true);
  dist_cmd->add_option("--mech", dist_mech, "rec, lay, emd or emwd")->required();
  dist_cmd->add_option("--eps", dist_eps, "privacy parameter")->required();
  dist_cmd->add_option("--a", dist_a, "geometric layer parameter (lay)");
  dist_cmd->add_option("--vmax", dist_vmax,
                       "valuation bound (default: max observed)");

  InstanceFlags auction_flags;
  std::string auction_mech = "rec";
  double auction_eps = 0.1, auction_a = 2.0, auction_vmax = 0.0;
  std::uint64_t auction_seed = 1;
  auto* auction_cmd = app.add_subcommand("auction", "run one seeded auction");
  add_instance_flags(auction_cmd, auction_flags, /*values_required=*/true);
  auction_cmd->add_option("--mech", auction_mech,
                          "rec, lay, emd, emwd or idm")->required();
  auction_cmd->add_option("--eps", auction_eps, "privacy parameter");
  auction_cmd->add_option("--a", auction_a, "geometric layer parameter (lay)");
  auction_cmd->add_option("--seed", auction_seed, "draw seed");
  auction_cmd->add_option("--vmax", auction_vmax,
                          "valuation bound (default: max observed)");

  std::string verify_suite = "all";
  SuiteOptions verify_options;
  std::vector<double> verify_eps;
  auto* verify_cmd =
      app.add_subcommand("verify", "run an executable property suite");
  verify_cmd->add_option(
      "suite", verify_suite,
      "norm, monotone, neighbor-ic, ir, dp, welfare or all");
  verify_cmd->add_option("--max-nodes", verify_options.max_nodes,
                         "largest tree size in the generated family");
  verify_cmd->add_option("--eps", verify_eps, "epsilon grid override");
  verify_cmd->add_option("--a", verify_options.a, "geometric layer parameter");
  verify_cmd->add_option("--seed", verify_options.seed, "generator seed");

  std::string sweep_config_path;
  std::string sweep_out = "out";
  auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment sweep");
  sweep_cmd->add_option("config", sweep_config_path, "sweep config file")
      ->required();
  sweep_cmd->add_option("--out", sweep_out, "output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    Format format = parse_format(format_name);

    auto score_config = [](double eps, double vmax_flag,
                           const GlobalProfile& gp) {
      double v_max = vmax_flag;
      if (v_max <= 0.0) {
        for (const auto& [i, prof] : gp.profiles) {
          v_max = std::max(v_max, prof.valuation);
        }
        if (v_max <= 0.0) v_max = 1.0;
      }
      return ScoreConfig{eps, v_max};
    };

    if (tree_cmd->parsed()) {
      GlobalProfile gp = load_instance(tree_flags);
      ProfileDigraph g = build_profile_digraph(gp);
      for (const auto& w : g.warnings) std::cerr << "warning: " << w << '\n';
      print_tree(build_critical_tree(g), format);
      return 0;
    }

    if (dist_cmd->parsed()) {
      Mechanism mech = mechanism_from_string(dist_mech);
      GlobalProfile gp = load_instance(dist_flags);
      auto ctx = AuctionContext::build(gp, score_config(dist_eps, dist_vmax, gp),
                                       GammaSequence::geometric(dist_a));
      print_dist(distribution(mech, ctx), format);
      return 0;
    }

    if (auction_cmd->parsed()) {
      Mechanism mech = mechanism_from_string(auction_mech);
      GlobalProfile gp = load_instance(auction_flags);
      Rng rng(derive_seed(auction_seed, 0x61756374));  // auction stream
      AuctionOutcome outcome =
          run_auction(mech, gp, score_config(auction_eps, auction_vmax, gp),
                      GammaSequence::geometric(auction_a), rng);
      print_outcome(mech, outcome, format);
      return 0;
    }

    if (verify_cmd->parsed()) {
      if (!verify_eps.empty()) verify_options.epsilons = verify_eps;
      auto reports = run_property_suite(verify_suite, verify_options);
      return print_reports(reports, format) ? 0 : 1;
    }

    if (sweep_cmd->parsed()) {
      SweepConfig cfg = parse_sweep_config(sweep_config_path);
      auto rows = run_sweep(cfg);
      emit_outputs(rows, sweep_out);
      std::cout << rows_to_csv(rows);
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
