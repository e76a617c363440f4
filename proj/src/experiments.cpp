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

#include "dpdm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dpdm {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in, bool directed,
                         const std::string& tag) {
  EdgeList out;
  out.tag = tag;
  std::set<int> nodes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v) || u < 0 || v < 0) {
      throw std::runtime_error(tag + ": malformed edge at line " +
                               std::to_string(line_no));
    }
    std::string rest;
    if (ls >> rest) {
      throw std::runtime_error(tag + ": trailing tokens at line " +
                               std::to_string(line_no));
    }
    int a = static_cast<int>(u), b = static_cast<int>(v);
    if (a == b) continue;
    nodes.insert(a);
    nodes.insert(b);
    out.edges.emplace_back(a, b);
    if (!directed) out.edges.emplace_back(b, a);
  }
  if (out.edges.empty()) {
    throw std::runtime_error(tag + ": no edges found");
  }
  out.nodes.assign(nodes.begin(), nodes.end());
  return out;
}

EdgeList load_edge_list(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_edge_list(in, directed,
                         std::filesystem::path(path).stem().string());
}

EdgeList generate_preferential_attachment(int n, int edges_per_node,
                                          Rng& rng) {
  if (n < 2 || edges_per_node < 1) {
    throw std::invalid_argument("preferential attachment needs n >= 2, m >= 1");
  }
  EdgeList out;
  out.tag = "pa" + std::to_string(n);
  std::vector<int> endpoint_pool;  // one entry per incident edge end
  std::set<std::pair<int, int>> seen;
  auto add = [&](int a, int b) {
    if (a == b || !seen.insert({std::min(a, b), std::max(a, b)}).second) {
      return;
    }
    out.edges.emplace_back(a, b);
    out.edges.emplace_back(b, a);
    endpoint_pool.push_back(a);
    endpoint_pool.push_back(b);
  };
  add(0, 1);
  for (int v = 2; v < n; ++v) {
    int wanted = std::min(edges_per_node, v);
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < wanted) {
      int t = endpoint_pool[rng.below(endpoint_pool.size())];
      if (t != v) targets.insert(t);
    }
    for (int t : targets) add(v, t);
  }
  for (int v = 0; v < n; ++v) out.nodes.push_back(v);
  return out;
}

EdgeList generate_uniform_random(int n, double edge_prob, Rng& rng) {
  if (n < 2 || edge_prob <= 0.0 || edge_prob > 1.0) {
    throw std::invalid_argument("uniform random graph needs n >= 2, p in (0,1]");
  }
  EdgeList out;
  out.tag = "er" + std::to_string(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform01() < edge_prob) {
        out.edges.emplace_back(u, v);
        out.edges.emplace_back(v, u);
      }
    }
  }
  if (out.edges.empty()) out.edges.emplace_back(0, 1), out.edges.emplace_back(1, 0);
  for (int v = 0; v < n; ++v) out.nodes.push_back(v);
  return out;
}

GlobalProfile make_global_profile(const EdgeList& graph, int seller,
                                  const std::vector<double>& valuations) {
  if (!std::binary_search(graph.nodes.begin(), graph.nodes.end(), seller)) {
    throw std::invalid_argument("seller vertex not present in graph");
  }
  if (valuations.size() != graph.nodes.size()) {
    throw std::invalid_argument("one valuation per graph node required");
  }
  // Swap the chosen seller with whichever vertex holds the reserved id 0.
  auto remap = [&](int v) {
    if (v == seller) return kSeller;
    if (v == 0) return seller;
    return v;
  };

  GlobalProfile gp;
  for (std::size_t k = 0; k < graph.nodes.size(); ++k) {
    int mapped = remap(graph.nodes[k]);
    if (mapped != kSeller) gp.profiles[mapped].valuation = valuations[k];
  }
  for (const auto& [u, v] : graph.edges) {
    int from = remap(u), to = remap(v);
    if (to == kSeller) continue;
    if (from == kSeller) {
      gp.seller_neighbors.insert(to);
    } else {
      gp.profiles.at(from).neighbors.insert(to);
    }
  }
  return gp;
}

std::string to_string(ValuationLaw law) {
  return law == ValuationLaw::kNormal ? "normal" : "uniform";
}

std::vector<double> sample_valuations(std::size_t count, ValuationLaw law,
                                      Rng& rng) {
  std::vector<double> vals(count);
  for (auto& v : vals) {
    v = law == ValuationLaw::kNormal ? std::max(rng.normal(50.0, 10.0), 0.0)
                                     : rng.uniform(0.0, 100.0);
  }
  return vals;
}

void SweepConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  for (double e : epsilons) {
    if (e <= 0.0) throw std::invalid_argument("epsilon values must be > 0");
  }
  if (laws.empty() || epsilons.empty() || mechanisms.empty()) {
    throw std::invalid_argument("laws, eps and mechanisms must be non-empty");
  }
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  for (double a : a_values) {
    if (!(a > 1.0)) throw std::invalid_argument("a values must be > 1");
  }
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    std::size_t b = item.find_first_not_of(" \t");
    std::size_t e = item.find_last_not_of(" \t");
    if (b != std::string::npos) parts.push_back(item.substr(b, e - b + 1));
  }
  return parts;
}

}  // namespace

SweepConfig parse_sweep_config_stream(std::istream& in) {
  SweepConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": expected key = value");
    }
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      std::size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "graph") {
      cfg.graph_spec = value;
    } else if (key == "directed") {
      cfg.directed = value == "true" || value == "1";
    } else if (key == "seller") {
      if (value == "random") {
        cfg.random_seller = true;
      } else if (value.rfind("fixed:", 0) == 0) {
        cfg.random_seller = false;
        cfg.fixed_seller = std::stoi(value.substr(6));
      } else {
        throw std::runtime_error("seller must be 'random' or 'fixed:<id>'");
      }
    } else if (key == "laws") {
      cfg.laws.clear();
      for (const auto& p : split_list(value)) {
        if (p == "normal") cfg.laws.push_back(ValuationLaw::kNormal);
        else if (p == "uniform") cfg.laws.push_back(ValuationLaw::kUniform);
        else throw std::runtime_error("unknown law: " + p);
      }
    } else if (key == "eps") {
      cfg.epsilons.clear();
      for (const auto& p : split_list(value)) cfg.epsilons.push_back(std::stod(p));
    } else if (key == "alignment") {
      if (value == "raw") cfg.alignment = DpAlignment::kRaw;
      else if (value == "same-realized") cfg.alignment = DpAlignment::kSameRealized;
      else throw std::runtime_error("alignment must be raw or same-realized");
    } else if (key == "a") {
      cfg.a_values.clear();
      for (const auto& p : split_list(value)) cfg.a_values.push_back(std::stod(p));
    } else if (key == "mechanisms") {
      cfg.mechanisms.clear();
      for (const auto& p : split_list(value)) {
        cfg.mechanisms.push_back(mechanism_from_string(p));
      }
    } else if (key == "runs") {
      cfg.runs = std::stoi(value);
    } else if (key == "seed") {
      cfg.master_seed = std::stoull(value);
    } else if (key == "mode") {
      if (value == "exact") cfg.mode = SweepMode::kExactExpectation;
      else if (value == "simulate") cfg.mode = SweepMode::kFullSimulation;
      else throw std::runtime_error("mode must be exact or simulate");
    } else if (key == "vmax") {
      cfg.v_max = std::stod(value);
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
  cfg.validate();
  return cfg;
}

SweepConfig parse_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_sweep_config_stream(in);
}

namespace {

EdgeList resolve_graph(const SweepConfig& cfg) {
  const std::string& spec = cfg.graph_spec;
  if (spec.rfind("file:", 0) == 0) {
    return load_edge_list(spec.substr(5), cfg.directed);
  }
  Rng rng(derive_seed(cfg.master_seed, 0x67726170));  // graph stream
  if (spec.rfind("pa:", 0) == 0) {
    auto parts = split_list(spec.substr(3));
    if (parts.size() != 2) throw std::runtime_error("pa spec: pa:n,m");
    return generate_preferential_attachment(std::stoi(parts[0]),
                                            std::stoi(parts[1]), rng);
  }
  if (spec.rfind("er:", 0) == 0) {
    auto parts = split_list(spec.substr(3));
    if (parts.size() != 2) throw std::runtime_error("er spec: er:n,p");
    return generate_uniform_random(std::stoi(parts[0]), std::stod(parts[1]),
                                   rng);
  }
  throw std::runtime_error("unknown graph spec: " + spec);
}

struct Cell {
  Mechanism mech;
  std::size_t eps_idx;
  std::size_t a_idx;  // meaningful for LAY only
  std::size_t law_idx;
};

struct CellSample {
  double sw = 0.0;
  double bound = 0.0;
};

}  // namespace

std::vector<ResultRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  EdgeList graph = resolve_graph(cfg);

  std::vector<Cell> cells;
  for (std::size_t l = 0; l < cfg.laws.size(); ++l) {
    for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
      for (auto mech : cfg.mechanisms) {
        if (mech == Mechanism::kLay) {
          for (std::size_t ai = 0; ai < cfg.a_values.size(); ++ai) {
            cells.push_back({mech, e, ai, l});
          }
        } else {
          cells.push_back({mech, e, 0, l});
        }
      }
    }
  }

  // One instance stream per (law, run); mechanisms and epsilons share
  // the draw so curves are paired.
  std::vector<std::vector<CellSample>> samples(
      static_cast<std::size_t>(cfg.runs) * cfg.laws.size());

  auto do_run = [&](std::size_t law_idx, int run) {
    Rng rng(derive_seed(cfg.master_seed, law_idx + 1, static_cast<std::uint64_t>(run)));
    int seller = cfg.random_seller
                     ? graph.nodes[rng.below(graph.nodes.size())]
                     : cfg.fixed_seller;
    auto valuations =
        sample_valuations(graph.nodes.size(), cfg.laws[law_idx], rng);
    GlobalProfile gp = make_global_profile(graph, seller, valuations);
    ProfileDigraph digraph = build_profile_digraph(gp);
    CriticalTree tree = build_critical_tree(digraph);
    auto vals = [&] {
      std::map<BuyerId, double> m;
      for (const auto& [i, prof] : gp.profiles) m[i] = prof.valuation;
      return m;
    }();
    double d_max = std::max(tree.d_max, 1);

    AuctionOutcome idm;
    bool has_idm = std::find(cfg.mechanisms.begin(), cfg.mechanisms.end(),
                             Mechanism::kIdm) != cfg.mechanisms.end();
    if (has_idm && !tree.empty()) idm = idm_outcome(digraph, gp, tree);

    std::vector<CellSample> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Cell& cell = cells[c];
      if (cell.law_idx != law_idx) continue;
      double eps = cfg.epsilons[cell.eps_idx];
      CellSample s;
      if (cell.mech == Mechanism::kIdm) {
        s.sw = idm.social_welfare;
        s.bound = 0.0;
      } else {
        double eps_used = eps;
        if (cfg.alignment == DpAlignment::kSameRealized &&
            cell.mech != Mechanism::kRec) {
          eps_used = eps * d_max;
        }
        ScoreConfig sc{eps_used, cfg.v_max};
        GammaSequence gamma =
            GammaSequence::geometric(cfg.a_values[cell.a_idx]);
        WinDistribution dist;
        switch (cell.mech) {
          case Mechanism::kRec:
            dist = rec_distribution(tree, gp, sc);
            break;
          case Mechanism::kLay:
            dist = lay_distribution(tree, gp, sc, gamma);
            break;
          case Mechanism::kEmd:
            dist = emd_distribution(tree.reachable, gp, sc);
            break;
          case Mechanism::kEmwd:
            dist = emwd_distribution(gp.seller_neighbors, gp, sc);
            break;
          default:
            break;
        }
        if (cfg.mode == SweepMode::kExactExpectation) {
          s.sw = expected_social_welfare(dist, vals);
        } else {
          Rng draw(derive_seed(cfg.master_seed,
                               0x73696d00ULL + law_idx,
                               static_cast<std::uint64_t>(run),
                               (cell.eps_idx << 16) ^ (cell.a_idx << 8) ^
                                   static_cast<std::uint64_t>(cell.mech)));
          auto winner = sample_winner(dist, draw);
          s.sw = winner ? vals.at(*winner) : 0.0;
        }
        double scale = cell.mech == Mechanism::kRec ? d_max : 1.0;
        s.bound = eps_used * scale * cfg.v_max;
      }
      row[c] = s;
    }
    samples[law_idx * static_cast<std::size_t>(cfg.runs) +
            static_cast<std::size_t>(run)] = std::move(row);
  };

  // Runs are independent; each derives its own stream, so the schedule
  // does not affect results.
  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t l = 0; l < cfg.laws.size(); ++l) {
    for (int r = 0; r < cfg.runs; ++r) tasks.emplace_back(l, r);
  }
  if (cfg.threads <= 1) {
    for (auto& [l, r] : tasks) do_run(l, r);
  } else {
    std::vector<std::thread> pool;
    std::size_t per = (tasks.size() + cfg.threads - 1) /
                      static_cast<std::size_t>(cfg.threads);
    for (int t = 0; t < cfg.threads; ++t) {
      std::size_t begin = static_cast<std::size_t>(t) * per;
      std::size_t end = std::min(begin + per, tasks.size());
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        for (std::size_t k = begin; k < end; ++k) {
          do_run(tasks[k].first, tasks[k].second);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<ResultRow> rows;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    double sum = 0.0, sum_sq = 0.0, bound_sum = 0.0;
    for (int r = 0; r < cfg.runs; ++r) {
      const CellSample& s =
          samples[cell.law_idx * static_cast<std::size_t>(cfg.runs) +
                  static_cast<std::size_t>(r)][c];
      sum += s.sw;
      sum_sq += s.sw * s.sw;
      bound_sum += s.bound;
    }
    double n = cfg.runs;
    double mean = sum / n;
    double var = n > 1 ? std::max(sum_sq / n - mean * mean, 0.0) * n / (n - 1)
                       : 0.0;
    ResultRow row;
    row.dataset = graph.tag;
    row.mechanism = to_string(cell.mech);
    row.epsilon = cfg.epsilons[cell.eps_idx];
    row.dp_bound = bound_sum / n;
    row.a = cell.mech == Mechanism::kLay ? cfg.a_values[cell.a_idx] : 0.0;
    row.law = to_string(cfg.laws[cell.law_idx]);
    row.mean_sw = mean;
    row.stderr_sw = std::sqrt(var / n);
    row.runs = cfg.runs;
    row.seed = cfg.master_seed;
    rows.push_back(row);
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "dataset,mechanism,epsilon,dp_bound,a,law,mean_sw,stderr,runs,seed\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.mechanism << ',' << fmt(r.epsilon) << ','
        << fmt(r.dp_bound) << ',' << fmt(r.a) << ',' << r.law << ','
        << fmt(r.mean_sw) << ',' << fmt(r.stderr_sw) << ',' << r.runs << ','
        << r.seed << '\n';
  }
  return out.str();
}

namespace {

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

void write_svg_chart(const std::string& path,
                     const std::string& title,
                     const std::map<std::string,
                                    std::vector<std::pair<double, double>>>&
                         series) {
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& [name, pts] : series) {
    for (const auto& [x, y] : pts) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (y_min == y_max) y_max = y_min + 1.0;
  if (x_min == x_max) x_max = x_min + 1.0;
  const double w = 640, h = 440, ml = 70, mr = 160, mt = 40, mb = 50;
  auto px = [&](double x) {
    return ml + (x - x_min) / (x_max - x_min) * (w - ml - mr);
  };
  auto py = [&](double y) {
    return h - mb - (y - y_min) / (y_max - y_min) * (h - mt - mb);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\">\n";
  out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-size=\"14\">" << title << "</text>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double y = y_min + (y_max - y_min) * t / 4.0;
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(y)
        << "</text>\n";
    double x = x_min + (x_max - x_min) * t / 4.0;
    out << "<text x=\"" << px(x) << "\" y=\"" << h - mb + 16
        << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt(x)
        << "</text>\n";
  }
  out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">epsilon</text>\n";
  out << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 16 "
      << (mt + h - mb) / 2 << ")\" text-anchor=\"middle\">mean social "
         "welfare</text>\n";

  int idx = 0;
  for (const auto& [name, pts] : series) {
    const char* color = kPalette[idx % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) out << px(x) << ',' << py(y) << ' ';
    out << "\"/>\n";
    double ly = mt + 16.0 * idx;
    out << "<line x1=\"" << w - mr + 10 << "\" y1=\"" << ly << "\" x2=\""
        << w - mr + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << w - mr + 36 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\">" << name << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
}

}  // namespace

void emit_outputs(const std::vector<ResultRow>& rows,
                  const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream csv(std::filesystem::path(out_dir) / "results.csv");
  if (!csv) throw std::runtime_error("cannot write results.csv in " + out_dir);
  csv << rows_to_csv(rows);

  std::set<std::pair<std::string, std::string>> charts;
  for (const auto& r : rows) charts.insert({r.dataset, r.law});
  for (const auto& [dataset, law] : charts) {
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& r : rows) {
      if (r.dataset != dataset || r.law != law) continue;
      std::string name = r.mechanism;
      if (r.mechanism == "lay") name += " a=" + fmt(r.a);
      series[name].emplace_back(r.epsilon, r.mean_sw);
    }
    for (auto& [name, pts] : series) std::sort(pts.begin(), pts.end());
    std::string file = "sw_" + dataset + "_" + law + ".svg";
    write_svg_chart((std::filesystem::path(out_dir) / file).string(),
                    dataset + " / " + law, series);
  }
}

}  // namespace dpdm
