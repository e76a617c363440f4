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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dpdm/mechanisms.hpp"

namespace dpdm {

// Directed edge list over arbitrary non-negative vertex ids.
struct EdgeList {
  std::vector<int> nodes;                      // ascending, unique
  std::vector<std::pair<int, int>> edges;      // directed
  std::string tag;
};

// Parses whitespace-separated integer pairs, one edge per line; '#'
// lines are skipped. Undirected inputs are expanded to two directed
// edges. Throws std::runtime_error with the line number on malformed
// input and on empty files.
EdgeList load_edge_list(const std::string& path, bool directed);
EdgeList parse_edge_list(std::istream& in, bool directed,
                         const std::string& tag);

// Synthetic generators (undirected, emitted as symmetric edge pairs).
EdgeList generate_preferential_attachment(int n, int edges_per_node, Rng& rng);
EdgeList generate_uniform_random(int n, double edge_prob, Rng& rng);

// Reports where every buyer truthfully relays her graph neighbourhood.
// The chosen seller vertex is remapped to id 0 (swapping with whichever
// vertex held 0).
GlobalProfile make_global_profile(const EdgeList& graph, int seller,
                                  const std::vector<double>& valuations);

enum class ValuationLaw { kNormal, kUniform };   // normal(50,10) | U[0,100]
enum class DpAlignment { kRaw, kSameRealized };
enum class SweepMode { kExactExpectation, kFullSimulation };

std::string to_string(ValuationLaw law);

// One draw per node; normal draws below zero are clamped to zero.
std::vector<double> sample_valuations(std::size_t count, ValuationLaw law,
                                      Rng& rng);

struct SweepConfig {
  std::string graph_spec = "pa:200,3";  // pa:n,m | er:n,p | file:path
  bool directed = false;
  bool random_seller = true;
  int fixed_seller = 0;
  std::vector<ValuationLaw> laws{ValuationLaw::kNormal, ValuationLaw::kUniform};
  std::vector<double> epsilons{0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  DpAlignment alignment = DpAlignment::kRaw;
  std::vector<double> a_values{2.0};
  std::vector<Mechanism> mechanisms{Mechanism::kRec, Mechanism::kLay,
                                    Mechanism::kEmd, Mechanism::kEmwd,
                                    Mechanism::kIdm};
  int runs = 500;
  std::uint64_t master_seed = 1;
  SweepMode mode = SweepMode::kExactExpectation;
  double v_max = 100.0;
  int threads = 1;

  void validate() const;
};

// Flat "key = value" file; '#' comments. Unknown keys are an error.
SweepConfig parse_sweep_config(const std::string& path);
SweepConfig parse_sweep_config_stream(std::istream& in);

struct ResultRow {
  std::string dataset;
  std::string mechanism;
  double epsilon = 0.0;   // input epsilon before alignment scaling
  double dp_bound = 0.0;  // mean realized bound over runs (0 for idm)
  double a = 0.0;         // 0 for non-layered mechanisms
  std::string law;
  double mean_sw = 0.0;
  double stderr_sw = 0.0;
  int runs = 0;
  std::uint64_t seed = 0;
};

std::vector<ResultRow> run_sweep(const SweepConfig& cfg);

std::string rows_to_csv(const std::vector<ResultRow>& rows);

// Writes results.csv plus one SVG line chart per (dataset, law).
void emit_outputs(const std::vector<ResultRow>& rows,
                  const std::string& out_dir);

}  // namespace dpdm
