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

#include <string>
#include <vector>

#include "dpdm/mechanisms.hpp"

namespace dpdm {

// Outcome of one executable property check. A failing report carries a
// replayable description of the worst instance found.
struct PropertyReport {
  std::string property;
  long instances = 0;
  double max_violation = 0.0;
  std::string worst_instance;
  double tolerance = 0.0;
  bool pass = true;

  void record(double violation, const std::string& instance_desc);
  void merge(const PropertyReport& other);
  std::string summary() const;
};

// Two reports identical except for one buyer's valuation.
struct NeighborPair {
  GlobalProfile base;
  GlobalProfile deviated;
  BuyerId deviator = -1;
  double delta_score = 0.0;

  static NeighborPair make(const GlobalProfile& base, BuyerId deviator,
                           double new_value);
};

// --- Single-instance checks -------------------------------------------

PropertyReport check_normalization(Mechanism mech, const AuctionContext& ctx,
                                   double tol = 1e-9);

// Pr_i non-decreasing along an ascending valuation grid.
PropertyReport check_valuation_monotonicity(Mechanism mech,
                                            const AuctionContext& ctx,
                                            BuyerId i,
                                            const std::vector<double>& grid,
                                            double slack = 1e-12);

// |p_i * Pr_i - (v'_i * Pr_i - integral)| against a fixed-step Riemann
// oracle, independent of the adaptive quadrature route.
PropertyReport check_payment_identity(Mechanism mech, const AuctionContext& ctx,
                                      BuyerId i, double tol = 1e-6);

// REC: Pr_i weakly decreases under any neighbour subset; LAY: Pr_i is
// invariant across subsets. Enumerates all of r'_i subseteq r_i.
PropertyReport check_neighbor_ic(Mechanism mech, const GlobalProfile& profiles,
                                 const ScoreConfig& cfg,
                                 const GammaSequence& gamma, BuyerId i,
                                 double tol = 1e-9);

// Expected utility and realized winner utility are nonnegative.
PropertyReport check_ir(Mechanism mech, const AuctionContext& ctx,
                        double tol = 1e-9);

// Per-outcome probability ratios of the pair respect the mechanism's
// privacy bound (exp(eps * d_max * delta) for REC, exp(eps * delta)
// otherwise), using the per-pair score difference.
PropertyReport check_dp_bound(Mechanism mech, const NeighborPair& pair,
                              const ScoreConfig& cfg,
                              const GammaSequence& gamma, double tol = 1e-9);

// E_LAY[sw] >= gamma_{d_max} * E_EMD[sw].
PropertyReport check_welfare_bound(const AuctionContext& ctx,
                                   double tol = 1e-9);

// Ancestor-product evaluation of the REC winning probability, computed
// by direct summation over explicit node sets; independent of the
// recursive route.
double rec_closed_form_oracle(const CriticalTree& tree,
                              const GlobalProfile& profiles,
                              const ScoreConfig& cfg, BuyerId i);

// --- Instance generators ----------------------------------------------

// All parent vectors over buyers 1..n where parent(i) is the seller or a
// lower-id buyer. Covers every rooted tree shape.
std::vector<std::vector<BuyerId>> enumerate_tree_parents(int n_buyers);

GlobalProfile profile_from_parents(const std::vector<BuyerId>& parents,
                                   const std::vector<double>& valuations);

GlobalProfile random_tree_instance(int n_buyers, double v_max, Rng& rng);
GlobalProfile random_digraph_instance(int n_buyers, double edge_prob,
                                      double v_max, Rng& rng);

// The worked scenario used across the documentation and tests: seller
// knows a, b, c; a knows d, e; b knows f; f knows g.
GlobalProfile example_network(double v_g = 7.0);

// --- Suite runners -----------------------------------------------------

struct SuiteOptions {
  int max_nodes = 5;
  std::vector<double> epsilons{0.1, 1.0};
  double a = 2.0;
  std::uint64_t seed = 2026;
};

// suite in {norm, monotone, neighbor-ic, ir, dp, welfare, all}.
std::vector<PropertyReport> run_property_suite(const std::string& suite,
                                               const SuiteOptions& options);

}  // namespace dpdm
