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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpdm/graph.hpp"
#include "dpdm/rng.hpp"
#include "dpdm/scoring.hpp"

namespace dpdm {

enum class Mechanism { kRec, kLay, kEmd, kEmwd, kIdm };

std::string to_string(Mechanism mech);
Mechanism mechanism_from_string(const std::string& name);

// Layer probability sequence gamma_l. The geometric family
// gamma_l = (a-1)/a^l is the default; an explicit finite prefix is
// accepted as long as it is strictly decreasing with sum <= 1 (mass
// beyond the prefix is treated as zero).
class GammaSequence {
 public:
  static GammaSequence geometric(double a);
  static GammaSequence explicit_prefix(std::vector<double> gammas);

  double gamma(int layer) const;       // layer >= 1
  double prefix_sum(int d_max) const;  // sum of gamma_1..gamma_dmax
  bool is_geometric() const { return explicit_.empty(); }
  double a() const { return a_; }

 private:
  GammaSequence() = default;
  double a_ = 0.0;
  std::vector<double> explicit_;
};

// Winning probabilities over reachable buyers plus an explicit no-sale
// outcome. Invariant: sum(prob) + no_sale == 1.
struct WinDistribution {
  std::map<BuyerId, double> prob;
  double no_sale = 1.0;
  Mechanism tag = Mechanism::kRec;

  double probability_of(BuyerId i) const;
  double total() const;
};

struct AuctionOutcome {
  std::optional<BuyerId> winner;
  double payment = 0.0;                  // winner's payment, 0 otherwise
  std::map<BuyerId, double> utilities;   // nonzero entries only
  double seller_revenue = 0.0;
  double social_welfare = 0.0;
};

// Immutable per-auction state: reports plus the derived digraph and
// critical tree. Distributions and payments are pure functions of this.
struct AuctionContext {
  GlobalProfile profiles;
  ProfileDigraph digraph;
  CriticalTree tree;
  ScoreConfig cfg;
  GammaSequence gamma = GammaSequence::geometric(2.0);

  static AuctionContext build(GlobalProfile profiles, ScoreConfig cfg,
                              GammaSequence gamma = GammaSequence::geometric(2.0));
};

WinDistribution rec_distribution(const CriticalTree& tree,
                                 const GlobalProfile& profiles,
                                 const ScoreConfig& cfg);
WinDistribution lay_distribution(const CriticalTree& tree,
                                 const GlobalProfile& profiles,
                                 const ScoreConfig& cfg,
                                 const GammaSequence& gamma);
WinDistribution emd_distribution(const std::set<BuyerId>& reachable,
                                 const GlobalProfile& profiles,
                                 const ScoreConfig& cfg);
WinDistribution emwd_distribution(const std::set<BuyerId>& seller_neighbors,
                                  const GlobalProfile& profiles,
                                  const ScoreConfig& cfg);

// Dispatch over the randomised mechanisms (not IDM).
WinDistribution distribution(Mechanism mech, const AuctionContext& ctx);

// Pr_w with w's reported valuation replaced by `value`, everything else
// fixed. Tree topology is valuation-independent, so the context's tree
// is reused.
double win_probability(Mechanism mech, const AuctionContext& ctx, BuyerId w,
                       double value);

// p_w = v'_w - integral_0^{v'_w} Pr_w(x) dx / Pr_w(v'_w).
// Throws std::domain_error when Pr_w is zero.
double winner_payment(Mechanism mech, const AuctionContext& ctx, BuyerId w);

// Inverse-CDF draw over ascending BuyerId with the no-sale slot last.
std::optional<BuyerId> sample_winner(const WinDistribution& dist, Rng& rng);

// End-to-end auction: distribution, winner draw, payment, utilities.
AuctionOutcome run_auction(Mechanism mech, const GlobalProfile& profiles,
                           const ScoreConfig& cfg, const GammaSequence& gamma,
                           Rng& rng);

double expected_social_welfare(const WinDistribution& dist,
                               const std::map<BuyerId, double>& valuations);

// Deterministic information diffusion mechanism (welfare baseline).
AuctionOutcome idm_outcome(const ProfileDigraph& g,
                           const GlobalProfile& profiles,
                           const CriticalTree& tree);

}  // namespace dpdm
