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

#include "dpdm/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpdm/quadrature.hpp"

namespace dpdm {

std::string to_string(Mechanism mech) {
  switch (mech) {
    case Mechanism::kRec: return "rec";
    case Mechanism::kLay: return "lay";
    case Mechanism::kEmd: return "emd";
    case Mechanism::kEmwd: return "emwd";
    case Mechanism::kIdm: return "idm";
  }
  return "?";
}

Mechanism mechanism_from_string(const std::string& name) {
  if (name == "rec") return Mechanism::kRec;
  if (name == "lay") return Mechanism::kLay;
  if (name == "emd") return Mechanism::kEmd;
  if (name == "emwd") return Mechanism::kEmwd;
  if (name == "idm") return Mechanism::kIdm;
  throw std::invalid_argument("unknown mechanism: " + name);
}

GammaSequence GammaSequence::geometric(double a) {
  if (!(a > 1.0)) {
    throw std::invalid_argument("geometric gamma sequence requires a > 1");
  }
  GammaSequence seq;
  seq.a_ = a;
  return seq;
}

GammaSequence GammaSequence::explicit_prefix(std::vector<double> gammas) {
  double sum = 0.0;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (!(gammas[k] > 0.0 && gammas[k] < 1.0)) {
      throw std::invalid_argument("gamma entries must lie in (0, 1)");
    }
    if (k > 0 && !(gammas[k] < gammas[k - 1])) {
      throw std::invalid_argument("gamma sequence must be strictly decreasing");
    }
    sum += gammas[k];
  }
  if (sum > 1.0 + 1e-12) {
    throw std::invalid_argument("gamma sequence must sum to at most 1");
  }
  GammaSequence seq;
  seq.explicit_ = std::move(gammas);
  return seq;
}

double GammaSequence::gamma(int layer) const {
  if (layer < 1) throw std::invalid_argument("layer index starts at 1");
  if (!explicit_.empty()) {
    return layer <= static_cast<int>(explicit_.size())
               ? explicit_[static_cast<std::size_t>(layer - 1)]
               : 0.0;
  }
  return (a_ - 1.0) * std::pow(a_, -layer);
}

double GammaSequence::prefix_sum(int d_max) const {
  if (!explicit_.empty()) {
    double sum = 0.0;
    for (int l = 1; l <= d_max; ++l) sum += gamma(l);
    return sum;
  }
  // Geometric tail: sum_{1..d} (a-1)/a^l = 1 - a^{-d}.
  return 1.0 - std::pow(a_, -d_max);
}

double WinDistribution::probability_of(BuyerId i) const {
  auto it = prob.find(i);
  return it == prob.end() ? 0.0 : it->second;
}

double WinDistribution::total() const {
  double sum = no_sale;
  for (const auto& [id, p] : prob) sum += p;
  return sum;
}

AuctionContext AuctionContext::build(GlobalProfile profiles, ScoreConfig cfg,
                                     GammaSequence gamma) {
  cfg.validate();
  AuctionContext ctx;
  ctx.profiles = std::move(profiles);
  ctx.digraph = build_profile_digraph(ctx.profiles);
  ctx.tree = build_critical_tree(ctx.digraph);
  ctx.cfg = cfg;
  ctx.gamma = gamma;
  return ctx;
}

namespace {

// Valuation accessor with an optional single-buyer override; avoids
// copying the profile map inside payment quadrature.
struct ValuationView {
  const GlobalProfile* profiles;
  BuyerId override_id = -1;
  double override_value = 0.0;

  double operator()(BuyerId i) const {
    if (i == override_id) return override_value;
    return profiles->profiles.at(i).valuation;
  }
};

WinDistribution softmax_over(const std::set<BuyerId>& support,
                             const ValuationView& val, const ScoreConfig& cfg,
                             Mechanism tag) {
  WinDistribution dist;
  dist.tag = tag;
  if (support.empty()) {
    dist.no_sale = 1.0;
    return dist;
  }
  std::vector<BuyerId> ids(support.begin(), support.end());
  std::vector<double> logs(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    logs[k] = cfg.epsilon * val(ids[k]);
  }
  double lse = log_sum_exp(logs);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    dist.prob[ids[k]] = exp_ratio(logs[k], lse);
  }
  dist.no_sale = 0.0;
  return dist;
}

WinDistribution rec_distribution_impl(const CriticalTree& tree,
                                      const ValuationView& val,
                                      const ScoreConfig& cfg) {
  WinDistribution dist;
  dist.tag = Mechanism::kRec;
  if (tree.empty()) {
    dist.no_sale = 1.0;
    return dist;
  }

  // Pass 1 (post-order): log Exp(T[i]) per buyer.
  std::map<BuyerId, double> log_exp_subtree;
  {
    std::vector<std::pair<BuyerId, bool>> stack{{kSeller, false}};
    while (!stack.empty()) {
      auto [u, expanded] = stack.back();
      stack.pop_back();
      if (!expanded) {
        stack.push_back({u, true});
        for (BuyerId c : tree.children_of(u)) stack.push_back({c, false});
      } else if (u != kSeller) {
        std::vector<double> terms{cfg.epsilon * val(u)};
        for (BuyerId c : tree.children_of(u)) {
          terms.push_back(log_exp_subtree.at(c));
        }
        log_exp_subtree[u] = log_sum_exp(terms);
      }
    }
  }

  // Pass 2 (pre-order): distribute (Pr_{T[i]} - Pr_i) among the child
  // sub-markets. The root is seeded with Pr_{T[0]} = 1 and Pr_0 = 0.
  struct Frame {
    BuyerId node;
    double prob_subtree;
    double prob_node;
  };
  std::vector<Frame> stack{{kSeller, 1.0, 0.0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const auto& kids = tree.children_of(f.node);
    if (kids.empty()) continue;
    double residual = f.prob_subtree - f.prob_node;
    if (residual < -1e-9) {
      throw std::logic_error("negative residual probability mass");
    }
    residual = std::max(residual, 0.0);

    std::vector<double> kid_subtree_logs(kids.size());
    for (std::size_t k = 0; k < kids.size(); ++k) {
      kid_subtree_logs[k] = log_exp_subtree.at(kids[k]);
    }
    double log_exp_strict = log_sum_exp(kid_subtree_logs);  // log Exp(T(i))

    for (std::size_t k = 0; k < kids.size(); ++k) {
      BuyerId j = kids[k];
      double prob_subtree_j =
          residual * exp_ratio(kid_subtree_logs[k], log_exp_strict);

      // Exp(T(i) \ T(j)) = Exp(j) + sum of siblings' Exp(T[.]).
      std::vector<double> denom_terms{cfg.epsilon * val(j)};
      for (std::size_t k2 = 0; k2 < kids.size(); ++k2) {
        if (k2 != k) denom_terms.push_back(kid_subtree_logs[k2]);
      }
      double prob_j = residual * exp_ratio(cfg.epsilon * val(j),
                                           log_sum_exp(denom_terms));
      if (prob_j > prob_subtree_j + 1e-9) {
        throw std::logic_error("buyer probability exceeds sub-market mass");
      }
      dist.prob[j] = prob_j;
      stack.push_back({j, prob_subtree_j, prob_j});
    }
  }
  dist.no_sale = 0.0;
  return dist;
}

WinDistribution lay_distribution_impl(const CriticalTree& tree,
                                      const ValuationView& val,
                                      const ScoreConfig& cfg,
                                      const GammaSequence& gamma) {
  WinDistribution dist;
  dist.tag = Mechanism::kLay;
  if (tree.empty()) {
    dist.no_sale = 1.0;
    return dist;
  }
  std::map<int, std::vector<BuyerId>> layers;
  for (BuyerId i : tree.reachable) layers[tree.depth.at(i)].push_back(i);

  double assigned = 0.0;
  for (const auto& [ell, members] : layers) {
    double mass = gamma.gamma(ell);
    std::vector<double> logs(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      logs[k] = cfg.epsilon * val(members[k]);
    }
    double lse = log_sum_exp(logs);
    for (std::size_t k = 0; k < members.size(); ++k) {
      dist.prob[members[k]] = mass * exp_ratio(logs[k], lse);
    }
    assigned += mass;
  }
  dist.no_sale = 1.0 - assigned;
  return dist;
}

WinDistribution distribution_impl(Mechanism mech, const AuctionContext& ctx,
                                  const ValuationView& val) {
  switch (mech) {
    case Mechanism::kRec:
      return rec_distribution_impl(ctx.tree, val, ctx.cfg);
    case Mechanism::kLay:
      return lay_distribution_impl(ctx.tree, val, ctx.cfg, ctx.gamma);
    case Mechanism::kEmd:
      return softmax_over(ctx.tree.reachable, val, ctx.cfg, Mechanism::kEmd);
    case Mechanism::kEmwd: {
      // Restrict to seller-reported neighbours that actually participate.
      std::set<BuyerId> support;
      for (BuyerId i : ctx.profiles.seller_neighbors) {
        if (ctx.profiles.profiles.count(i)) support.insert(i);
      }
      return softmax_over(support, val, ctx.cfg, Mechanism::kEmwd);
    }
    case Mechanism::kIdm:
      throw std::invalid_argument("IDM is deterministic; use idm_outcome");
  }
  throw std::invalid_argument("unknown mechanism");
}

}  // namespace

WinDistribution rec_distribution(const CriticalTree& tree,
                                 const GlobalProfile& profiles,
                                 const ScoreConfig& cfg) {
  return rec_distribution_impl(tree, ValuationView{&profiles}, cfg);
}

WinDistribution lay_distribution(const CriticalTree& tree,
                                 const GlobalProfile& profiles,
                                 const ScoreConfig& cfg,
                                 const GammaSequence& gamma) {
  return lay_distribution_impl(tree, ValuationView{&profiles}, cfg, gamma);
}

WinDistribution emd_distribution(const std::set<BuyerId>& reachable,
                                 const GlobalProfile& profiles,
                                 const ScoreConfig& cfg) {
  return softmax_over(reachable, ValuationView{&profiles}, cfg,
                      Mechanism::kEmd);
}

WinDistribution emwd_distribution(const std::set<BuyerId>& seller_neighbors,
                                  const GlobalProfile& profiles,
                                  const ScoreConfig& cfg) {
  std::set<BuyerId> support;
  for (BuyerId i : seller_neighbors) {
    if (profiles.profiles.count(i)) support.insert(i);
  }
  return softmax_over(support, ValuationView{&profiles}, cfg,
                      Mechanism::kEmwd);
}

WinDistribution distribution(Mechanism mech, const AuctionContext& ctx) {
  return distribution_impl(mech, ctx, ValuationView{&ctx.profiles});
}

double win_probability(Mechanism mech, const AuctionContext& ctx, BuyerId w,
                       double value) {
  if (!ctx.profiles.profiles.count(w)) {
    throw std::invalid_argument("unknown buyer " + std::to_string(w));
  }
  ValuationView val{&ctx.profiles, w, value};
  return distribution_impl(mech, ctx, val).probability_of(w);
}

double winner_payment(Mechanism mech, const AuctionContext& ctx, BuyerId w) {
  double reported = ctx.profiles.profiles.at(w).valuation;
  double prob_at_report = win_probability(mech, ctx, w, reported);
  if (prob_at_report <= 0.0) {
    throw std::domain_error("payment undefined: buyer " + std::to_string(w) +
                            " has zero winning probability");
  }
  double integral = integrate(
      [&](double x) { return win_probability(mech, ctx, w, x); }, 0.0,
      reported);
  double payment = reported - integral / prob_at_report;
  // Monotone Pr_w makes the exact value land in [0, v']; trim roundoff.
  return std::clamp(payment, 0.0, reported);
}

std::optional<BuyerId> sample_winner(const WinDistribution& dist, Rng& rng) {
  double u = rng.uniform01();
  double acc = 0.0;
  for (const auto& [id, p] : dist.prob) {  // ascending BuyerId
    acc += p;
    if (u < acc) return id;
  }
  return std::nullopt;  // no-sale slot last
}

AuctionOutcome run_auction(Mechanism mech, const GlobalProfile& profiles,
                           const ScoreConfig& cfg, const GammaSequence& gamma,
                           Rng& rng) {
  AuctionContext ctx = AuctionContext::build(profiles, cfg, gamma);
  if (mech == Mechanism::kIdm) {
    return idm_outcome(ctx.digraph, ctx.profiles, ctx.tree);
  }
  WinDistribution dist = distribution(mech, ctx);
  auto winner = sample_winner(dist, rng);

  AuctionOutcome outcome;
  if (!winner) return outcome;
  outcome.winner = *winner;
  outcome.payment = winner_payment(mech, ctx, *winner);
  double value = ctx.profiles.profiles.at(*winner).valuation;
  outcome.utilities[*winner] = value - outcome.payment;
  outcome.seller_revenue = outcome.payment;
  outcome.social_welfare = value;
  return outcome;
}

double expected_social_welfare(const WinDistribution& dist,
                               const std::map<BuyerId, double>& valuations) {
  double sum = 0.0;
  for (const auto& [id, p] : dist.prob) sum += valuations.at(id) * p;
  return sum;
}

AuctionOutcome idm_outcome(const ProfileDigraph& /*g*/,
                           const GlobalProfile& profiles,
                           const CriticalTree& tree) {
  AuctionOutcome outcome;
  if (tree.empty()) return outcome;

  auto value_of = [&](BuyerId i) { return profiles.profiles.at(i).valuation; };
  auto argmax = [&](const std::set<BuyerId>& excluded) -> BuyerId {
    BuyerId best = -1;
    for (BuyerId i : tree.reachable) {  // ascending: ties go to lowest id
      if (excluded.count(i)) continue;
      if (best < 0 || value_of(i) > value_of(best)) best = i;
    }
    return best;
  };
  auto subtree_of = [&](BuyerId x) {
    std::set<BuyerId> sub{x};
    std::vector<BuyerId> stack{x};
    while (!stack.empty()) {
      BuyerId u = stack.back();
      stack.pop_back();
      for (BuyerId c : tree.children_of(u)) {
        sub.insert(c);
        stack.push_back(c);
      }
    }
    return sub;
  };

  // Critical sequence of the highest bidder, root-to-leaf, ending in m.
  BuyerId m = argmax({});
  std::vector<BuyerId> critical{m};
  for (BuyerId x = tree.parent.at(m); x != kSeller; x = tree.parent.at(x)) {
    critical.push_back(x);
  }
  std::reverse(critical.begin(), critical.end());

  std::vector<std::set<BuyerId>> dominated(critical.size());
  for (std::size_t k = 0; k < critical.size(); ++k) {
    dominated[k] = subtree_of(critical[k]);
  }
  auto max_excluding = [&](const std::set<BuyerId>& excluded) {
    BuyerId top = argmax(excluded);
    return top < 0 ? 0.0 : value_of(top);
  };

  // Winner: first critical node whose bid tops the market once the rest
  // of the chain is removed.
  std::size_t win_idx = critical.size() - 1;
  for (std::size_t k = 0; k + 1 < critical.size(); ++k) {
    if (value_of(critical[k]) >= max_excluding(dominated[k + 1])) {
      win_idx = k;
      break;
    }
  }
  BuyerId w = critical[win_idx];
  outcome.winner = w;
  outcome.payment = max_excluding(dominated[win_idx]);
  outcome.social_welfare = value_of(w);
  outcome.utilities[w] = value_of(w) - outcome.payment;

  // Strict critical ancestors collect the marginal increase their
  // participation brings to the achievable price.
  double rewards = 0.0;
  for (std::size_t k = 0; k < win_idx; ++k) {
    double reward =
        max_excluding(dominated[k + 1]) - max_excluding(dominated[k]);
    if (reward != 0.0) outcome.utilities[critical[k]] = reward;
    rewards += reward;
  }
  outcome.seller_revenue = outcome.payment - rewards;
  return outcome;
}

}  // namespace dpdm
