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

#include "dpdm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dpdm/quadrature.hpp"

namespace dpdm {

void PropertyReport::record(double violation, const std::string& instance_desc) {
  ++instances;
  if (violation > max_violation) {
    max_violation = violation;
    worst_instance = instance_desc;
  }
  if (violation > tolerance) pass = false;
}

void PropertyReport::merge(const PropertyReport& other) {
  instances += other.instances;
  if (other.max_violation > max_violation) {
    max_violation = other.max_violation;
    worst_instance = other.worst_instance;
  }
  pass = pass && other.pass;
}

std::string PropertyReport::summary() const {
  std::ostringstream out;
  out << (pass ? "PASS" : "FAIL") << " " << property << ": " << instances
      << " instances, max violation " << max_violation;
  if (!pass) out << ", worst at [" << worst_instance << "]";
  return out.str();
}

NeighborPair NeighborPair::make(const GlobalProfile& base, BuyerId deviator,
                                double new_value) {
  NeighborPair pair;
  pair.base = base;
  pair.deviated = base;
  pair.deviator = deviator;
  auto& profile = pair.deviated.profiles.at(deviator);
  pair.delta_score = std::abs(profile.valuation - new_value);
  profile.valuation = new_value;
  return pair;
}

namespace {

std::string describe(const GlobalProfile& gp, const std::string& extra) {
  std::ostringstream out;
  out << "edges:";
  for (BuyerId j : gp.seller_neighbors) out << " 0-" << j;
  for (const auto& [i, prof] : gp.profiles) {
    for (BuyerId j : prof.neighbors) out << " " << i << "-" << j;
  }
  out << " values:";
  for (const auto& [i, prof] : gp.profiles) out << " " << prof.valuation;
  if (!extra.empty()) out << " " << extra;
  return out.str();
}

std::map<BuyerId, double> true_valuations(const GlobalProfile& gp) {
  std::map<BuyerId, double> vals;
  for (const auto& [i, prof] : gp.profiles) vals[i] = prof.valuation;
  return vals;
}

}  // namespace

PropertyReport check_normalization(Mechanism mech, const AuctionContext& ctx,
                                   double tol) {
  PropertyReport report;
  report.property = "normalization";
  report.tolerance = tol;
  WinDistribution dist = distribution(mech, ctx);
  report.record(std::abs(dist.total() - 1.0),
                describe(ctx.profiles, to_string(mech)));
  return report;
}

PropertyReport check_valuation_monotonicity(Mechanism mech,
                                            const AuctionContext& ctx,
                                            BuyerId i,
                                            const std::vector<double>& grid,
                                            double slack) {
  PropertyReport report;
  report.property = "valuation-monotonicity";
  report.tolerance = slack;
  double prev = -1.0;
  for (double x : grid) {
    double p = win_probability(mech, ctx, i, x);
    double drop = prev - p;
    report.record(std::max(drop, 0.0),
                  describe(ctx.profiles, to_string(mech) + " i=" +
                                             std::to_string(i) + " x=" +
                                             std::to_string(x)));
    prev = p;
  }
  return report;
}

PropertyReport check_payment_identity(Mechanism mech, const AuctionContext& ctx,
                                      BuyerId i, double tol) {
  PropertyReport report;
  report.property = "payment-identity";
  report.tolerance = tol;
  double reported = ctx.profiles.profiles.at(i).valuation;
  double prob = win_probability(mech, ctx, i, reported);
  if (prob <= 0.0) return report;  // payment undefined, nothing to check
  double payment = winner_payment(mech, ctx, i);
  double oracle_integral = riemann(
      [&](double x) { return win_probability(mech, ctx, i, x); }, 0.0,
      reported, 10000);
  double lhs = payment * prob;
  double rhs = reported * prob - oracle_integral;
  report.record(std::abs(lhs - rhs),
                describe(ctx.profiles,
                         to_string(mech) + " i=" + std::to_string(i)));
  return report;
}

PropertyReport check_neighbor_ic(Mechanism mech, const GlobalProfile& profiles,
                                 const ScoreConfig& cfg,
                                 const GammaSequence& gamma, BuyerId i,
                                 double tol) {
  PropertyReport report;
  report.property = "neighbor-ic";
  report.tolerance = tol;

  const auto& full_neighbors = profiles.profiles.at(i).neighbors;
  if (full_neighbors.size() > 12) {
    throw std::invalid_argument("instance too large: neighbour set of " +
                                std::to_string(i) + " exceeds 12");
  }
  AuctionContext full_ctx = AuctionContext::build(profiles, cfg, gamma);
  double full_prob = distribution(mech, full_ctx).probability_of(i);
  int full_depth = full_ctx.tree.depth.count(i) ? full_ctx.tree.depth.at(i) : -1;

  std::vector<BuyerId> neighbors(full_neighbors.begin(), full_neighbors.end());
  std::size_t subsets = std::size_t{1} << neighbors.size();
  for (std::size_t mask = 0; mask + 1 < subsets; ++mask) {
    GlobalProfile hidden = profiles;
    std::set<BuyerId> kept;
    for (std::size_t b = 0; b < neighbors.size(); ++b) {
      if (mask & (std::size_t{1} << b)) kept.insert(neighbors[b]);
    }
    hidden.profiles.at(i).neighbors = kept;
    AuctionContext ctx = AuctionContext::build(hidden, cfg, gamma);
    double prob = distribution(mech, ctx).probability_of(i);

    double violation = 0.0;
    if (mech == Mechanism::kRec) {
      violation = prob - full_prob;  // hiding must not help
    } else if (mech == Mechanism::kLay) {
      int depth = ctx.tree.depth.count(i) ? ctx.tree.depth.at(i) : -1;
      if (depth == full_depth) violation = std::abs(prob - full_prob);
    } else {
      violation = prob - full_prob;
    }
    report.record(std::max(violation, 0.0),
                  describe(profiles, to_string(mech) + " i=" +
                                         std::to_string(i) + " mask=" +
                                         std::to_string(mask)));
  }
  return report;
}

PropertyReport check_ir(Mechanism mech, const AuctionContext& ctx, double tol) {
  PropertyReport report;
  report.property = "individual-rationality";
  report.tolerance = tol;
  for (BuyerId i : ctx.tree.reachable) {
    double value = ctx.profiles.profiles.at(i).valuation;
    double expected_utility = integrate(
        [&](double x) { return win_probability(mech, ctx, i, x); }, 0.0,
        value);
    report.record(std::max(-expected_utility, 0.0),
                  describe(ctx.profiles,
                           to_string(mech) + " i=" + std::to_string(i)));
    double prob = win_probability(mech, ctx, i, value);
    if (prob > 0.0) {
      double realized = value - winner_payment(mech, ctx, i);
      report.record(std::max(-realized, 0.0),
                    describe(ctx.profiles, to_string(mech) + " winner=" +
                                               std::to_string(i)));
    }
  }
  return report;
}

PropertyReport check_dp_bound(Mechanism mech, const NeighborPair& pair,
                              const ScoreConfig& cfg,
                              const GammaSequence& gamma, double tol) {
  PropertyReport report;
  report.property = "dp-bound";
  report.tolerance = tol;

  AuctionContext base = AuctionContext::build(pair.base, cfg, gamma);
  AuctionContext dev = AuctionContext::build(pair.deviated, cfg, gamma);
  WinDistribution p = distribution(mech, base);
  WinDistribution q = distribution(mech, dev);

  double scale = mech == Mechanism::kRec ? base.tree.d_max : 1.0;
  double bound = std::exp(cfg.epsilon * scale * pair.delta_score);

  auto ratio_violation = [&](double pp, double qq) {
    if (pp <= 0.0 && qq <= 0.0) return 0.0;
    if (pp <= 0.0 || qq <= 0.0) {
      return std::numeric_limits<double>::infinity();  // absolute continuity
    }
    return std::max(pp / qq, qq / pp) - bound;
  };

  std::string desc = describe(pair.base, to_string(mech) + " deviator=" +
                                             std::to_string(pair.deviator));
  for (BuyerId i : base.tree.reachable) {
    report.record(std::max(ratio_violation(p.probability_of(i),
                                           q.probability_of(i)),
                           0.0),
                  desc + " o=" + std::to_string(i));
  }
  report.record(std::max(ratio_violation(p.no_sale, q.no_sale), 0.0),
                desc + " o=no-sale");
  return report;
}

PropertyReport check_welfare_bound(const AuctionContext& ctx, double tol) {
  PropertyReport report;
  report.property = "welfare-bound";
  report.tolerance = tol;
  auto vals = true_valuations(ctx.profiles);
  double lay =
      expected_social_welfare(distribution(Mechanism::kLay, ctx), vals);
  double emd =
      expected_social_welfare(distribution(Mechanism::kEmd, ctx), vals);
  double floor = ctx.gamma.gamma(std::max(ctx.tree.d_max, 1)) * emd;
  report.record(std::max(floor - lay, 0.0),
                describe(ctx.profiles, "a=" + std::to_string(ctx.gamma.a())));
  return report;
}

double rec_closed_form_oracle(const CriticalTree& tree,
                              const GlobalProfile& profiles,
                              const ScoreConfig& cfg, BuyerId i) {
  if (!tree.reachable.count(i)) {
    throw std::invalid_argument("buyer not reachable");
  }
  auto subtree_incl = [&](BuyerId x) {
    std::set<BuyerId> sub;
    std::vector<BuyerId> stack{x};
    while (!stack.empty()) {
      BuyerId u = stack.back();
      stack.pop_back();
      if (u != kSeller) sub.insert(u);
      for (BuyerId c : tree.children_of(u)) stack.push_back(c);
    }
    return sub;
  };
  auto exp_sum = [&](const std::set<BuyerId>& nodes) -> long double {
    long double sum = 0.0L;
    for (BuyerId k : nodes) {
      sum += std::exp(static_cast<long double>(cfg.epsilon) *
                      profiles.profiles.at(k).valuation);
    }
    return sum;
  };
  auto strict = [&](BuyerId x) {
    auto sub = subtree_incl(x);
    sub.erase(x);
    return sub;
  };
  auto minus = [](std::set<BuyerId> lhs, const std::set<BuyerId>& rhs) {
    for (BuyerId k : rhs) lhs.erase(k);
    return lhs;
  };
  auto seller_strict = [&]() {
    std::set<BuyerId> all(tree.reachable.begin(), tree.reachable.end());
    return all;
  };
  auto strict_of = [&](BuyerId x) {
    return x == kSeller ? seller_strict() : strict(x);
  };

  // Ancestors of i ending at the seller: a^1 = parent(i), ..., a^{d} = s.
  std::vector<BuyerId> ancestors;
  for (BuyerId x = tree.parent.at(i); ; x = tree.parent.at(x)) {
    ancestors.push_back(x);
    if (x == kSeller) break;
  }

  long double exp_i =
      std::exp(static_cast<long double>(cfg.epsilon) *
               profiles.profiles.at(i).valuation);
  long double result =
      exp_i / exp_sum(minus(strict_of(ancestors[0]), strict(i)));
  for (std::size_t ell = 0; ell + 1 < ancestors.size(); ++ell) {
    BuyerId a_l = ancestors[ell];
    BuyerId a_next = ancestors[ell + 1];
    long double first =
        exp_sum(subtree_incl(a_l)) / exp_sum(strict_of(a_next));
    long double exp_al =
        std::exp(static_cast<long double>(cfg.epsilon) *
                 profiles.profiles.at(a_l).valuation);
    long double second =
        exp_al / exp_sum(minus(strict_of(a_next), strict(a_l)));
    result *= first - second;
  }
  return static_cast<double>(result);
}

// --- Generators --------------------------------------------------------

std::vector<std::vector<BuyerId>> enumerate_tree_parents(int n_buyers) {
  std::vector<std::vector<BuyerId>> out;
  std::vector<BuyerId> parents(static_cast<std::size_t>(n_buyers), 0);
  // Mixed-radix counter: buyer k may attach to the seller or any buyer
  // with a lower id.
  for (;;) {
    out.push_back(parents);
    int k = n_buyers - 1;
    while (k >= 0) {
      if (parents[static_cast<std::size_t>(k)] < k) {
        ++parents[static_cast<std::size_t>(k)];
        break;
      }
      parents[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

GlobalProfile profile_from_parents(const std::vector<BuyerId>& parents,
                                   const std::vector<double>& valuations) {
  if (parents.size() != valuations.size()) {
    throw std::invalid_argument("parents/valuations size mismatch");
  }
  GlobalProfile gp;
  for (std::size_t k = 0; k < parents.size(); ++k) {
    BuyerId child = static_cast<BuyerId>(k) + 1;
    gp.profiles[child].valuation = valuations[k];
    if (parents[k] == kSeller) {
      gp.seller_neighbors.insert(child);
    } else {
      gp.profiles[parents[k]].neighbors.insert(child);
    }
  }
  return gp;
}

GlobalProfile random_tree_instance(int n_buyers, double v_max, Rng& rng) {
  std::vector<BuyerId> parents(static_cast<std::size_t>(n_buyers));
  std::vector<double> valuations(static_cast<std::size_t>(n_buyers));
  for (int k = 0; k < n_buyers; ++k) {
    parents[static_cast<std::size_t>(k)] =
        static_cast<BuyerId>(rng.below(static_cast<std::uint64_t>(k) + 1));
    valuations[static_cast<std::size_t>(k)] = rng.uniform(0.0, v_max);
  }
  return profile_from_parents(parents, valuations);
}

GlobalProfile random_digraph_instance(int n_buyers, double edge_prob,
                                      double v_max, Rng& rng) {
  GlobalProfile gp;
  for (BuyerId i = 1; i <= n_buyers; ++i) {
    gp.profiles[i].valuation = rng.uniform(0.0, v_max);
  }
  for (BuyerId j = 1; j <= n_buyers; ++j) {
    if (rng.uniform01() < edge_prob) gp.seller_neighbors.insert(j);
  }
  for (BuyerId i = 1; i <= n_buyers; ++i) {
    for (BuyerId j = 1; j <= n_buyers; ++j) {
      if (i != j && rng.uniform01() < edge_prob) {
        gp.profiles[i].neighbors.insert(j);
      }
    }
  }
  return gp;
}

GlobalProfile example_network(double v_g) {
  GlobalProfile gp;
  gp.seller_neighbors = {1, 2, 3};  // a, b, c
  gp.profiles[1] = {10.0, {4, 5}};  // a knows d, e
  gp.profiles[2] = {8.0, {6}};      // b knows f
  gp.profiles[3] = {14.0, {}};      // c
  gp.profiles[4] = {9.0, {}};       // d
  gp.profiles[5] = {12.0, {}};      // e
  gp.profiles[6] = {15.0, {7}};     // f knows g
  gp.profiles[7] = {v_g, {}};       // g
  return gp;
}

// --- Suites ------------------------------------------------------------

namespace {

struct SuiteContext {
  const SuiteOptions& options;
  GammaSequence gamma;
  double v_max;
};

// Canonical string of the rooted shape, used to deduplicate the labeled
// enumeration down to unlabeled tree shapes.
std::string canonical_shape(const std::vector<BuyerId>& parents) {
  std::size_t n = parents.size();
  std::vector<std::vector<std::size_t>> children(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    children[static_cast<std::size_t>(parents[k])].push_back(k + 1);
  }
  auto encode = [&](auto&& self, std::size_t node) -> std::string {
    std::vector<std::string> parts;
    for (std::size_t c : children[node]) parts.push_back(self(self, c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    return out + ")";
  };
  return encode(encode, 0);
}

std::vector<std::vector<BuyerId>> tree_shapes_upto(int max_buyers) {
  std::vector<std::vector<BuyerId>> shapes;
  std::set<std::string> seen;
  for (int n = 1; n <= max_buyers; ++n) {
    for (const auto& parents : enumerate_tree_parents(n)) {
      if (seen.insert(canonical_shape(parents)).second) {
        shapes.push_back(parents);
      }
    }
  }
  return shapes;
}

std::vector<double> grid_assignment(std::size_t n, double top, Rng& rng) {
  std::vector<double> vals(n);
  for (auto& v : vals) {
    v = static_cast<double>(rng.below(static_cast<std::uint64_t>(top) + 1));
  }
  return vals;
}

std::vector<PropertyReport> suite_norm(const SuiteContext& sc) {
  PropertyReport merged;
  merged.property = "normalization";
  merged.tolerance = 1e-9;
  for (double eps : {0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3}) {
    ScoreConfig cfg{eps, 20.0};
    auto ctx = AuctionContext::build(example_network(), cfg, sc.gamma);
    for (auto mech : {Mechanism::kRec, Mechanism::kLay, Mechanism::kEmd,
                      Mechanism::kEmwd}) {
      merged.merge(check_normalization(mech, ctx));
    }
  }
  Rng rng(derive_seed(sc.options.seed, 1));
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng.below(199));
    auto gp = random_tree_instance(n, sc.v_max, rng);
    auto ctx = AuctionContext::build(gp, ScoreConfig{0.1, sc.v_max}, sc.gamma);
    merged.merge(check_normalization(Mechanism::kRec, ctx));
    merged.merge(check_normalization(Mechanism::kLay, ctx));
  }
  return {merged};
}

std::vector<PropertyReport> suite_monotone(const SuiteContext& sc) {
  PropertyReport merged;
  merged.property = "valuation-monotonicity";
  merged.tolerance = 1e-12;
  std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  Rng rng(derive_seed(sc.options.seed, 2));
  for (const auto& parents : tree_shapes_upto(sc.options.max_nodes)) {
    auto vals = grid_assignment(parents.size(), 4.0, rng);
    for (double eps : sc.options.epsilons) {
      auto ctx = AuctionContext::build(profile_from_parents(parents, vals),
                                       ScoreConfig{eps, sc.v_max}, sc.gamma);
      for (BuyerId i : ctx.tree.reachable) {
        for (auto mech : {Mechanism::kRec, Mechanism::kLay, Mechanism::kEmd}) {
          merged.merge(check_valuation_monotonicity(mech, ctx, i, grid));
        }
      }
    }
  }
  return {merged};
}

std::vector<PropertyReport> suite_neighbor_ic(const SuiteContext& sc) {
  PropertyReport merged;
  merged.property = "neighbor-ic";
  merged.tolerance = 1e-9;
  // The motivating deviation: b (buyer 2) hiding f.
  for (double eps : sc.options.epsilons) {
    ScoreConfig cfg{std::min(eps, 0.3), 20.0};
    merged.merge(check_neighbor_ic(Mechanism::kRec, example_network(), cfg,
                                   sc.gamma, 2));
    merged.merge(check_neighbor_ic(Mechanism::kLay, example_network(), cfg,
                                   sc.gamma, 2));
  }
  Rng rng(derive_seed(sc.options.seed, 3));
  for (const auto& parents : tree_shapes_upto(sc.options.max_nodes)) {
    auto vals = grid_assignment(parents.size(), 4.0, rng);
    auto gp = profile_from_parents(parents, vals);
    for (double eps : sc.options.epsilons) {
      ScoreConfig cfg{eps, sc.v_max};
      for (const auto& [i, prof] : gp.profiles) {
        merged.merge(check_neighbor_ic(Mechanism::kRec, gp, cfg, sc.gamma, i));
        merged.merge(check_neighbor_ic(Mechanism::kLay, gp, cfg, sc.gamma, i));
      }
    }
  }
  return {merged};
}

std::vector<PropertyReport> suite_ir(const SuiteContext& sc) {
  PropertyReport merged;
  merged.property = "individual-rationality";
  merged.tolerance = 1e-9;
  Rng rng(derive_seed(sc.options.seed, 4));
  for (const auto& parents : tree_shapes_upto(sc.options.max_nodes)) {
    auto vals = grid_assignment(parents.size(), 4.0, rng);
    for (double eps : sc.options.epsilons) {
      auto ctx = AuctionContext::build(profile_from_parents(parents, vals),
                                       ScoreConfig{eps, sc.v_max}, sc.gamma);
      merged.merge(check_ir(Mechanism::kRec, ctx));
      merged.merge(check_ir(Mechanism::kLay, ctx));
    }
  }
  for (double eps : {0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3}) {
    auto ctx = AuctionContext::build(example_network(),
                                     ScoreConfig{eps, 20.0}, sc.gamma);
    merged.merge(check_ir(Mechanism::kRec, ctx));
  }
  return {merged};
}

std::vector<PropertyReport> suite_dp(const SuiteContext& sc) {
  PropertyReport merged;
  merged.property = "dp-bound";
  merged.tolerance = 1e-9;
  Rng rng(derive_seed(sc.options.seed, 5));
  double top = 5.0;
  for (int n = 1; n <= sc.options.max_nodes; ++n) {
    for (const auto& parents : enumerate_tree_parents(n)) {
      // Exhaustive valuation grid for tiny trees, sampled beyond.
      std::vector<std::vector<double>> assignments;
      if (n <= 3) {
        std::vector<double> vals(static_cast<std::size_t>(n), 0.0);
        for (;;) {
          assignments.push_back(vals);
          std::size_t k = 0;
          while (k < vals.size() && vals[k] == top) vals[k++] = 0.0;
          if (k == vals.size()) break;
          vals[k] += 1.0;
        }
      } else {
        for (int t = 0; t < 8; ++t) {
          assignments.push_back(grid_assignment(parents.size(), top, rng));
        }
      }
      for (const auto& vals : assignments) {
        auto gp = profile_from_parents(parents, vals);
        for (const auto& [i, prof] : gp.profiles) {
          for (double alt = 0.0; alt <= top; alt += 1.0) {
            if (alt == prof.valuation) continue;
            auto pair = NeighborPair::make(gp, i, alt);
            for (double eps : {0.1, 0.3}) {
              ScoreConfig cfg{eps, top};
              for (auto mech : {Mechanism::kRec, Mechanism::kLay,
                                Mechanism::kEmd, Mechanism::kEmwd}) {
                merged.merge(check_dp_bound(mech, pair, cfg, sc.gamma));
              }
            }
          }
        }
      }
    }
  }
  return {merged};
}

std::vector<PropertyReport> suite_welfare(const SuiteContext& sc) {
  PropertyReport merged;
  merged.property = "welfare-bound";
  merged.tolerance = 1e-9;
  Rng rng(derive_seed(sc.options.seed, 6));
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng.below(20));
    auto gp = random_tree_instance(n, sc.v_max, rng);
    for (double a : {1.25, 1.5, 2.0, 3.0}) {
      auto ctx = AuctionContext::build(gp, ScoreConfig{0.2, sc.v_max},
                                       GammaSequence::geometric(a));
      merged.merge(check_welfare_bound(ctx));
    }
  }
  return {merged};
}

}  // namespace

std::vector<PropertyReport> run_property_suite(const std::string& suite,
                                               const SuiteOptions& options) {
  SuiteContext sc{options, GammaSequence::geometric(options.a), 5.0};
  std::vector<PropertyReport> reports;
  auto append = [&](std::vector<PropertyReport> more) {
    for (auto& r : more) reports.push_back(std::move(r));
  };
  if (suite == "norm" || suite == "all") append(suite_norm(sc));
  if (suite == "monotone" || suite == "all") append(suite_monotone(sc));
  if (suite == "neighbor-ic" || suite == "all") append(suite_neighbor_ic(sc));
  if (suite == "ir" || suite == "all") append(suite_ir(sc));
  if (suite == "dp" || suite == "all") append(suite_dp(sc));
  if (suite == "welfare" || suite == "all") append(suite_welfare(sc));
  if (reports.empty()) {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const PropertyReport& x, const PropertyReport& y) {
                     return x.property < y.property;
                   });
  return reports;
}

}  // namespace dpdm
