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
#include <set>
#include <string>
#include <vector>

namespace dpdm {

// Buyers are positive integers; id 0 is reserved for the seller.
using BuyerId = int;
inline constexpr BuyerId kSeller = 0;

// A buyer's report: valuation plus the neighbours she claims to know.
struct Profile {
  double valuation = 0.0;
  std::set<BuyerId> neighbors;
};

// The full reported state: the seller's neighbour set plus one profile
// per participating buyer.
struct GlobalProfile {
  std::set<BuyerId> seller_neighbors;
  std::map<BuyerId, Profile> profiles;
};

// Directed report graph. Edge (i, j) means j was reported as a neighbour
// by i (or by the seller when i == 0).
struct ProfileDigraph {
  std::set<BuyerId> nodes;  // includes the seller
  std::map<BuyerId, std::vector<BuyerId>> adj;
  std::vector<std::string> warnings;  // dropped-edge reports

  const std::vector<BuyerId>& successors(BuyerId i) const;
};

// Dominator tree of the report graph rooted at the seller. parent(j) is
// the nearest node critical to j; depth(seller) = 0.
struct CriticalTree {
  std::map<BuyerId, BuyerId> parent;
  std::map<BuyerId, std::vector<BuyerId>> children;  // ascending id
  std::map<BuyerId, int> depth;
  int d_max = 0;
  std::set<BuyerId> reachable;  // buyers only, excludes the seller

  bool empty() const { return reachable.empty(); }
  const std::vector<BuyerId>& children_of(BuyerId i) const;
};

// Mirrors the reported neighbour claims as directed edges. Edges to ids
// without a profile entry and self-loops are dropped with a warning.
// Throws std::invalid_argument on a negative valuation.
ProfileDigraph build_profile_digraph(const GlobalProfile& reports);

// Buyers with a directed path from the seller.
std::set<BuyerId> reachable_from_seller(const ProfileDigraph& g);

// Brute-force criticality oracle: true iff removing node i disconnects j
// from the seller. is_critical(j, j) is true.
bool is_critical(const ProfileDigraph& g, BuyerId i, BuyerId j);

// Immediate-dominator tree of the reachable part of g.
CriticalTree build_critical_tree(const ProfileDigraph& g);

}  // namespace dpdm
