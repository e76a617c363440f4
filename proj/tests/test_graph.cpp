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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpdm/graph.hpp"
#include "dpdm/rng.hpp"
#include "dpdm/verification.hpp"

using namespace dpdm;

namespace {

// Checks the dominator tree against the brute-force criticality oracle:
// for every reachable j, the critical nodes of j must be exactly j plus
// its tree ancestors.
void check_tree_against_oracle(const ProfileDigraph& g) {
  CriticalTree tree = build_critical_tree(g);
  auto reachable = reachable_from_seller(g);
  REQUIRE(tree.reachable == reachable);
  for (BuyerId j : reachable) {
    std::set<BuyerId> ancestors{j};
    for (BuyerId x = tree.parent.at(j); x != kSeller; x = tree.parent.at(x)) {
      ancestors.insert(x);
    }
    for (BuyerId i : reachable) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(is_critical(g, i, j) == (ancestors.count(i) > 0));
    }
  }
  // Depth bookkeeping.
  int observed_max = 0;
  for (BuyerId j : reachable) {
    BuyerId p = tree.parent.at(j);
    int parent_depth = p == kSeller ? 0 : tree.depth.at(p);
    CHECK(tree.depth.at(j) == parent_depth + 1);
    observed_max = std::max(observed_max, tree.depth.at(j));
  }
  CHECK(tree.d_max == observed_max);
}

}  // namespace

TEST_CASE("profile digraph mirrors reported neighbour claims") {
  GlobalProfile gp = example_network();
  ProfileDigraph g = build_profile_digraph(gp);
  CHECK(g.nodes.size() == 8);
  CHECK(g.successors(kSeller) == std::vector<BuyerId>{1, 2, 3});
  CHECK(g.successors(1) == std::vector<BuyerId>{4, 5});
  CHECK(g.successors(2) == std::vector<BuyerId>{6});
  CHECK(g.successors(6) == std::vector<BuyerId>{7});
  CHECK(g.warnings.empty());
}

TEST_CASE("empty reports give a seller-only digraph") {
  ProfileDigraph g = build_profile_digraph({});
  CHECK(g.nodes == std::set<BuyerId>{kSeller});
  CHECK(reachable_from_seller(g).empty());
  CHECK(build_critical_tree(g).empty());
}

TEST_CASE("edges to unknown ids are dropped with a warning") {
  GlobalProfile gp;
  gp.seller_neighbors = {1};
  gp.profiles[1] = {5.0, {2, 99}};
  gp.profiles[2] = {3.0, {}};
  ProfileDigraph g = build_profile_digraph(gp);
  CHECK(g.successors(1) == std::vector<BuyerId>{2});
  REQUIRE(g.warnings.size() == 1);
  CHECK(g.warnings[0].find("99") != std::string::npos);
}

TEST_CASE("self-loops are dropped silently") {
  GlobalProfile gp;
  gp.seller_neighbors = {1};
  gp.profiles[1] = {5.0, {1}};
  ProfileDigraph g = build_profile_digraph(gp);
  CHECK(g.successors(1).empty());
}

TEST_CASE("negative valuation is rejected") {
  GlobalProfile gp;
  gp.seller_neighbors = {1};
  gp.profiles[1] = {-1.0, {}};
  CHECK_THROWS_AS(build_profile_digraph(gp), std::invalid_argument);
}

TEST_CASE("reachability") {
  GlobalProfile gp;
  gp.seller_neighbors = {1};
  gp.profiles[1] = {1.0, {2}};
  gp.profiles[2] = {1.0, {}};
  gp.profiles[3] = {1.0, {2}};  // 3 has no inbound path
  ProfileDigraph g = build_profile_digraph(gp);
  CHECK(reachable_from_seller(g) == std::set<BuyerId>{1, 2});

  ProfileDigraph fig1 = build_profile_digraph(example_network());
  CHECK(reachable_from_seller(fig1) ==
        std::set<BuyerId>{1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("criticality oracle on the worked example") {
  ProfileDigraph g = build_profile_digraph(example_network());
  CHECK(is_critical(g, 2, 7));       // b is critical to g
  CHECK_FALSE(is_critical(g, 1, 7)); // a is not
  CHECK(is_critical(g, 7, 7));
  CHECK(is_critical(g, 6, 7));       // f is critical to g
}

TEST_CASE("critical tree of the worked example") {
  ProfileDigraph g = build_profile_digraph(example_network());
  CriticalTree tree = build_critical_tree(g);
  CHECK(tree.parent.at(1) == kSeller);
  CHECK(tree.parent.at(2) == kSeller);
  CHECK(tree.parent.at(3) == kSeller);
  CHECK(tree.parent.at(4) == 1);
  CHECK(tree.parent.at(5) == 1);
  CHECK(tree.parent.at(6) == 2);
  CHECK(tree.parent.at(7) == 6);
  CHECK(tree.depth.at(4) == 2);
  CHECK(tree.depth.at(7) == 3);
  CHECK(tree.d_max == 3);
}

TEST_CASE("diamond collapses to the root") {
  GlobalProfile gp;
  gp.seller_neighbors = {1, 2};
  gp.profiles[1] = {1.0, {3}};
  gp.profiles[2] = {1.0, {3}};
  gp.profiles[3] = {1.0, {}};
  ProfileDigraph g = build_profile_digraph(gp);
  CHECK_FALSE(is_critical(g, 1, 3));
  CriticalTree tree = build_critical_tree(g);
  CHECK(tree.parent.at(3) == kSeller);
  CHECK(tree.depth.at(3) == 1);
}

TEST_CASE("tree matches the brute-force oracle exhaustively (<= 4 buyers)") {
  // Every digraph over 3 buyers with all 12 possible edges toggled, plus
  // every seller neighbour subset.
  for (int seller_mask = 0; seller_mask < 8; ++seller_mask) {
    for (int edge_mask = 0; edge_mask < 64; ++edge_mask) {
      GlobalProfile gp;
      for (BuyerId i = 1; i <= 3; ++i) gp.profiles[i].valuation = 1.0;
      for (int b = 0; b < 3; ++b) {
        if (seller_mask & (1 << b)) gp.seller_neighbors.insert(b + 1);
      }
      int bit = 0;
      for (BuyerId i = 1; i <= 3; ++i) {
        for (BuyerId j = 1; j <= 3; ++j) {
          if (i == j) continue;
          if (edge_mask & (1 << bit)) gp.profiles[i].neighbors.insert(j);
          ++bit;
        }
      }
      check_tree_against_oracle(build_profile_digraph(gp));
    }
  }
}

TEST_CASE("tree matches the brute-force oracle on random 15-node digraphs") {
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    auto gp = random_digraph_instance(15, 0.15, 10.0, rng);
    check_tree_against_oracle(build_profile_digraph(gp));
  }
}

TEST_CASE("tree construction is deterministic") {
  Rng rng(7);
  auto gp = random_digraph_instance(12, 0.2, 10.0, rng);
  auto g = build_profile_digraph(gp);
  CriticalTree t1 = build_critical_tree(g);
  CriticalTree t2 = build_critical_tree(g);
  CHECK(t1.parent == t2.parent);
  CHECK(t1.depth == t2.depth);
}
