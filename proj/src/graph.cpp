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

#include "dpdm/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace dpdm {

namespace {
const std::vector<BuyerId> kNoSuccessors;
}

const std::vector<BuyerId>& ProfileDigraph::successors(BuyerId i) const {
  auto it = adj.find(i);
  return it == adj.end() ? kNoSuccessors : it->second;
}

const std::vector<BuyerId>& CriticalTree::children_of(BuyerId i) const {
  auto it = children.find(i);
  return it == children.end() ? kNoSuccessors : it->second;
}

ProfileDigraph build_profile_digraph(const GlobalProfile& reports) {
  for (const auto& [id, profile] : reports.profiles) {
    if (id == kSeller) {
      throw std::invalid_argument("id 0 is reserved for the seller");
    }
    if (profile.valuation < 0.0) {
      throw std::invalid_argument("negative valuation for buyer " +
                                  std::to_string(id));
    }
  }

  ProfileDigraph g;
  g.nodes.insert(kSeller);
  for (const auto& [id, profile] : reports.profiles) g.nodes.insert(id);

  auto add_edges = [&](BuyerId from, const std::set<BuyerId>& claimed) {
    for (BuyerId to : claimed) {
      if (to == from) continue;  // self-loop
      if (to == kSeller) continue;  // knowing the seller adds no edge
      if (!reports.profiles.count(to)) {
        g.warnings.push_back("edge " + std::to_string(from) + "->" +
                             std::to_string(to) +
                             " dropped: no profile for target");
        continue;
      }
      auto& out = g.adj[from];
      if (std::find(out.begin(), out.end(), to) == out.end()) {
        out.push_back(to);
      }
    }
  };

  add_edges(kSeller, reports.seller_neighbors);
  for (const auto& [id, profile] : reports.profiles) {
    add_edges(id, profile.neighbors);
  }
  for (auto& [id, out] : g.adj) std::sort(out.begin(), out.end());
  return g;
}

std::set<BuyerId> reachable_from_seller(const ProfileDigraph& g) {
  std::set<BuyerId> seen;
  std::deque<BuyerId> queue{kSeller};
  std::set<BuyerId> visited{kSeller};
  while (!queue.empty()) {
    BuyerId u = queue.front();
    queue.pop_front();
    for (BuyerId v : g.successors(u)) {
      if (visited.insert(v).second) {
        seen.insert(v);
        queue.push_back(v);
      }
    }
  }
  return seen;
}

bool is_critical(const ProfileDigraph& g, BuyerId i, BuyerId j) {
  if (i == j) return true;
  std::set<BuyerId> visited{kSeller};
  std::deque<BuyerId> queue;
  if (i != kSeller) queue.push_back(kSeller);
  while (!queue.empty()) {
    BuyerId u = queue.front();
    queue.pop_front();
    for (BuyerId v : g.successors(u)) {
      if (v == i) continue;
      if (v == j) return false;
      if (visited.insert(v).second) queue.push_back(v);
    }
  }
  return true;
}

// Iterative data-flow dominator computation over reverse post-order
// (Cooper/Harvey/Kennedy). Adequate at the graph sizes this library
// targets.
CriticalTree build_critical_tree(const ProfileDigraph& g) {
  CriticalTree tree;
  tree.reachable = reachable_from_seller(g);
  if (tree.reachable.empty()) {
    tree.depth[kSeller] = 0;
    return tree;
  }

  // Post-order DFS restricted to reachable nodes.
  std::vector<BuyerId> post;
  std::map<BuyerId, std::size_t> post_index;
  {
    std::set<BuyerId> visited;
    std::vector<std::pair<BuyerId, std::size_t>> stack{{kSeller, 0}};
    visited.insert(kSeller);
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      const auto& succ = g.successors(u);
      if (next < succ.size()) {
        BuyerId v = succ[next++];
        if (visited.insert(v).second) stack.push_back({v, 0});
      } else {
        post.push_back(u);
        stack.pop_back();
      }
    }
    for (std::size_t k = 0; k < post.size(); ++k) post_index[post[k]] = k;
  }

  std::map<BuyerId, std::vector<BuyerId>> preds;
  for (const auto& [u, out] : g.adj) {
    if (u != kSeller && !tree.reachable.count(u)) continue;
    for (BuyerId v : out) {
      if (tree.reachable.count(v)) preds[v].push_back(u);
    }
  }

  std::map<BuyerId, BuyerId> idom;
  idom[kSeller] = kSeller;
  auto intersect = [&](BuyerId a, BuyerId b) {
    while (a != b) {
      while (post_index[a] < post_index[b]) a = idom[a];
      while (post_index[b] < post_index[a]) b = idom[b];
    }
    return a;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = post.rbegin(); it != post.rend(); ++it) {
      BuyerId u = *it;
      if (u == kSeller) continue;
      BuyerId new_idom = -1;
      for (BuyerId p : preds[u]) {
        if (!idom.count(p)) continue;
        new_idom = new_idom < 0 ? p : intersect(p, new_idom);
      }
      if (new_idom >= 0 &&
          (!idom.count(u) || idom[u] != new_idom)) {
        idom[u] = new_idom;
        changed = true;
      }
    }
  }

  for (BuyerId j : tree.reachable) {
    tree.parent[j] = idom[j];
    tree.children[idom[j]].push_back(j);
  }
  for (auto& [id, kids] : tree.children) std::sort(kids.begin(), kids.end());

  tree.depth[kSeller] = 0;
  std::deque<BuyerId> queue{kSeller};
  while (!queue.empty()) {
    BuyerId u = queue.front();
    queue.pop_front();
    for (BuyerId v : tree.children_of(u)) {
      tree.depth[v] = tree.depth[u] + 1;
      tree.d_max = std::max(tree.d_max, tree.depth[v]);
      queue.push_back(v);
    }
  }
  return tree;
}

}  // namespace dpdm
