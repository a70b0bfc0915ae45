#include <algorithm>
#include <unordered_map>

#include "wmctree/base_solvers.hpp"

namespace wmctree {

PathForest PathForest::whole_tree(const RootedTree& tree) {
  std::vector<VertexId> all(tree.n());
  for (VertexId v = 0; v < tree.n(); ++v) all[v] = v;
  return from_tree(tree, all);
}

PathForest PathForest::from_tree(const RootedTree& tree,
                                 const std::vector<VertexId>& vertices) {
  auto in = [&](VertexId v) {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  };
  // Induced adjacency, then walk each component from an endpoint.
  std::unordered_map<VertexId, std::vector<VertexId>> adj;
  adj.reserve(vertices.size());
  for (VertexId v : vertices) adj[v];
  for (VertexId v : vertices) {
    VertexId p = tree.parent(v);
    if (p != kNoVertex && in(p)) {
      adj[v].push_back(p);
      adj[p].push_back(v);
    }
  }
  PathForest forest;
  std::unordered_map<VertexId, bool> seen;
  for (VertexId v : vertices) {
    auto& nb = adj[v];
    if (nb.size() > 2) throw InputError("path forest: component is not a path");
    std::sort(nb.begin(), nb.end());
  }
  for (VertexId v : vertices) {
    if (seen[v] || adj[v].size() == 2) continue;  // start only at endpoints
    std::vector<VertexId> comp;
    VertexId prev = kNoVertex, cur = v;
    while (true) {
      seen[cur] = true;
      comp.push_back(cur);
      VertexId next = kNoVertex;
      for (VertexId w : adj[cur])
        if (w != prev) next = w;
      if (next == kNoVertex) break;
      prev = cur;
      cur = next;
    }
    forest.components.push_back(std::move(comp));
  }
  for (VertexId v : vertices)
    if (!seen[v]) throw InputError("path forest: component contains a cycle");
  return forest;
}

OptWitness path_multicut(const PathForest& forest,
                         std::span<const TerminalPair> pairs,
                         std::span<const Weight> weights) {
  // Position of every vertex: (component, 1-based index).
  std::unordered_map<VertexId, std::pair<std::uint32_t, std::uint32_t>> pos;
  for (std::uint32_t c = 0; c < forest.components.size(); ++c)
    for (std::uint32_t i = 0; i < forest.components[c].size(); ++i)
      pos[forest.components[c][i]] = {c, i + 1};

  // Pair intervals per component.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> intervals(
      forest.components.size());
  for (const auto& p : pairs) {
    auto is = pos.find(p.s), it = pos.find(p.t);
    if (is == pos.end() || it == pos.end())
      throw InputError("path multicut: pair endpoint outside the forest");
    if (is->second.first != it->second.first)
      throw InputError("path multicut: pair spans two components");
    auto [a, b] = std::minmax(is->second.second, it->second.second);
    intervals[is->second.first].emplace_back(a, b);
  }

  Witness total;
  for (std::uint32_t c = 0; c < forest.components.size(); ++c) {
    const auto& verts = forest.components[c];
    const std::uint32_t m = static_cast<std::uint32_t>(verts.size());
    // last_start[i] = largest interval start among intervals ending at <= i,
    // i.e. the window the next cut must fall into.
    std::vector<std::uint32_t> max_start_at(m + 1, 0);
    for (auto [a, b] : intervals[c])
      max_start_at[b] = std::max(max_start_at[b], a);
    std::vector<Weight> best(m + 1, 0);
    std::vector<std::uint32_t> back(m + 1, 0);  // chosen cut index, 0 = none
    std::uint32_t window = 0;
    for (std::uint32_t i = 1; i <= m; ++i) {
      window = std::max(window, max_start_at[i]);
      if (window == 0) {
        best[i] = 0;
        continue;
      }
      Weight b = kUndeletable;
      std::uint32_t arg = 0;
      for (std::uint32_t j = window; j <= i; ++j) {
        Weight wj = weights[verts[j - 1]];
        if (!is_deletable(wj) || best[j - 1] == kUndeletable) continue;
        Weight cand = add_weight(wj, best[j - 1]);
        if (cand < b) {
          b = cand;
          arg = j;
        }
      }
      best[i] = b;
      back[i] = arg;
    }
    if (best[m] == kUndeletable) return std::nullopt;
    total.weight = add_weight(total.weight, best[m]);
    // back[i] == 0 exactly when no interval ends inside the prefix, so the
    // chain below walks every chosen cut.
    for (std::uint32_t i = m; i >= 1 && back[i] != 0;) {
      std::uint32_t j = back[i];
      total.vertices.push_back(verts[j - 1]);
      i = j - 1;
    }
  }
  std::sort(total.vertices.begin(), total.vertices.end());
  return total;
}

}  // namespace wmctree
