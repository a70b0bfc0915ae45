#include <algorithm>

#include "wmctree/base_solvers.hpp"

namespace wmctree {

std::vector<VertexId> greedy_min_size_multicut(
    const RootedTree& tree, std::span<const TerminalPair> pairs) {
  // The deepest vertex whose subtree contains an uncut pair is that pair's
  // lca, so the scan works over pair lcas directly.
  struct Item {
    VertexId l;
    bool cut = false;
  };
  std::vector<Item> items;
  items.reserve(pairs.size());
  for (const auto& p : pairs) items.push_back({lca(tree, p.s, p.t)});

  std::vector<VertexId> result;
  while (true) {
    VertexId pick = kNoVertex;
    for (const auto& it : items) {
      if (it.cut) continue;
      if (pick == kNoVertex || tree.depth(it.l) > tree.depth(pick) ||
          (tree.depth(it.l) == tree.depth(pick) && it.l < pick))
        pick = it.l;
    }
    if (pick == kNoVertex) break;
    result.push_back(pick);
    // Every uncut pair with an endpoint below pick passes through it.
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].cut) continue;
      if (tree.is_ancestor(pick, pairs[i].s) ||
          tree.is_ancestor(pick, pairs[i].t))
        items[i].cut = true;
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace wmctree
