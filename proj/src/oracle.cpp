#include "wmctree/oracle.hpp"

#include <algorithm>
#include <bit>

namespace wmctree {
namespace {

// Lexicographic order on the sorted id sequences encoded by two bitmasks over
// `universe` (ascending ids).
bool lex_smaller(std::uint64_t a, std::uint64_t b) {
  while (true) {
    if (a == 0) return b != 0;  // proper prefix
    if (b == 0) return false;
    std::uint64_t la = a & (~a + 1), lb = b & (~b + 1);
    if (la != lb) return la < lb;
    a ^= la;
    b ^= lb;
  }
}

}  // namespace

OptWitness brute_min_multicut(const RootedTree& tree,
                              std::span<const TerminalPair> pairs,
                              std::span<const Weight> weights,
                              std::optional<std::int64_t> size_cap,
                              const OracleConfig& cfg) {
  if (tree.n() > cfg.max_n)
    throw CapacityError("oracle: n exceeds configured cap");
  WMC_ASSERT(weights.size() == tree.n(), "weight map size mismatch");
  if (size_cap && *size_cap < 0) return std::nullopt;

  // Universe: deletable vertices on at least one pair path.
  std::vector<bool> useful(tree.n(), false);
  std::vector<std::vector<VertexId>> paths;
  paths.reserve(pairs.size());
  for (const auto& p : pairs) {
    paths.push_back(path_between(tree, p.s, p.t));
    for (VertexId v : paths.back())
      if (is_deletable(weights[v])) useful[v] = true;
  }
  std::vector<VertexId> universe;
  for (VertexId v = 0; v < tree.n(); ++v)
    if (useful[v]) universe.push_back(v);
  const std::size_t m = universe.size();
  WMC_ASSERT(m <= 63, "oracle universe too large for mask enumeration");

  std::vector<std::uint32_t> index(tree.n(), 0);
  for (std::size_t i = 0; i < m; ++i) index[universe[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::uint64_t> path_masks;
  path_masks.reserve(paths.size());
  for (const auto& path : paths) {
    std::uint64_t mask = 0;
    for (VertexId v : path)
      if (useful[v]) mask |= std::uint64_t{1} << index[v];
    if (mask == 0) return std::nullopt;  // a pair with no deletable hitter
    path_masks.push_back(mask);
  }

  bool found = false;
  Weight best_w = 0;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (size_cap && std::popcount(mask) > *size_cap) continue;
    bool feasible = true;
    for (std::uint64_t pm : path_masks) {
      if ((pm & mask) == 0) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    Weight w = 0;
    for (std::uint64_t rest = mask; rest;) {
      std::uint64_t low = rest & (~rest + 1);
      w = add_weight(w, weights[universe[std::countr_zero(low)]]);
      rest ^= low;
    }
    if (!found || w < best_w || (w == best_w && lex_smaller(mask, best_mask))) {
      found = true;
      best_w = w;
      best_mask = mask;
    }
  }
  if (!found) return std::nullopt;
  Witness wit;
  wit.weight = best_w;
  for (std::uint64_t rest = best_mask; rest;) {
    std::uint64_t low = rest & (~rest + 1);
    wit.vertices.push_back(universe[std::countr_zero(low)]);
    rest ^= low;
  }
  return wit;
}

VertexCoverResult brute_vertex_cover(
    std::uint32_t n, std::span<const std::pair<VertexId, VertexId>> edges,
    const OracleConfig& cfg) {
  if (n > cfg.max_n) throw CapacityError("oracle: n exceeds configured cap");
  for (auto [u, v] : edges)
    if (u >= n || v >= n) throw InputError("bad vertex id in edge");

  bool found = false;
  std::size_t best_size = 0;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool covers = true;
    for (auto [u, v] : edges) {
      if (((mask >> u) & 1) == 0 && ((mask >> v) & 1) == 0) {
        covers = false;
        break;
      }
    }
    if (!covers) continue;
    std::size_t sz = static_cast<std::size_t>(std::popcount(mask));
    if (!found || sz < best_size ||
        (sz == best_size && lex_smaller(mask, best_mask))) {
      found = true;
      best_size = sz;
      best_mask = mask;
    }
  }
  WMC_ASSERT(found, "full vertex set always covers");
  VertexCoverResult res;
  res.size = best_size;
  for (VertexId v = 0; v < n; ++v)
    if ((best_mask >> v) & 1) res.vertices.push_back(v);
  return res;
}

std::optional<Weight> brute_tab_entry(const RootedTree& tree,
                                      std::span<const TerminalPair> pairs,
                                      std::span<const Weight> weights,
                                      VertexId v,
                                      std::span<const TerminalPair> out_pairs,
                                      const OracleConfig& cfg) {
  tree.check_vertex(v);
  const std::vector<VertexId> sub = subtree_vertices(tree, v);
  if (sub.size() > cfg.max_n)
    throw CapacityError("oracle: subtree exceeds configured cap");

  auto in_sub = [&](VertexId u) {
    return std::binary_search(sub.begin(), sub.end(), u);
  };

  // Paths to hit, clipped to T_v. Inside pairs must be fully coverable; an
  // O-pair only needs its T_v portion hit.
  std::vector<std::vector<VertexId>> need;
  for (const auto& p : pairs) {
    if (!in_sub(p.s) || !in_sub(p.t)) continue;
    need.push_back(path_between(tree, p.s, p.t));
  }
  for (const auto& p : out_pairs) {
    std::vector<VertexId> clipped;
    for (VertexId u : path_between(tree, p.s, p.t))
      if (in_sub(u)) clipped.push_back(u);
    if (clipped.empty()) return std::nullopt;  // nothing in T_v can hit it
    need.push_back(std::move(clipped));
  }

  std::vector<VertexId> universe;
  {
    std::vector<bool> useful(tree.n(), false);
    for (const auto& path : need)
      for (VertexId u : path)
        if (is_deletable(weights[u])) useful[u] = true;
    for (VertexId u : sub)
      if (useful[u]) universe.push_back(u);
  }
  const std::size_t m = universe.size();
  WMC_ASSERT(m <= 63, "oracle universe too large for mask enumeration");
  std::vector<std::uint32_t> index(tree.n(), 0);
  for (std::size_t i = 0; i < m; ++i) index[universe[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::uint64_t> masks;
  for (const auto& path : need) {
    std::uint64_t mask = 0;
    for (VertexId u : path)
      if (is_deletable(weights[u]) && in_sub(u)) mask |= std::uint64_t{1} << index[u];
    if (mask == 0) return std::nullopt;
    masks.push_back(mask);
  }

  std::optional<Weight> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    bool feasible = true;
    for (std::uint64_t pm : masks) {
      if ((pm & mask) == 0) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    Weight w = 0;
    for (std::uint64_t rest = mask; rest;) {
      std::uint64_t low = rest & (~rest + 1);
      w = add_weight(w, weights[universe[std::countr_zero(low)]]);
      rest ^= low;
    }
    if (!best || w < *best) best = w;
  }
  return best;
}

}  // namespace wmctree
