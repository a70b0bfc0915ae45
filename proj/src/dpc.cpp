#include <algorithm>
#include <bit>
#include <unordered_map>

#include "wmctree/base_solvers.hpp"

namespace wmctree {
namespace {

// Pair sets are tracked as dynamic bitsets so instances with more than 64
// pairs still memoize correctly.
struct Mask {
  std::vector<std::uint64_t> words;

  bool operator==(const Mask&) const = default;
  bool any() const {
    for (auto w : words)
      if (w) return true;
    return false;
  }
  void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const {
    return (words[i / 64] >> (i % 64)) & 1;
  }
  Mask minus(const Mask& o) const {
    Mask r = *this;
    for (std::size_t i = 0; i < words.size(); ++i) r.words[i] &= ~o.words[i];
    return r;
  }
  Mask intersect(const Mask& o) const {
    Mask r = *this;
    for (std::size_t i = 0; i < words.size(); ++i) r.words[i] &= o.words[i];
    return r;
  }
};

struct MaskKey {
  Mask mask;
  std::int64_t budget;
  bool operator==(const MaskKey&) const = default;
};

struct MaskKeyHash {
  std::size_t operator()(const MaskKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.budget) * 0x9e3779b97f4a7c15ull;
    for (auto w : k.mask.words) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }
};

struct Solver {
  const RootedTree& tree;
  std::span<const Weight> weights;
  std::vector<std::vector<VertexId>> paths;        // per pair
  std::vector<std::vector<std::uint32_t>> on_path;  // pair -> candidate indices
  std::vector<VertexId> candidates;                 // deletable, on some path
  std::vector<Mask> cuts;                           // candidate -> pairs hit
  std::size_t n_pairs;

  struct Entry {
    bool feasible = false;
    Weight weight = 0;
    std::uint32_t chosen = 0;  // candidate index
  };
  std::unordered_map<MaskKey, Entry, MaskKeyHash> memo;

  // Lower bound: greedily collect pairwise vertex-disjoint uncut paths; each
  // needs its own deletion.
  std::int64_t disjoint_lower_bound(const Mask& mask) const {
    std::vector<bool> used(tree.n(), false);
    std::int64_t cnt = 0;
    for (std::size_t p = 0; p < n_pairs; ++p) {
      if (!mask.test(p)) continue;
      bool free = true;
      for (VertexId v : paths[p])
        if (used[v]) {
          free = false;
          break;
        }
      if (!free) continue;
      ++cnt;
      for (VertexId v : paths[p]) used[v] = true;
    }
    return cnt;
  }

  Entry solve(const Mask& mask, std::int64_t budget) {
    if (!mask.any()) return {true, 0, 0};
    if (budget <= 0) return {};
    MaskKey key{mask, budget};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Entry best;
    if (disjoint_lower_bound(mask) <= budget) {
      // Branch over the candidates of the uncut pair with the fewest
      // distinct cut signatures; dominated candidates are dropped.
      std::size_t branch_width = static_cast<std::size_t>(-1);
      std::vector<std::uint32_t> branch_set;
      for (std::size_t p = 0; p < n_pairs; ++p) {
        if (!mask.test(p)) continue;
        auto reduced = reduce_candidates(on_path[p], mask);
        if (reduced.size() < branch_width) {
          branch_width = reduced.size();
          branch_set = std::move(reduced);
        }
      }
      for (std::uint32_t ci : branch_set) {
        Entry sub = solve(mask.minus(cuts[ci].intersect(mask)), budget - 1);
        if (!sub.feasible) continue;
        Weight w = add_weight(weights[candidates[ci]], sub.weight);
        if (!best.feasible || w < best.weight) {
          best.feasible = true;
          best.weight = w;
          best.chosen = ci;
        }
      }
    }
    memo.emplace(std::move(key), best);
    return best;
  }

  // Among candidates on one path, keep per distinct remaining-cut signature
  // the cheapest (then smallest-id) vertex.
  std::vector<std::uint32_t> reduce_candidates(
      const std::vector<std::uint32_t>& cand, const Mask& mask) const {
    std::vector<std::pair<Mask, std::uint32_t>> chosen;
    for (std::uint32_t ci : cand) {
      Mask sig = cuts[ci].intersect(mask);
      bool merged = false;
      for (auto& [m, best] : chosen) {
        if (m == sig) {
          if (weights[candidates[ci]] < weights[candidates[best]] ||
              (weights[candidates[ci]] == weights[candidates[best]] &&
               candidates[ci] < candidates[best]))
            best = ci;
          merged = true;
          break;
        }
      }
      if (!merged) chosen.emplace_back(std::move(sig), ci);
    }
    std::vector<std::uint32_t> out;
    out.reserve(chosen.size());
    for (auto& [m, ci] : chosen) out.push_back(ci);
    std::sort(out.begin(), out.end());
    return out;
  }

  void collect(const Mask& mask, std::int64_t budget,
               std::vector<VertexId>& out) const {
    Mask cur = mask;
    std::int64_t b = budget;
    while (cur.any()) {
      auto it = memo.find(MaskKey{cur, b});
      WMC_ASSERT(it != memo.end() && it->second.feasible,
                 "witness walk left the memo");
      std::uint32_t ci = it->second.chosen;
      out.push_back(candidates[ci]);
      cur = cur.minus(cuts[ci].intersect(cur));
      --b;
    }
  }
};

}  // namespace

OptWitness through_root_multicut(const RootedTree& tree,
                                 std::span<const TerminalPair> pairs,
                                 VertexId root,
                                 std::span<const Weight> weights,
                                 std::int64_t size_cap) {
  if (pairs.empty()) return Witness{};  // stated base case: weight 0
  tree.check_vertex(root);
  WMC_ASSERT(weights.size() == tree.n(), "weight map size mismatch");
  for (const auto& p : pairs)
    if (!on_path(tree, root, p.s, p.t))
      throw InputError("through-root multicut: a pair path misses the root");
  if (size_cap < 0) return std::nullopt;

  Solver s{tree, weights, {}, {}, {}, {}, 0, {}};
  s.n_pairs = pairs.size();
  std::vector<bool> useful(tree.n(), false);
  for (const auto& p : pairs) {
    s.paths.push_back(path_between(tree, p.s, p.t));
    for (VertexId v : s.paths.back())
      if (is_deletable(weights[v])) useful[v] = true;
  }
  std::vector<std::uint32_t> index(tree.n(), 0);
  for (VertexId v = 0; v < tree.n(); ++v) {
    if (!useful[v]) continue;
    index[v] = static_cast<std::uint32_t>(s.candidates.size());
    s.candidates.push_back(v);
  }
  const std::size_t words = (pairs.size() + 63) / 64;
  s.cuts.assign(s.candidates.size(), Mask{std::vector<std::uint64_t>(words, 0)});
  s.on_path.assign(pairs.size(), {});
  Mask all{std::vector<std::uint64_t>(words, 0)};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    all.set(p);
    bool cuttable = false;
    for (VertexId v : s.paths[p]) {
      if (!useful[v]) continue;
      cuttable = true;
      s.cuts[index[v]].set(p);
      s.on_path[p].push_back(index[v]);
    }
    if (!cuttable) return std::nullopt;
  }

  auto entry = s.solve(all, size_cap);
  if (!entry.feasible) return std::nullopt;
  Witness wit;
  wit.weight = entry.weight;
  s.collect(all, size_cap, wit.vertices);
  std::sort(wit.vertices.begin(), wit.vertices.end());
  return wit;
}

}  // namespace wmctree
