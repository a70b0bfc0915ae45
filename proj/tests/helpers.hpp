#pragma once

#include <random>

#include "wmctree/instance.hpp"
#include "wmctree/io.hpp"
#include "wmctree/oracle.hpp"

namespace wmctree::test {

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

inline RootedTree line(std::uint32_t n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return RootedTree::from_edges(n, edges, 0);
}

inline RootedTree star(std::uint32_t leaves) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return RootedTree::from_edges(leaves + 1, edges, 0);
}

// Random instance mixing shapes, self-pairs and a sprinkle of undeletable
// vertices; deterministic per seed.
inline Instance random_instance(std::uint64_t seed, std::uint32_t max_n,
                                std::uint32_t max_pairs, Weight weight_max,
                                std::uint32_t undeletable_pct = 10) {
  std::mt19937_64 rng(seed);
  const std::uint32_t n = 1 + static_cast<std::uint32_t>(below(rng, max_n));
  const std::uint32_t m = static_cast<std::uint32_t>(below(rng, max_pairs + 1));
  const GenShape shapes[] = {GenShape::kUniform, GenShape::kUniform,
                             GenShape::kCaterpillar, GenShape::kStarish,
                             GenShape::kPath};
  Instance inst = gen_random(n, m, weight_max, rng(),
                             shapes[below(rng, std::size(shapes))]);
  for (VertexId v = 0; v < n; ++v)
    if (below(rng, 100) < undeletable_pct) inst.weights[v] = kUndeletable;
  return inst;
}

inline OptWitness oracle(const Instance& inst,
                         std::optional<std::int64_t> cap = std::nullopt) {
  return brute_min_multicut(inst.tree, inst.pairs, inst.weights, cap);
}

inline bool same_value(const OptWitness& a, const OptWitness& b) {
  if (!a || !b) return !a && !b;
  return a->weight == b->weight;
}

// Checks a claimed witness against an instance without budget constraints.
inline bool witness_ok(const Instance& inst, const Witness& w) {
  Instance unbudgeted = inst;
  unbudgeted.budget_w = std::nullopt;
  unbudgeted.budget_k = std::nullopt;
  Solution sol = solution_from(unbudgeted, w.vertices);
  if (sol.total_weight != w.weight) return false;
  return verify_solution(unbudgeted, sol).ok;
}

}  // namespace wmctree::test
