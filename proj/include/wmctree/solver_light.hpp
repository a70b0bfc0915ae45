#pragma once

#include <map>

#include "wmctree/base_solvers.hpp"

namespace wmctree {

struct HeavyComponent {
  std::vector<VertexId> vertices;  // sorted
  std::size_t closed_neighborhood_leaves = 0;  // leaves of the tree induced
                                               // by the component plus its
                                               // neighbors
};

struct LightClassification {
  std::uint32_t d = 0;
  std::vector<std::size_t> paths_through;  // per vertex
  std::vector<bool> light;                 // paths_through[v] <= d
  std::vector<HeavyComponent> heavy_components;

  bool is_dq_light(std::uint32_t q) const {
    for (const auto& c : heavy_components)
      if (c.closed_neighborhood_leaves > q) return false;
    return true;
  }
  bool any_light() const {
    for (bool b : light)
      if (b) return true;
    return false;
  }
};

// Exact request-degree classification; independent of the rooting.
LightClassification classify_light(const RootedTree& tree,
                                   std::span<const TerminalPair> pairs,
                                   std::uint32_t d);

// Pair index with its orientation relative to a subtree: `inside` is the
// endpoint within the subtree.
struct OrientedPair {
  std::uint32_t pair = 0;
  VertexId inside = 0;
  VertexId outside = 0;
};

struct IOSets {
  // inside[v]: indices of pairs whose path lies in the subtree of v and
  // contains v (equivalently, pairs whose lca is v).
  std::vector<std::vector<std::uint32_t>> inside;
  // outgoing[v]: pairs with exactly one endpoint inside the subtree of v.
  std::vector<std::vector<OrientedPair>> outgoing;
};

IOSets compute_io(const RootedTree& tree, std::span<const TerminalPair> pairs);

struct LightStats {
  std::uint64_t table_entries = 0;
  std::uint64_t distribution_rounds = 0;
  std::uint64_t heavy_calls = 0;
  std::uint64_t base_solver_calls = 0;
  std::uint64_t max_vertex_distributions = 0;  // worst per-vertex total
  std::uint64_t max_heavy_distributions = 0;   // worst per heavy query
};

struct LightTableEntry {
  std::optional<Weight> weight;
  std::vector<VertexId> witness;  // ambient ids, sorted
};

// Bottom-up table solver over the d-light vertices; heavy components are
// answered through the leaves-parameterized engine. Correct on any instance;
// the classification only predicts cost.
class LightSolver {
 public:
  LightSolver(const RootedTree& tree, std::span<const TerminalPair> pairs,
              std::span<const Weight> weights, std::uint32_t d);

  bool has_light_vertex() const { return cls_.any_light(); }
  void fill();  // requires has_light_vertex()

  const RootedTree& rooted() const { return tree_; }
  const std::vector<TerminalPair>& pairs() const { return pairs_; }
  const LightClassification& classification() const { return cls_; }
  const IOSets& io() const { return io_; }
  const LightStats& stats() const { return stats_; }

  // Table access; `mask` selects a subset of io().outgoing[v] by position.
  const LightTableEntry& tab(VertexId v, std::uint64_t mask) const;
  const LightTableEntry& root_answer() const;

  // The heavy-child subroutine, also exposed for contract tests: minimum
  // weight subset of the subtree of heavy `u` that multicuts the pairs
  // inside it and hits the paths of the given O[u] pairs (by index).
  const LightTableEntry& heavy_query(VertexId u,
                                     std::vector<std::uint32_t> q_pairs);

 private:
  struct VertexTable {
    bool filled = false;
    std::vector<LightTableEntry> by_mask;
  };

  void update_leaf(VertexId v);
  void update_internal(VertexId v);
  LightTableEntry star_dispatch(VertexId child,
                                const std::vector<std::uint32_t>& q_pairs);

  RootedTree tree_;
  std::vector<TerminalPair> pairs_;
  std::vector<Weight> weights_;
  std::uint32_t d_ = 0;
  LightClassification cls_;
  IOSets io_;
  std::vector<std::int32_t> component_of_;  // heavy vertex -> component index
  std::vector<VertexTable> tables_;
  std::map<std::pair<VertexId, std::vector<std::uint32_t>>, LightTableEntry>
      heavy_memo_;
  LightStats stats_;
  bool filled_ = false;
};

struct LightResult {
  std::optional<bool> decision;  // present when a budget was supplied
  OptWitness best;
  LightStats stats;
};

// Full solve: runs the table DP rooted at the smallest-id d-light vertex, or
// falls back to the leaves-parameterized solver when no vertex is d-light.
LightResult solve_light(const RootedTree& tree,
                        std::span<const TerminalPair> pairs,
                        std::span<const Weight> weights, std::uint32_t d,
                        std::optional<Weight> budget_w = std::nullopt);

}  // namespace wmctree
