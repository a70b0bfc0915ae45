#pragma once

#include "wmctree/tree.hpp"

namespace wmctree {

// A disjoint union of paths over ambient vertex ids; each component lists its
// vertices in path order.
struct PathForest {
  std::vector<std::vector<VertexId>> components;

  // Builds the forest induced by `vertices` (sorted) in `tree`. Errors if a
  // component is not a path.
  static PathForest from_tree(const RootedTree& tree,
                              const std::vector<VertexId>& vertices);
  static PathForest whole_tree(const RootedTree& tree);
};

// Exact min-weight multicut on a disjoint union of paths (prefix DP).
// Every pair must have both endpoints in one component. Returns nothing when
// some pair admits no deletable hitter.
OptWitness path_multicut(const PathForest& forest,
                         std::span<const TerminalPair> pairs,
                         std::span<const Weight> weights);

// Minimum-cardinality multicut, ignoring weights: repeatedly picks the
// furthest vertex from the root whose subtree contains an uncut pair.
std::vector<VertexId> greedy_min_size_multicut(const RootedTree& tree,
                                               std::span<const TerminalPair> pairs);

// Exact size-capped min-weight multicut for instances whose pair paths all
// pass through `root` (checked; InputError otherwise). Deterministic
// branch-and-bound; the root itself may be deleted when its weight is finite.
OptWitness through_root_multicut(const RootedTree& tree,
                                 std::span<const TerminalPair> pairs,
                                 VertexId root,
                                 std::span<const Weight> weights,
                                 std::int64_t size_cap);

// Root-to-leaf legs of a star with "exactly one cut per leg" semantics.
// Positions index into a leg from the root outwards (0 = adjacent to root).
struct ArclessLeg {
  std::vector<VertexId> vertices;  // ambient ids, for witness reporting
  std::vector<Weight> weights;
};

// Satisfied when some side's leg is cut at a position <= its threshold.
// A side with leg < 0 is unavailable.
struct ArclessConstraint {
  int leg_a = -1;
  int pos_a = 0;
  int leg_b = -1;
  int pos_b = 0;
};

struct ArclessProblem {
  std::vector<ArclessLeg> legs;
  std::vector<ArclessConstraint> constraints;
};

struct ArclessResult {
  Weight weight = 0;
  std::vector<int> cut_positions;  // one per leg
};

// Picks exactly one deletable position on every leg, minimizing total weight
// subject to the constraints. Exact enumeration over breakpoint positions
// with pruning.
std::optional<ArclessResult> arcless_solve(const ArclessProblem& problem);

// Exact min-weight multicut on subdivided stars (at most one vertex of
// degree >= 3). Accepts forests whose components are subdivided stars; path
// components delegate to path_multicut.
OptWitness star_multicut(const RootedTree& tree,
                         std::span<const TerminalPair> pairs,
                         std::span<const Weight> weights);

// Same, restricted to the forest induced by `vertices` (sorted ascending).
OptWitness star_multicut_on(const RootedTree& tree,
                            const std::vector<VertexId>& vertices,
                            std::span<const TerminalPair> pairs,
                            std::span<const Weight> weights);

// Unconstrained min-weight multicut on arbitrary trees; the min-weight form
// of the leaves-parameterized branching solver (declared here because the
// light DP consumes it as a base engine). Implemented in solver_leaves.cpp.
OptWitness tree_multicut(const RootedTree& tree,
                         std::span<const TerminalPair> pairs,
                         std::span<const Weight> weights);

}  // namespace wmctree
