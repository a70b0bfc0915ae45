#pragma once

#include "wmctree/base_solvers.hpp"

namespace wmctree {

struct BranchStats {
  std::uint64_t node_count = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t case1 = 0;       // contraction branches taken
  std::uint64_t case2 = 0;       // weight-fold branches taken
  std::uint64_t base_cases = 0;
  std::uint64_t subroutine_calls = 0;  // through-root / star solves
};

// One node of the recorded branching tree, for DOT traces.
struct TraceNode {
  std::uint64_t id = 0;
  std::uint64_t parent = 0;  // == id at the root
  std::uint64_t measure = 0;
  std::string tag;
};

struct Trace {
  std::vector<TraceNode> nodes;
};

std::string trace_to_dot(const Trace& trace);

struct LeavesResult {
  OptWitness best;  // min weight and witness; absent when infeasible
  BranchStats stats;
};

// Min-weight multicut by branching on the two furthest branching vertices;
// measure |V>=3| + |V=1| drops along every branch and the node count stays
// within 2^(2*leaves+1).
LeavesResult solve_leaves(const RootedTree& tree,
                          std::span<const TerminalPair> pairs,
                          std::span<const Weight> weights,
                          Trace* trace = nullptr);

bool decision_leaves(const RootedTree& tree, std::span<const TerminalPair> pairs,
                     std::span<const Weight> weights, Weight budget_w);

}  // namespace wmctree
