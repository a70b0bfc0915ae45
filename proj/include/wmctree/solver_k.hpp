#pragma once

#include "wmctree/instance.hpp"
#include "wmctree/solver_leaves.hpp"

namespace wmctree {

struct KResult {
  bool yes = false;
  std::optional<Solution> witness;  // valid in the instance's vertex ids
  BranchStats stats;
};

// Decides whether a multicut of size <= budget_k and weight <= budget_w
// exists, by branching over an lca-closed minimum-size multicut X. Requires
// both budgets on the instance. The branch tree stays within
// (k+2)^(2k+1) nodes and the measure |X| strictly drops along every edge.
KResult solve_k(const Instance& inst, Trace* trace = nullptr);

}  // namespace wmctree
