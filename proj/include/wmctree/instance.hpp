#pragma once

#include "wmctree/tree.hpp"

namespace wmctree {

// A full problem instance. Pairs are deduplicated and orientation-normalized
// at construction; everything is immutable afterwards and safe to share
// across concurrent solver runs.
struct Instance {
  RootedTree tree;
  std::vector<TerminalPair> pairs;
  std::vector<Weight> weights;
  std::optional<Weight> budget_w;
  std::optional<std::int64_t> budget_k;

  static Instance make(RootedTree tree, std::vector<TerminalPair> pairs,
                       std::vector<Weight> weights,
                       std::optional<Weight> budget_w = std::nullopt,
                       std::optional<std::int64_t> budget_k = std::nullopt);

  std::uint32_t n() const { return tree.n(); }
};

struct VerifyResult {
  bool ok = true;
  std::string violation;                      // empty when ok
  std::optional<TerminalPair> violated_pair;  // first uncut pair, if any
};

// Checks that S hits every pair path, contains no undeletable vertex, and
// respects whichever budgets the instance carries.
VerifyResult verify_solution(const Instance& inst, const Solution& sol);

Solution solution_from(const Instance& inst, std::vector<VertexId> vertices);

}  // namespace wmctree
