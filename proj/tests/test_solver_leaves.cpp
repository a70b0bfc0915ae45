#include "doctest.h"
#include "helpers.hpp"
#include "wmctree/solver_leaves.hpp"

using namespace wmctree;
using namespace wmctree::test;

TEST_CASE("solve_leaves base delegation") {
  auto path = line(3);
  std::vector<Weight> wt{5, 1, 7};
  std::vector<TerminalPair> pairs{{0, 2}};
  auto res = solve_leaves(path, pairs, wt);
  REQUIRE(res.best);
  CHECK(res.best->weight == 1);
  CHECK(res.stats.node_count == 1);

  Instance st = gen_random(12, 6, 20, 5, GenShape::kStarish);
  auto sres = solve_leaves(st.tree, st.pairs, st.weights);
  auto expect = oracle(st);
  CHECK(same_value(sres.best, expect));
}

TEST_CASE("solve_leaves equals the oracle on random trees") {
  for (int trial = 0; trial < 1000; ++trial) {
    Instance inst = random_instance(100 + trial, 14, 10, 30);
    auto res = solve_leaves(inst.tree, inst.pairs, inst.weights);
    auto expect = oracle(inst);
    CHECK(same_value(res.best, expect));
    if (res.best) {
      CHECK(res.best->weight == expect->weight);
      CHECK(witness_ok(inst, *res.best));
    }
    const std::uint64_t leaves = degree_classes(inst.tree).leaves.size();
    if (2 * leaves + 1 < 64)
      CHECK(res.stats.node_count <= (std::uint64_t{1} << (2 * leaves + 1)));
  }
}

TEST_CASE("solve_leaves handles forced and impossible self-pairs") {
  // self-pair on a branching vertex: every solution contains it
  std::vector<std::pair<VertexId, VertexId>> edges{
      {0, 1}, {1, 2}, {1, 3}, {0, 4}, {4, 5}, {4, 6}};
  auto t = RootedTree::from_edges(7, edges, 0);
  std::vector<Weight> wt{1, 50, 2, 2, 50, 2, 2};
  std::vector<TerminalPair> pairs{{1, 1}, {5, 6}};
  auto res = solve_leaves(t, pairs, wt);
  Instance inst = Instance::make(t, pairs, wt);
  auto expect = oracle(inst);
  REQUIRE(res.best);
  REQUIRE(expect);
  CHECK(res.best->weight == expect->weight);
  CHECK(witness_ok(inst, *res.best));

  std::vector<Weight> blocked = wt;
  blocked[1] = kUndeletable;
  CHECK(!solve_leaves(t, pairs, blocked).best);
}

TEST_CASE("decision_leaves brackets the optimum") {
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = random_instance(5500 + trial, 14, 8, 25);
    auto expect = oracle(inst);
    if (!expect) {
      CHECK(!decision_leaves(inst.tree, inst.pairs, inst.weights, 1u << 20));
      continue;
    }
    CHECK(decision_leaves(inst.tree, inst.pairs, inst.weights, expect->weight));
    if (expect->weight > 0)
      CHECK(!decision_leaves(inst.tree, inst.pairs, inst.weights,
                             expect->weight - 1));
  }
}

TEST_CASE("contraction branch agrees with the path-avoiding oracle") {
  // Branch soundness, sampled: solving after contracting the branch path
  // equals brute force restricted to solutions avoiding that path.
  int done = 0;
  for (std::uint64_t seed = 0; done < 60; ++seed) {
    Instance inst = random_instance(8800 + seed, 12, 6, 20);
    auto dc = degree_classes(inst.tree);
    if (dc.branching.size() < 2) continue;
    ++done;
    RootedTree rooted = reroot(inst.tree, dc.leaves.front());
    VertexId x = kNoVertex;
    for (VertexId v : dc.branching)
      if (x == kNoVertex || rooted.depth(v) > rooted.depth(x) ||
          (rooted.depth(v) == rooted.depth(x) && v < x))
        x = v;
    VertexId y = rooted.parent(x);
    while (y != kNoVertex && rooted.degree(y) < 3) y = rooted.parent(y);
    REQUIRE(y != kNoVertex);

    auto c = contract_path(rooted, inst.pairs, inst.weights, y, x);
    auto contracted = solve_leaves(c.tree, c.pairs, c.weights);

    Instance blocked = inst;
    for (VertexId v : path_between(rooted, y, x))
      blocked.weights[v] = kUndeletable;
    auto avoiding = oracle(blocked);
    CHECK(same_value(contracted.best, avoiding));
  }
}

TEST_CASE("trace records one node per branch state") {
  Instance inst = random_instance(42, 14, 8, 20, 0);
  Trace trace;
  auto res = solve_leaves(inst.tree, inst.pairs, inst.weights, &trace);
  CHECK(trace.nodes.size() == res.stats.node_count);
  auto dot = trace_to_dot(trace);
  CHECK(dot.find("digraph") != std::string::npos);
}
