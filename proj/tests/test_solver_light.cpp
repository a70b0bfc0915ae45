#include "doctest.h"
#include "helpers.hpp"
#include "wmctree/solver_leaves.hpp"
#include "wmctree/solver_light.hpp"

using namespace wmctree;
using namespace wmctree::test;

namespace {

std::size_t max_request_degree(const Instance& inst) {
  auto cls = classify_light(inst.tree, inst.pairs, 0);
  std::size_t best = 0;
  for (auto c : cls.paths_through) best = std::max(best, c);
  return best;
}

}  // namespace

TEST_CASE("classify_light basics") {
  Instance empty = Instance::make(line(6), {}, std::vector<Weight>(6, 1));
  auto cls = classify_light(empty.tree, empty.pairs, 0);
  for (VertexId v = 0; v < 6; ++v) CHECK(cls.light[v]);
  CHECK(cls.heavy_components.empty());

  // d+1 = 3 pairs through the star center make it 2-heavy
  auto st = star(4);
  std::vector<TerminalPair> pairs{{1, 2}, {2, 3}, {3, 4}};
  auto cls2 = classify_light(st, pairs, 2);
  CHECK(!cls2.light[0]);
  REQUIRE(cls2.heavy_components.size() == 1);
  CHECK(cls2.heavy_components[0].vertices == std::vector<VertexId>{0});
  CHECK(cls2.heavy_components[0].closed_neighborhood_leaves == 4);
}

TEST_CASE("classify_light reports component leaf counts") {
  // central heavy component whose closed neighborhood has six leaves:
  // spine 0-1-2 with two extra legs per spine vertex
  std::vector<std::pair<VertexId, VertexId>> edges{
      {0, 1}, {1, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}, {2, 7}, {2, 8}};
  auto t = RootedTree::from_edges(9, edges, 0);
  // three pair paths through every spine vertex, two through every leaf
  std::vector<TerminalPair> pairs{{3, 7}, {4, 8}, {3, 4}, {5, 6}, {7, 8}};
  auto cls = classify_light(t, pairs, 2);
  CHECK(!cls.light[0]);
  CHECK(!cls.light[1]);
  CHECK(!cls.light[2]);
  REQUIRE(cls.heavy_components.size() == 1);
  CHECK(cls.heavy_components[0].vertices == std::vector<VertexId>{0, 1, 2});
  CHECK(cls.heavy_components[0].closed_neighborhood_leaves == 6);
  CHECK(cls.is_dq_light(6));
  CHECK(!cls.is_dq_light(5));
}

TEST_CASE("compute_io matches a direct recomputation") {
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_instance(1200 + trial, 12, 8, 10);
    auto io = compute_io(inst.tree, inst.pairs);
    CHECK(io.outgoing[inst.tree.root()].empty());
    for (VertexId v = 0; v < inst.n(); ++v) {
      std::vector<std::uint32_t> expect_i, expect_o;
      for (std::uint32_t q = 0; q < inst.pairs.size(); ++q) {
        const auto& p = inst.pairs[q];
        bool s_in = inst.tree.is_ancestor(v, p.s);
        bool t_in = inst.tree.is_ancestor(v, p.t);
        bool through = on_path(inst.tree, v, p.s, p.t);
        if (s_in && t_in && through) expect_i.push_back(q);
        if (s_in != t_in) expect_o.push_back(q);
      }
      auto got_i = io.inside[v];
      std::sort(got_i.begin(), got_i.end());
      CHECK(got_i == expect_i);
      std::vector<std::uint32_t> got_o;
      for (const auto& op : io.outgoing[v]) {
        CHECK(inst.tree.is_ancestor(v, op.inside));
        CHECK(!inst.tree.is_ancestor(v, op.outside));
        got_o.push_back(op.pair);
      }
      std::sort(got_o.begin(), got_o.end());
      CHECK(got_o == expect_o);
      // request degree decomposes as |I| + |O|
      CHECK(io.inside[v].size() + io.outgoing[v].size() ==
            pairs_through(inst.tree, inst.pairs, v).count);
    }
  }
}

TEST_CASE("leaf table entries") {
  auto st = star(2);
  std::vector<TerminalPair> pairs{{1, 2}};
  std::vector<Weight> wt{5, 7, kUndeletable};
  LightSolver solver(st, pairs, wt, 3);
  REQUIRE(solver.has_light_vertex());
  solver.fill();
  // vertex 1 is a light leaf with one outgoing pair
  CHECK(solver.tab(1, 0).weight == Weight{0});
  CHECK(solver.tab(1, 1).weight == Weight{7});
  // vertex 2 is undeletable: demanding its deletion is infeasible
  CHECK(solver.tab(2, 0).weight == Weight{0});
  CHECK(!solver.tab(2, 1).weight);
}

TEST_CASE("leaf self-pair forces the deletion in every entry") {
  auto st = star(2);
  std::vector<TerminalPair> pairs{{1, 1}};
  std::vector<Weight> wt{5, 7, 2};
  LightSolver solver(st, pairs, wt, 3);
  solver.fill();
  CHECK(solver.tab(1, 0).weight == Weight{7});
  CHECK(solver.root_answer().weight == Weight{7});
}

TEST_CASE("table entries equal the definitional minimum") {
  int done = 0;
  for (std::uint64_t seed = 0; done < 250; ++seed) {
    Instance inst = random_instance(2400 + seed, 12, 8, 12);
    for (std::uint32_t d = 0; d <= 3; ++d) {
      LightSolver solver(inst.tree, inst.pairs, inst.weights, d);
      if (!solver.has_light_vertex()) continue;
      solver.fill();
      const auto& tree = solver.rooted();
      const auto& io = solver.io();
      const auto& pairs = solver.pairs();
      for (VertexId v = 0; v < tree.n(); ++v) {
        if (!solver.classification().light[v]) continue;
        const auto& out = io.outgoing[v];
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << out.size());
             ++mask) {
          std::vector<TerminalPair> opairs;
          for (std::size_t b = 0; b < out.size(); ++b)
            if ((mask >> b) & 1) opairs.push_back(pairs[out[b].pair]);
          auto expect = brute_tab_entry(tree, pairs, inst.weights, v, opairs);
          auto got = solver.tab(v, mask).weight;
          CHECK(got == expect);
          // monotone non-decreasing under subset inclusion; an infeasible
          // subset entry forces the superset to be infeasible too
          for (std::size_t b = 0; b < out.size(); ++b) {
            if (((mask >> b) & 1) == 0) continue;
            auto sub = solver.tab(v, mask ^ (std::uint64_t{1} << b)).weight;
            if (got && sub) CHECK(*sub <= *got);
            if (!sub) CHECK(!got);
          }
        }
      }
    }
    ++done;
  }
}

TEST_CASE("heavy query matches its definitional contract") {
  int done = 0;
  for (std::uint64_t seed = 0; done < 200; ++seed) {
    Instance inst = random_instance(3600 + seed, 12, 9, 12);
    const std::uint32_t d = 1 + seed % 3;
    LightSolver solver(inst.tree, inst.pairs, inst.weights, d);
    if (!solver.has_light_vertex()) continue;
    solver.fill();
    const auto& tree = solver.rooted();
    const auto& cls = solver.classification();
    const auto& io = solver.io();
    bool any = false;
    for (VertexId v = 0; v < tree.n(); ++v) {
      if (!cls.light[v]) continue;
      for (VertexId u : tree.children(v)) {
        if (cls.light[u]) continue;
        any = true;
        const auto& out = io.outgoing[u];
        // all singleton queries plus the full set, capped for cost
        std::vector<std::vector<std::uint32_t>> queries{{}};
        for (const auto& op : out) queries.push_back({op.pair});
        std::vector<std::uint32_t> all;
        for (const auto& op : out) all.push_back(op.pair);
        queries.push_back(all);
        for (const auto& q : queries) {
          auto got = solver.heavy_query(u, q);
          std::vector<TerminalPair> qp;
          for (auto qi : q) qp.push_back(solver.pairs()[qi]);
          auto expect =
              brute_tab_entry(tree, solver.pairs(), inst.weights, u, qp);
          CHECK(got.weight == expect);
        }
      }
    }
    if (any) ++done;
  }
}

TEST_CASE("solve_light equals the oracle when every vertex is light") {
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = random_instance(4800 + trial, 12, 8, 15);
    auto d = static_cast<std::uint32_t>(max_request_degree(inst));
    auto res = solve_light(inst.tree, inst.pairs, inst.weights, d);
    auto expect = oracle(inst);
    CHECK(same_value(res.best, expect));
    if (res.best) {
      CHECK(res.best->weight == expect->weight);
      CHECK(witness_ok(inst, *res.best));
    }
    CHECK(res.stats.max_vertex_distributions <=
          static_cast<std::uint64_t>(std::pow(3.0, d)) + 1);
  }
}

TEST_CASE("solve_light with small d exercises heavy components") {
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = random_instance(6000 + trial, 12, 9, 15);
    for (std::uint32_t d = 0; d <= 3; ++d) {
      auto res = solve_light(inst.tree, inst.pairs, inst.weights, d);
      auto expect = oracle(inst);
      CHECK(same_value(res.best, expect));
      if (res.best) CHECK(witness_ok(inst, *res.best));
    }
  }
}

TEST_CASE("solve_light agrees with decision_leaves") {
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_instance(7200 + trial, 12, 6, 15);
    auto expect = oracle(inst);
    Weight probe = expect ? expect->weight : 5;
    auto res = solve_light(inst.tree, inst.pairs, inst.weights, 2, probe);
    REQUIRE(res.decision.has_value());
    CHECK(*res.decision ==
          decision_leaves(inst.tree, inst.pairs, inst.weights, probe));
  }
}

TEST_CASE("solve_light trivial corners") {
  Instance empty = Instance::make(line(4), {}, std::vector<Weight>(4, 1));
  auto res = solve_light(empty.tree, empty.pairs, empty.weights, 0);
  REQUIRE(res.best);
  CHECK(res.best->weight == 0);
}

TEST_CASE("solve_light on the C5 cover reduction with d = 3") {
  // the heavy spine forms one component; the pendants stay 3-light
  std::vector<std::pair<VertexId, VertexId>> c5{
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  Instance inst = reduce_vertex_cover(5, c5);
  auto res = solve_light(inst.tree, inst.pairs, inst.weights, 3);
  REQUIRE(res.best);
  CHECK(res.best->weight == 3);
  CHECK(witness_ok(inst, *res.best));
}
