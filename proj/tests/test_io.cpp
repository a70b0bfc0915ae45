#include "doctest.h"
#include "helpers.hpp"
#include "wmctree/solver_leaves.hpp"
#include "wmctree/solver_light.hpp"

using namespace wmctree;
using namespace wmctree::test;

TEST_CASE("parse minimal and hand-written instances") {
  Instance one = parse_instance("wmctree 1 1 0\nw 0 3\n");
  CHECK(one.n() == 1);
  CHECK(one.weights[0] == 3);
  CHECK(one.pairs.empty());

  const char* text =
      "# five vertices\n"
      "wmctree 1 5 2\n"
      "e 0 1\n"
      "e 1 2\n"
      "e 2 3\n"
      "e 2 4\n"
      "w 0 1\nw 1 *\nw 2 7\nw 3 2\nw 4 2\n"
      "p 3 4\n"
      "p 0 4  # a comment\n"
      "budget w 9\n"
      "budget k 2\n";
  Instance inst = parse_instance(text);
  CHECK(inst.n() == 5);
  CHECK(inst.weights[1] == kUndeletable);
  CHECK(inst.pairs.size() == 2);
  CHECK(inst.budget_w == Weight{9});
  CHECK(inst.budget_k == 2);

  Instance again = parse_instance(serialize_instance(inst));
  CHECK(serialize_instance(again) == serialize_instance(inst));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_instance(""), ParseError);
  // a cycle instead of a tree
  CHECK_THROWS_AS(
      parse_instance("wmctree 1 3 0\ne 0 1\ne 1 2\ne 2 0\nw 0 1\nw 1 1\nw 2 1\n"),
      ParseError);
  CHECK_THROWS_AS(parse_instance("wmctree 1 2 0\ne 0 5\nw 0 1\nw 1 1\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_instance("wmctree 1 2 0\ne 0 1\nw 0 1\nw 0 2\nw 1 1\n"),
      ParseError);
  CHECK_THROWS_AS(parse_instance("wmctree 1 2 0\ne 0 1\nw 0 1\n"), ParseError);
}

TEST_CASE("serialize-parse round trip on random instances") {
  for (int trial = 0; trial < 120; ++trial) {
    Instance inst = random_instance(100 + trial, 16, 9, 40);
    if (trial % 3 == 0) inst.budget_w = (Weight{1} << 40) + trial;
    if (trial % 5 == 0) inst.budget_k = trial % 7;
    std::string text = serialize_instance(inst);
    Instance back = parse_instance(text);
    CHECK(serialize_instance(back) == text);
    CHECK(back.pairs == inst.pairs);
    CHECK(back.weights == inst.weights);
    CHECK(back.budget_w == inst.budget_w);
    CHECK(back.budget_k == inst.budget_k);
  }
}

TEST_CASE("gen_random is deterministic and shapes hold") {
  Instance a = gen_random(10, 5, 20, 99, GenShape::kUniform);
  Instance b = gen_random(10, 5, 20, 99, GenShape::kUniform);
  CHECK(serialize_instance(a) == serialize_instance(b));

  Instance path = gen_random(12, 3, 10, 7, GenShape::kPath);
  CHECK(degree_classes(path.tree).branching.empty());

  Instance st = gen_random(10, 3, 10, 7, GenShape::kStarish);
  CHECK(degree_classes(st.tree).branching.size() <= 1);
}

TEST_CASE("reduce_vertex_cover structure and values") {
  Instance edgeless = reduce_vertex_cover(3, {});
  CHECK(edgeless.pairs.empty());
  auto zero = tree_multicut(edgeless.tree, edgeless.pairs, edgeless.weights);
  REQUIRE(zero);
  CHECK(zero->weight == 0);

  std::vector<std::pair<VertexId, VertexId>> one{{0, 1}};
  Instance single = reduce_vertex_cover(2, one);
  auto res = tree_multicut(single.tree, single.pairs, single.weights);
  REQUIRE(res);
  CHECK(res->weight == 1);

  std::vector<std::pair<VertexId, VertexId>> c5{
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  Instance ring = reduce_vertex_cover(5, c5);
  auto r5 = tree_multicut(ring.tree, ring.pairs, ring.weights);
  REQUIRE(r5);
  CHECK(r5->weight == 3);

  std::vector<std::pair<VertexId, VertexId>> loop{{1, 1}};
  CHECK_THROWS_AS(reduce_vertex_cover(2, loop), InputError);
}

TEST_CASE("reduce_vertex_cover value equivalence on random cubic-ish graphs") {
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 200) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(below(rng, 7));
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::uint32_t> deg(n, 0);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (deg[u] < 3 && deg[v] < 3 && below(rng, 3) == 0) {
          edges.emplace_back(u, v);
          ++deg[u];
          ++deg[v];
        }
    ++done;
    auto vc = brute_vertex_cover(n, edges);
    Instance inst = reduce_vertex_cover(n, edges);
    auto mc = tree_multicut(inst.tree, inst.pairs, inst.weights);
    auto brute = oracle(inst);
    REQUIRE(mc);
    REQUIRE(brute);
    CHECK(mc->weight == vc.size);
    CHECK(brute->weight == vc.size);
  }
}

namespace {

// Brute-force edge-deletion multicut used to pin the subdivision reduction.
std::optional<Weight> edge_brute(std::uint32_t n,
                                 const std::vector<WeightedEdge>& edges,
                                 const std::vector<TerminalPair>& pairs) {
  std::vector<std::vector<std::pair<VertexId, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].emplace_back(edges[i].v, i);
    adj[edges[i].v].emplace_back(edges[i].u, i);
  }
  std::optional<Weight> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size());
       ++mask) {
    // connectivity without the deleted edges
    std::vector<std::int32_t> comp(n, -1);
    std::int32_t nc = 0;
    for (VertexId s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<VertexId> stack{s};
      comp[s] = nc;
      while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (auto [v, ei] : adj[u]) {
          if ((mask >> ei) & 1) continue;
          if (comp[v] < 0) {
            comp[v] = nc;
            stack.push_back(v);
          }
        }
      }
      ++nc;
    }
    bool ok = true;
    for (const auto& p : pairs) ok = ok && comp[p.s] != comp[p.t];
    if (!ok) continue;
    Weight total = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if ((mask >> i) & 1) total += edges[i].weight;
    if (!best || total < *best) best = total;
  }
  return best;
}

}  // namespace

TEST_CASE("reduce_edge_deletion single edge and empty pair set") {
  std::vector<WeightedEdge> one{{0, 1, 5}};
  std::vector<TerminalPair> pairs{{0, 1}};
  Instance inst = reduce_edge_deletion(2, one, pairs);
  CHECK(inst.n() == 3);
  CHECK(inst.weights[0] == kUndeletable);
  CHECK(inst.weights[1] == kUndeletable);
  CHECK(inst.weights[2] == 5);
  auto res = tree_multicut(inst.tree, inst.pairs, inst.weights);
  REQUIRE(res);
  CHECK(res->weight == 5);

  Instance free = reduce_edge_deletion(2, one, {});
  auto zero = tree_multicut(free.tree, free.pairs, free.weights);
  REQUIRE(zero);
  CHECK(zero->weight == 0);
}

TEST_CASE("reduce_edge_deletion equals the edge brute force") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 120; ++trial) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(below(rng, 8));
    std::vector<WeightedEdge> edges;
    for (VertexId v = 1; v < n; ++v)
      edges.push_back({static_cast<VertexId>(below(rng, v)), v,
                       1 + below(rng, 9)});
    std::vector<TerminalPair> pairs;
    const auto np = below(rng, 5);
    for (std::uint64_t i = 0; i < np; ++i) {
      VertexId s = static_cast<VertexId>(below(rng, n));
      VertexId t = static_cast<VertexId>(below(rng, n));
      if (s != t) pairs.emplace_back(s, t);
    }
    Instance inst = reduce_edge_deletion(n, edges, pairs);
    auto reduced = oracle(inst);
    auto direct = edge_brute(n, edges, pairs);
    REQUIRE(reduced);
    REQUIRE(direct);
    CHECK(reduced->weight == *direct);
  }
}

TEST_CASE("gen_dq_light is certified and deterministic") {
  Instance a = gen_dq_light(2, 4, 40, 5);
  Instance b = gen_dq_light(2, 4, 40, 5);
  CHECK(serialize_instance(a) == serialize_instance(b));
  CHECK(classify_light(a.tree, a.pairs, 2).is_dq_light(4));

  Instance flat = gen_dq_light(0, 2, 20, 9);
  CHECK(classify_light(flat.tree, flat.pairs, 0).is_dq_light(2));

  Instance tiny = gen_dq_light(3, 1, 6, 1);
  CHECK(classify_light(tiny.tree, tiny.pairs, 3).is_dq_light(1));

  CHECK_THROWS_AS(gen_dq_light(2, 2, 0, 1), GenerationError);
}

TEST_CASE("vertex cover reduction output is 3-light on the pendants") {
  std::vector<std::pair<VertexId, VertexId>> c5{
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  Instance inst = reduce_vertex_cover(5, c5);
  auto cls = classify_light(inst.tree, inst.pairs, 3);
  for (VertexId i = 5; i < 10; ++i) CHECK(cls.light[i]);  // pendants
}
