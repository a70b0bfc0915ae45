// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Randomized checks are fully seeded and deterministic.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "helpers.hpp"
#include "wmctree/report.hpp"
#include "wmctree/solver_k.hpp"
#include "wmctree/solver_leaves.hpp"
#include "wmctree/solver_light.hpp"

using namespace wmctree;
using namespace wmctree::test;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%d] %-38s %s (%s)\n", idx, name, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::uint32_t max_request_degree(const Instance& inst) {
  auto cls = classify_light(inst.tree, inst.pairs, 0);
  std::size_t best = 0;
  for (auto c : cls.paths_through) best = std::max(best, c);
  return static_cast<std::uint32_t>(best);
}

struct BoundTracker {
  std::uint64_t runs = 0;
  std::uint64_t violations = 0;
};

BoundTracker g_bounds_leaves, g_bounds_k;
std::uint64_t g_witnesses_checked = 0;
std::uint64_t g_witnesses_bad = 0;

void track_witness(const Instance& inst, const Witness& w) {
  ++g_witnesses_checked;
  if (!witness_ok(inst, w)) ++g_witnesses_bad;
}

// Criterion 1: the three uwMC solvers match the oracle exactly.
void criterion_uwmc_equivalence() {
  const int kTrials = 1000;
  int bad = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    Instance inst = random_instance(10'000 + trial, 14, 10, 100);
    auto expect = oracle(inst);

    auto leaves = solve_leaves(inst.tree, inst.pairs, inst.weights);
    auto unmc = tree_multicut(inst.tree, inst.pairs, inst.weights);
    auto light = solve_light(inst.tree, inst.pairs, inst.weights,
                             max_request_degree(inst));

    ++g_bounds_leaves.runs;
    const std::uint64_t l = degree_classes(inst.tree).leaves.size();
    if (leaves.stats.node_count > branch_bound_leaves(l))
      ++g_bounds_leaves.violations;

    bool ok = same_value(leaves.best, expect) && same_value(unmc, expect) &&
              same_value(light.best, expect);
    if (ok && expect) {
      ok = leaves.best->weight == expect->weight &&
           unmc->weight == expect->weight &&
           light.best->weight == expect->weight;
      track_witness(inst, *leaves.best);
      track_witness(inst, *unmc);
      track_witness(inst, *light.best);
    }
    if (!ok) ++bad;
  }
  report(1, "uwMC oracle equivalence", bad == 0,
         std::to_string(kTrials) + " instances, " + std::to_string(bad) +
             " mismatches");
}

// Criterion 2: solve_k decisions match the size-capped oracle on a grid of
// budgets around the optimum.
void criterion_wmc_k_equivalence() {
  const int kTrials = 300;
  int bad = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    Instance inst = random_instance(20'000 + trial, 12, 8, 60);
    for (std::int64_t k = 0; k <= 4; ++k) {
      auto capped = oracle(inst, k);
      std::vector<Weight> probes;
      if (capped) {
        if (capped->weight > 0) probes.push_back(capped->weight - 1);
        probes.push_back(capped->weight);
        probes.push_back(capped->weight + 1);
      } else {
        probes.push_back(0);
        probes.push_back(Weight{1} << 20);
      }
      for (Weight w : probes) {
        Instance budgeted = inst;
        budgeted.budget_k = k;
        budgeted.budget_w = w;
        auto res = solve_k(budgeted);
        ++g_bounds_k.runs;
        if (res.stats.node_count > branch_bound_k(k)) ++g_bounds_k.violations;
        bool expect_yes = capped && capped->weight <= w;
        if (res.yes != expect_yes) ++bad;
        if (res.yes) {
          track_witness(inst, Witness{res.witness->total_weight,
                                      res.witness->vertices});
          if (!verify_solution(budgeted, *res.witness).ok) ++bad;
        }
      }
    }
  }
  report(2, "wMC-by-k oracle equivalence", bad == 0,
         std::to_string(kTrials) + " instances x k in 0..4, " +
             std::to_string(bad) + " mismatches");
}

// Criterion 3: branch counts stay within the closed-form bounds on every run
// recorded by criteria 1 and 2.
void criterion_branch_bounds() {
  bool pass = g_bounds_leaves.violations == 0 && g_bounds_k.violations == 0;
  report(3, "branch-count bounds", pass,
         std::to_string(g_bounds_k.runs) + " k-runs, " +
             std::to_string(g_bounds_leaves.runs) + " leaves-runs, " +
             std::to_string(g_bounds_k.violations + g_bounds_leaves.violations) +
             " violations");
}

// Criterion 4: the measure decrease is asserted inside both branching
// solvers on every branch edge; a violation throws instead of returning.
void criterion_measure_monotonic() {
  int caught = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst = random_instance(30'000 + trial, 14, 10, 40);
    try {
      solve_leaves(inst.tree, inst.pairs, inst.weights);
      Instance b = inst;
      b.budget_k = 3;
      b.budget_w = Weight{1} << 20;
      solve_k(b);
    } catch (const std::logic_error&) {
      ++caught;
    }
  }
  report(4, "measure strictly decreases", caught == 0,
         "200 instances, " + std::to_string(caught) + " assertion failures");
}

// Criterion 5: light-table entries equal the definitional brute-force value;
// distribution counters stay within 3^d per vertex and 2^(d*lambda) per
// heavy query (asserted inside the solver, surfaced via stats here).
void criterion_light_table() {
  int instances = 0;
  int bad = 0;
  for (std::uint64_t seed = 0; instances < 200; ++seed) {
    Instance inst = random_instance(40'000 + seed, 12, 8, 30);
    const std::uint32_t d = static_cast<std::uint32_t>(seed % 4);
    LightSolver solver(inst.tree, inst.pairs, inst.weights, d);
    if (!solver.has_light_vertex()) continue;
    ++instances;
    try {
      solver.fill();
    } catch (const std::logic_error&) {
      ++bad;
      continue;
    }
    const auto& tree = solver.rooted();
    for (VertexId v = 0; v < tree.n(); ++v) {
      if (!solver.classification().light[v]) continue;
      const auto& out = solver.io().outgoing[v];
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << out.size());
           ++mask) {
        std::vector<TerminalPair> opairs;
        for (std::size_t b = 0; b < out.size(); ++b)
          if ((mask >> b) & 1) opairs.push_back(solver.pairs()[out[b].pair]);
        auto expect =
            brute_tab_entry(tree, solver.pairs(), inst.weights, v, opairs);
        if (solver.tab(v, mask).weight != expect) ++bad;
      }
    }
    if (solver.stats().max_vertex_distributions >
        static_cast<std::uint64_t>(std::pow(3.0, d)))
      ++bad;
  }
  report(5, "light table correctness", bad == 0,
         std::to_string(instances) + " instances, d <= 3, " +
             std::to_string(bad) + " mismatches");
}

// Criterion 6: the vertex-cover reduction preserves optimum values.
void criterion_vc_reduction() {
  std::mt19937_64 rng(555);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
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
    auto vc = brute_vertex_cover(n, edges);
    Instance inst = reduce_vertex_cover(n, edges);
    auto mc = tree_multicut(inst.tree, inst.pairs, inst.weights);
    auto brute = oracle(inst);
    if (!mc || !brute || mc->weight != vc.size || brute->weight != vc.size) {
      ++bad;
      continue;
    }
    track_witness(inst, *mc);
  }
  report(6, "vertex-cover reduction equivalence", bad == 0,
         "200 max-degree-3 graphs, " + std::to_string(bad) + " mismatches");
}

// Criterion 7: the two base solvers are exact on their whole input families.
void criterion_base_solvers() {
  std::mt19937_64 rng(777);
  int bad = 0;
  int trials = 0;
  // paths: every length 1..15, randomized weights/pairs
  for (int rep_i = 0; rep_i < 70; ++rep_i)
    for (std::uint32_t n = 1; n <= 15; ++n) {
      Instance inst = gen_random(n, static_cast<std::uint32_t>(below(rng, 9)),
                                 40, rng(), GenShape::kPath);
      for (VertexId v = 0; v < n; ++v)
        if (below(rng, 10) == 0) inst.weights[v] = kUndeletable;
      ++trials;
      auto res = path_multicut(PathForest::whole_tree(inst.tree), inst.pairs,
                               inst.weights);
      auto expect = oracle(inst);
      if (!same_value(res, expect)) ++bad;
      if (res && expect && res->weight != expect->weight) ++bad;
      if (res) track_witness(inst, *res);
    }
  // subdivided stars with at most 5 leaves
  int stars = 0;
  for (std::uint64_t seed = 0; stars < 1000; ++seed) {
    std::uint32_t n = 1 + static_cast<std::uint32_t>(below(rng, 15));
    Instance inst = gen_random(n, static_cast<std::uint32_t>(below(rng, 9)),
                               40, seed, GenShape::kStarish);
    if (degree_classes(inst.tree).leaves.size() > 5) continue;
    for (VertexId v = 0; v < n; ++v)
      if (below(rng, 10) == 0) inst.weights[v] = kUndeletable;
    ++stars;
    ++trials;
    auto res = star_multicut(inst.tree, inst.pairs, inst.weights);
    auto expect = oracle(inst);
    if (!same_value(res, expect)) ++bad;
    if (res && expect && res->weight != expect->weight) ++bad;
    if (res) track_witness(inst, *res);
  }
  report(7, "base solvers exact on their families", bad == 0,
         std::to_string(trials) + " instances, " + std::to_string(bad) +
             " mismatches");
}

// Criterion 8: every witness handed out anywhere above verified.
void criterion_witness_integrity() {
  report(8, "witness integrity", g_witnesses_bad == 0,
         std::to_string(g_witnesses_checked) + " witnesses, " +
             std::to_string(g_witnesses_bad) + " invalid");
}

// Criterion 9: desk-scale runtime guard.
void criterion_performance() {
  using clock = std::chrono::steady_clock;

  // n = 200, k = 4, 30 pairs crossing four hub vertices: every pair's lca is
  // its hub, so the minimum-size multicut is the hub set itself and the
  // branching measure starts at its ceiling.
  std::mt19937_64 rng(999);
  const std::uint32_t n = 200;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> hubs{1, 50, 100, 150};
  // spine 0-1, 1-50, 50-100, 100-150 grown into four bushy hub regions
  for (VertexId v = 1; v < n; ++v) {
    VertexId hub = hubs[std::min<std::size_t>(3, v / 50)];
    if (v == hub)
      edges.emplace_back(v == 1 ? 0 : hubs[v / 50 - 1], v);
    else
      edges.emplace_back(hub + below(rng, v - hub), v);
  }
  auto tree = RootedTree::from_edges(n, edges, 0);
  std::vector<TerminalPair> pairs;
  while (pairs.size() < 30) {
    VertexId hub = hubs[pairs.size() % hubs.size()];
    const auto& kids = tree.children(hub);
    if (kids.size() < 2) break;
    auto sub_a = subtree_vertices(tree, kids[below(rng, kids.size())]);
    auto sub_b = subtree_vertices(tree, kids[below(rng, kids.size())]);
    VertexId s = sub_a[below(rng, sub_a.size())];
    VertexId t = sub_b[below(rng, sub_b.size())];
    if (tree.is_ancestor(kids[0], s) == tree.is_ancestor(kids[0], t) &&
        sub_a == sub_b)
      continue;
    if (lca(tree, s, t) != hub) continue;
    pairs.emplace_back(s, t);
  }
  std::vector<Weight> wt(n);
  for (auto& w : wt) w = 1 + below(rng, 50);
  // The four hubs cut every pair, so their total weight is a feasible
  // budget; the decision run still has to branch to find a witness.
  Weight hub_weight = 0;
  for (VertexId h : hubs) hub_weight += wt[h];
  Instance big = Instance::make(tree, pairs, wt, hub_weight, 4);
  auto t0 = clock::now();
  auto kres = solve_k(big);
  double k_secs = std::chrono::duration<double>(clock::now() - t0).count();

  // n = 300 with 6 leaves: a spine with six long legs.
  std::vector<std::pair<VertexId, VertexId>> e2;
  const std::uint32_t legs = 6, leg_len = 49;
  std::uint32_t m = 1 + legs * leg_len + 5;  // root chain + legs
  for (VertexId v = 1; v <= 5; ++v) e2.emplace_back(v - 1, v);
  VertexId next = 6;
  for (std::uint32_t l = 0; l < legs; ++l) {
    VertexId prev = static_cast<VertexId>(l % 6);
    for (std::uint32_t i = 0; i < leg_len; ++i) {
      e2.emplace_back(prev, next);
      prev = next++;
    }
  }
  auto tree2 = RootedTree::from_edges(m, e2, 0);
  std::vector<TerminalPair> pairs2;
  std::vector<Weight> wt2(m);
  for (auto& w : wt2) w = 1 + below(rng, 50);
  for (int i = 0; i < 40; ++i)
    pairs2.emplace_back(static_cast<VertexId>(below(rng, m)),
                        static_cast<VertexId>(below(rng, m)));
  t0 = clock::now();
  auto lres = solve_leaves(tree2, pairs2, wt2);
  double l_secs = std::chrono::duration<double>(clock::now() - t0).count();

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "solve_k(n=200,k=4): %.2fs %s; solve_leaves(n=%u,l=%zu): %.2fs",
                k_secs, kres.yes ? "yes" : "no", m,
                degree_classes(tree2).leaves.size(), l_secs);
  report(9, "desk-scale performance", k_secs <= 60.0 && l_secs <= 60.0,
         detail);
  (void)lres;
}

}  // namespace

int main() {
  criterion_uwmc_equivalence();
  criterion_wmc_k_equivalence();
  criterion_branch_bounds();
  criterion_measure_monotonic();
  criterion_light_table();
  criterion_vc_reduction();
  criterion_base_solvers();
  criterion_witness_integrity();
  criterion_performance();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
