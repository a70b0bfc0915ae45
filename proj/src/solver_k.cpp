#include <algorithm>
#include <map>
#include <unordered_map>

#include "wmctree/solver_k.hpp"

namespace wmctree {
namespace {

constexpr std::uint32_t kCheckMaxN = 64;  // instance size cap for the
                                          // expensive per-node invariants

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

struct Ctx {
  Weight budget_w = 0;
  BranchStats stats;
  Trace* trace = nullptr;
  std::uint64_t next_trace_id = 0;

  std::uint64_t note(std::uint64_t parent, std::uint64_t mu, std::string tag) {
    if (!trace) return 0;
    std::uint64_t id = next_trace_id++;
    trace->nodes.push_back({id, parent, mu, std::move(tag)});
    return id;
  }
  void retag(std::uint64_t id, const std::string& tag) {
    if (trace) trace->nodes[id].tag = tag;
  }
};

struct Node {
  RootedTree tree;
  std::vector<TerminalPair> pairs;
  std::vector<Weight> weights;
  std::int64_t k = 0;
  std::vector<VertexId> x_set;  // lca-closed multicut, sorted
};

void check_node_invariants(const Node& node) {
  if (node.tree.n() > kCheckMaxN) return;
  // X is a multicut of the current pairs and closed under pairwise lca.
  for (const auto& p : node.pairs) {
    bool hit = false;
    for (VertexId v : node.x_set)
      if (on_path(node.tree, v, p.s, p.t)) {
        hit = true;
        break;
      }
    WMC_ASSERT(hit, "X stopped being a multicut");
  }
  for (VertexId a : node.x_set)
    for (VertexId b : node.x_set) {
      VertexId l = lca(node.tree, a, b);
      WMC_ASSERT(std::binary_search(node.x_set.begin(), node.x_set.end(), l),
                 "X not lca-closed");
    }
}

// The structural fact the weight folds rely on: below any vertex of the
// (y,x)-path other than y, every pair path either passes through x or lies
// inside the subtree of x.
void check_fold_property(const Node& node, const std::vector<VertexId>& path,
                         VertexId x) {
  if (node.tree.n() > kCheckMaxN) return;
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto sub = subtree_vertices(node.tree, path[i]);
    for (const auto& p : restrict_pairs(node.pairs, sub))
      WMC_ASSERT(on_path(node.tree, x, p.s, p.t) ||
                     (node.tree.is_ancestor(x, p.s) && node.tree.is_ancestor(x, p.t)),
                 "pair below the branch path avoids x");
  }
}

struct Outcome {
  bool yes = false;
  std::vector<VertexId> witness;  // ids of the node's tree
};

Outcome recurse(Node node, std::uint64_t depth, std::uint64_t trace_parent,
                Ctx& ctx) {
  ++ctx.stats.node_count;
  ctx.stats.max_depth = std::max(ctx.stats.max_depth, depth);
  const std::uint64_t mu = node.x_set.size();
  const std::uint64_t tid = ctx.note(trace_parent, mu, "node");
  check_node_invariants(node);

  if (mu == 0) {
    ++ctx.stats.base_cases;
    WMC_ASSERT(node.pairs.empty(), "empty X with live pairs");
    ctx.retag(tid, "yes mu=0");
    return {node.k >= 0, {}};
  }
  if (node.k <= 0 && !node.pairs.empty()) {
    ++ctx.stats.base_cases;
    ctx.retag(tid, "no k=0");
    return {};
  }
  for (const auto& p : node.pairs)
    if (p.s == p.t && !is_deletable(node.weights[p.s])) {
      ++ctx.stats.base_cases;
      ctx.retag(tid, "no undeletable");
      return {};
    }
  if (mu == 1) {
    ++ctx.stats.base_cases;
    ++ctx.stats.subroutine_calls;
    ctx.retag(tid, "base mu=1");
    auto res = through_root_multicut(node.tree, node.pairs, node.x_set[0],
                                     node.weights, node.k);
    if (res && res->weight <= ctx.budget_w) return {true, std::move(res->vertices)};
    return {};
  }
  ctx.retag(tid, "branch mu=" + std::to_string(mu));

  // x: furthest member of X (smallest id among ties); y: its closest strict
  // ancestor inside X, which exists because X is lca-closed.
  VertexId x = kNoVertex;
  for (VertexId v : node.x_set)
    if (x == kNoVertex || node.tree.depth(v) > node.tree.depth(x) ||
        (node.tree.depth(v) == node.tree.depth(x) && v < x))
      x = v;
  VertexId y = node.tree.parent(x);
  while (y != kNoVertex &&
         !std::binary_search(node.x_set.begin(), node.x_set.end(), y))
    y = node.tree.parent(y);
  WMC_ASSERT(y != kNoVertex, "furthest X vertex has no X ancestor");

  const std::vector<VertexId> path = path_between(node.tree, y, x);
  check_fold_property(node, path, x);

  // Case 1: some solution avoids the (y,x)-path entirely.
  {
    auto c = contract_path(node.tree, node.pairs, node.weights, y, x);
    Node child;
    child.tree = std::move(c.tree);
    child.pairs = std::move(c.pairs);
    child.weights = std::move(c.weights);
    child.k = node.k;
    child.x_set = node.x_set;
    std::erase(child.x_set, x);
    std::erase(child.x_set, y);
    for (auto& v : child.x_set) v = c.psi.forward[v];
    child.x_set.push_back(c.contracted);
    std::sort(child.x_set.begin(), child.x_set.end());
    WMC_ASSERT(child.x_set.size() < mu, "measure must drop in case 1");
    ++ctx.stats.case1;
    auto sub = recurse(std::move(child), depth + 1, tid, ctx);
    if (sub.yes) {
      std::vector<VertexId> mapped;
      mapped.reserve(sub.witness.size());
      for (VertexId v : sub.witness) {
        WMC_ASSERT(v != c.contracted, "contracted vertex in witness");
        WMC_ASSERT(c.psi.fibers[v].size() == 1, "witness vertex has a fat fiber");
        mapped.push_back(c.psi.fibers[v][0]);
      }
      return {true, std::move(mapped)};
    }
  }

  // Case 2: some solution hits the (y,x)-path. Guess the size i of its part
  // strictly below the hit; fold that cost into the path weights.
  std::vector<VertexId> keep;
  {
    std::vector<bool> drop(node.tree.n(), false);
    for (VertexId v : subtree_vertices(node.tree, x)) drop[v] = true;
    drop[x] = false;
    for (VertexId v = 0; v < node.tree.n(); ++v)
      if (!drop[v]) keep.push_back(v);
  }
  auto ex = extract_subtree(node.tree, node.tree.root(), keep);

  std::vector<TerminalPair> p2;
  {
    std::vector<bool> in_dag_branch(node.tree.n(), false);
    for (VertexId v : subtree_vertices(node.tree, path[1])) in_dag_branch[v] = true;
    for (const auto& p : node.pairs) {
      if (ex.from_ambient[p.s] == kNoVertex || ex.from_ambient[p.t] == kNoVertex)
        continue;
      if (in_dag_branch[p.s] && in_dag_branch[p.t]) continue;
      p2.emplace_back(ex.from_ambient[p.s], ex.from_ambient[p.t]);
    }
    p2.emplace_back(ex.from_ambient[y], ex.from_ambient[x]);
    p2 = dedup_pairs(std::move(p2));
  }

  std::vector<VertexId> x2;
  for (VertexId v : node.x_set)
    if (v != x) x2.push_back(ex.from_ambient[v]);
  std::sort(x2.begin(), x2.end());
  WMC_ASSERT(x2.size() < mu, "measure must drop in case 2");

  // Folded solutions per (path vertex, size guess), computed lazily: the
  // same subtree answers all guesses i.
  struct Fold {
    bool feasible = false;
    Weight weight = 0;
    std::vector<VertexId> witness;  // ambient ids
  };
  std::map<std::pair<VertexId, std::int64_t>, Fold> fold_cache;
  auto fold_of = [&](std::uint32_t path_idx, std::int64_t i) -> const Fold& {
    VertexId v = path[path_idx];
    auto key = std::make_pair(v, i);
    if (auto it = fold_cache.find(key); it != fold_cache.end())
      return it->second;
    Fold f;
    std::vector<VertexId> view;
    if (path_idx + 1 < path.size()) {
      view = subtree_vertices(node.tree, path[path_idx + 1]);
    } else {
      view = subtree_vertices(node.tree, x);
      view.erase(std::lower_bound(view.begin(), view.end(), x));
    }
    auto sub_pairs = restrict_pairs(node.pairs, view);
    if (path_idx + 1 == path.size()) {
      // Forest strictly below x: pairs crossing branches run through x and
      // vanish here. Pairs confined to one branch would contradict X being
      // a multicut meeting the subtree of x only in x.
      std::erase_if(sub_pairs, [&](const TerminalPair& p) {
        return on_path(node.tree, x, p.s, p.t);
      });
      WMC_ASSERT(sub_pairs.empty(), "pairs strictly below x must pass through x");
    }
    if (sub_pairs.empty()) {
      f.feasible = true;
    } else {
      auto exv = extract_subtree(
          node.tree, path_idx + 1 < path.size() ? path[path_idx + 1] : x, view);
      std::vector<TerminalPair> local;
      for (const auto& p : sub_pairs)
        local.emplace_back(exv.from_ambient[p.s], exv.from_ambient[p.t]);
      std::vector<Weight> wloc(view.size());
      for (std::size_t j = 0; j < view.size(); ++j)
        wloc[j] = node.weights[view[j]];
      ++ctx.stats.subroutine_calls;
      auto r = through_root_multicut(exv.tree, local, exv.from_ambient[x], wloc, i);
      if (r) {
        f.feasible = true;
        f.weight = r->weight;
        f.witness = r->vertices;
        for (auto& v2 : f.witness) v2 = exv.to_ambient[v2];
      }
    }
    return fold_cache.emplace(key, std::move(f)).first->second;
  };

  for (std::int64_t i = 0; i <= node.k; ++i) {
    Node child;
    child.tree = ex.tree;
    child.pairs = p2;
    child.k = node.k - i;
    child.x_set = x2;
    child.weights.resize(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
      child.weights[j] = node.weights[keep[j]];
    for (std::uint32_t pi = 0; pi < path.size(); ++pi) {
      const Fold& f = fold_of(pi, i);
      VertexId nv = ex.from_ambient[path[pi]];
      if (!f.feasible) {
        child.weights[nv] = kUndeletable;
      } else if (is_deletable(child.weights[nv])) {
        child.weights[nv] = add_weight(child.weights[nv], f.weight);
      }
    }
    ++ctx.stats.case2;
    auto sub = recurse(std::move(child), depth + 1, tid, ctx);
    if (!sub.yes) continue;

    // Reconstruct: keep the shallowest witness vertex z on the path, attach
    // the folded sub-solution of (z, i), and map everything back.
    std::vector<std::uint32_t> pos_of(node.tree.n(), kNoVertex);
    for (std::uint32_t pi = 0; pi < path.size(); ++pi) pos_of[path[pi]] = pi;
    std::uint32_t z_pos = kNoVertex;
    std::vector<VertexId> cleaned;
    for (VertexId v : sub.witness) {
      VertexId av = ex.to_ambient[v];
      if (pos_of[av] != kNoVertex) {
        if (z_pos == kNoVertex || pos_of[av] < z_pos) z_pos = pos_of[av];
      } else {
        cleaned.push_back(av);
      }
    }
    WMC_ASSERT(z_pos != kNoVertex, "case-2 witness must hit the branch path");
    cleaned.push_back(path[z_pos]);
    const Fold& f = fold_of(z_pos, i);
    WMC_ASSERT(f.feasible, "witness used an infeasible fold");
    cleaned.insert(cleaned.end(), f.witness.begin(), f.witness.end());
    std::sort(cleaned.begin(), cleaned.end());
    cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
    return {true, std::move(cleaned)};
  }
  return {};
}

}  // namespace

KResult solve_k(const Instance& inst, Trace* trace) {
  if (!inst.budget_k) throw InputError("solve_k: size budget missing");
  if (!inst.budget_w) throw InputError("solve_k: weight budget missing");
  const std::int64_t k = *inst.budget_k;

  Ctx ctx;
  ctx.budget_w = *inst.budget_w;
  ctx.trace = trace;

  KResult out;
  // Root at the smallest id; vertex ids survive rerooting unchanged.
  Node root_node;
  root_node.tree = reroot(inst.tree, 0);
  root_node.pairs = inst.pairs;
  root_node.weights = inst.weights;
  root_node.k = k;

  auto x_opt = greedy_min_size_multicut(root_node.tree, root_node.pairs);
  if (static_cast<std::int64_t>(x_opt.size()) > k) {
    ctx.stats.node_count = 1;
    ctx.stats.base_cases = 1;
    out.stats = ctx.stats;
    return out;
  }
  root_node.x_set = lca_closure(root_node.tree, x_opt);
  WMC_ASSERT(root_node.x_set.size() <= 2 * x_opt.size(),
             "lca closure more than doubled");

  auto res = recurse(std::move(root_node), 0, 0, ctx);
  out.stats = ctx.stats;
  WMC_ASSERT(out.stats.node_count <=
                 saturating_pow(static_cast<std::uint64_t>(k) + 2,
                                2 * static_cast<std::uint64_t>(k) + 1),
             "branch count exceeded (k+2)^(2k+1)");
  if (res.yes) {
    out.yes = true;
    Solution sol = solution_from(inst, std::move(res.witness));
    auto check = verify_solution(inst, sol);
    WMC_ASSERT(check.ok, "solver produced an invalid witness: " + check.violation);
    out.witness = std::move(sol);
  }
  return out;
}

}  // namespace wmctree
