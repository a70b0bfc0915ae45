#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "wmctree/solver_leaves.hpp"

namespace wmctree {
namespace {

std::uint64_t saturating_pow2(std::uint64_t e) {
  return e >= 63 ? std::numeric_limits<std::uint64_t>::max()
                 : (std::uint64_t{1} << e);
}

struct Ctx {
  BranchStats stats;
  Trace* trace = nullptr;
  std::uint64_t next_trace_id = 0;

  std::uint64_t note(std::uint64_t parent, std::uint64_t mu, const char* tag) {
    if (!trace) return 0;
    std::uint64_t id = next_trace_id++;
    trace->nodes.push_back({id, parent, mu, tag});
    return id;
  }
  void retag(std::uint64_t id, const std::string& tag) {
    if (trace) trace->nodes[id].tag = tag;
  }
};

std::uint64_t measure_of(const RootedTree& t) {
  auto dc = degree_classes(t);
  return dc.branching.size() + dc.leaves.size();
}

// Maps a child-instance witness back through an id map (new -> parent ids).
void map_back(std::vector<VertexId>& vs, const std::vector<VertexId>& to_parent) {
  for (auto& v : vs) v = to_parent[v];
}

OptWitness recurse(const RootedTree& tree, std::vector<TerminalPair> pairs,
                   std::vector<Weight> weights, std::uint64_t depth,
                   std::uint64_t trace_parent, Ctx& ctx) {
  ++ctx.stats.node_count;
  ctx.stats.max_depth = std::max(ctx.stats.max_depth, depth);
  const std::uint64_t mu = measure_of(tree);
  const std::uint64_t trace_id = ctx.note(trace_parent, mu, "node");

  // A single-vertex pair on an undeletable vertex can never be cut. Such
  // pairs only enter mid-recursion via contraction.
  for (const auto& p : pairs)
    if (p.s == p.t && !is_deletable(weights[p.s])) {
      ++ctx.stats.base_cases;
      ctx.retag(trace_id, "infeasible mu=" + std::to_string(mu));
      return std::nullopt;
    }

  auto dc = degree_classes(tree);
  if (dc.branching.size() <= 1) {
    ++ctx.stats.base_cases;
    ++ctx.stats.subroutine_calls;
    ctx.retag(trace_id, "base mu=" + std::to_string(mu));
    return star_multicut(tree, pairs, weights);
  }

  // x: furthest branching vertex (smallest id among depth ties),
  // y: its closest branching ancestor.
  VertexId x = kNoVertex;
  for (VertexId v : dc.branching)
    if (x == kNoVertex || tree.depth(v) > tree.depth(x) ||
        (tree.depth(v) == tree.depth(x) && v < x))
      x = v;
  VertexId y = tree.parent(x);
  while (y != kNoVertex && tree.degree(y) < 3) y = tree.parent(y);
  WMC_ASSERT(y != kNoVertex, "no branching ancestor; root must be a leaf");
  ctx.retag(trace_id, "branch mu=" + std::to_string(mu));

  OptWitness best;

  // Branch 1: no solution vertex on the (y,x)-path; contract it onto an
  // undeletable vertex.
  {
    auto c = contract_path(tree, pairs, weights, y, x);
    WMC_ASSERT(measure_of(c.tree) < mu, "measure must drop in branch 1");
    ++ctx.stats.case1;
    auto sub = recurse(c.tree, std::move(c.pairs), std::move(c.weights),
                       depth + 1, trace_id, ctx);
    if (sub) {
      for (VertexId v : sub->vertices)
        WMC_ASSERT(v != c.contracted, "contracted vertex in witness");
      std::vector<VertexId> mapped;
      mapped.reserve(sub->vertices.size());
      for (VertexId v : sub->vertices) {
        WMC_ASSERT(c.psi.fibers[v].size() == 1, "witness vertex has a fat fiber");
        mapped.push_back(c.psi.fibers[v][0]);
      }
      std::sort(mapped.begin(), mapped.end());
      take_min(best, Witness{sub->weight, std::move(mapped)});
    }
  }

  // Branch 2: some solution vertex on the (y,x)-path. z is the first path
  // vertex after y whose prefix holds a whole pair (self-pairs at y
  // included); the tree below z is cut away and each prefix vertex absorbs
  // the optimal cost of the star hanging strictly below it.
  {
    const std::vector<VertexId> path = path_between(tree, y, x);
    std::vector<bool> on_path_v(tree.n(), false);
    std::vector<std::uint32_t> path_pos(tree.n(), 0);
    for (std::uint32_t i = 0; i < path.size(); ++i) {
      on_path_v[path[i]] = true;
      path_pos[path[i]] = i;
    }
    std::uint32_t z_pos = static_cast<std::uint32_t>(path.size()) - 1;  // x
    {
      std::uint32_t best_hi = kNoVertex;
      for (const auto& p : pairs)
        if (on_path_v[p.s] && on_path_v[p.t])
          best_hi = std::min(best_hi, std::max(path_pos[p.s], path_pos[p.t]));
      if (best_hi != kNoVertex) z_pos = std::max<std::uint32_t>(1, best_hi);
    }
    const VertexId z = path[z_pos];

    // T2 = T minus everything strictly below z.
    const std::vector<VertexId> below_z = subtree_vertices(tree, z);
    std::vector<VertexId> keep;
    {
      std::vector<bool> drop(tree.n(), false);
      for (VertexId v : below_z) drop[v] = true;
      drop[z] = false;
      for (VertexId v = 0; v < tree.n(); ++v)
        if (!drop[v]) keep.push_back(v);
    }
    auto ex = extract_subtree(tree, tree.root(), keep);

    // Weight folds along the prefix [y..z]; each T-dagger below v is a
    // subdivided star whose only branching vertex is x.
    std::vector<Weight> wt2(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) wt2[i] = weights[keep[i]];
    std::unordered_map<VertexId, std::vector<VertexId>> fold_witness;
    for (std::uint32_t i = 0; i <= z_pos; ++i) {
      VertexId v = path[i];
      std::vector<VertexId> sub_view =
          i + 1 < path.size() ? subtree_vertices(tree, path[i + 1])
                              : [&] {
                                  auto s = subtree_vertices(tree, x);
                                  s.erase(std::lower_bound(s.begin(), s.end(), x));
                                  return s;
                                }();
      auto sub_pairs = restrict_pairs(pairs, sub_view);
      if (i + 1 == path.size()) {
        // The view is the forest strictly below x; pairs crossing two of its
        // branches run through x and are paid by deleting x, not here.
        std::erase_if(sub_pairs, [&](const TerminalPair& p) {
          return on_path(tree, x, p.s, p.t);
        });
      }
      ++ctx.stats.subroutine_calls;
      auto fold = star_multicut_on(tree, sub_view, sub_pairs, weights);
      VertexId nv = ex.from_ambient[v];
      if (!fold) {
        wt2[nv] = kUndeletable;
      } else if (is_deletable(wt2[nv])) {
        wt2[nv] = add_weight(wt2[nv], fold->weight);
        if (!fold->vertices.empty()) fold_witness[v] = fold->vertices;
      }
    }

    // P2: drop pairs inside the branch of y toward x (self-pairs at y stay;
    // the correctness argument needs them to keep forcing y), keep the rest,
    // and add the fresh (y,z) pair.
    std::vector<TerminalPair> p2;
    {
      std::vector<bool> in_branch(tree.n(), false);
      const VertexId branch_child = path[1];
      for (VertexId v : subtree_vertices(tree, branch_child)) in_branch[v] = true;
      in_branch[y] = true;
      for (const auto& p : pairs) {
        if (ex.from_ambient[p.s] == kNoVertex || ex.from_ambient[p.t] == kNoVertex)
          continue;  // touches the deleted part; dominated by (y,z)
        if (in_branch[p.s] && in_branch[p.t] && !(p.s == y && p.t == y))
          continue;
        p2.emplace_back(ex.from_ambient[p.s], ex.from_ambient[p.t]);
      }
      p2.emplace_back(ex.from_ambient[y], ex.from_ambient[z]);
      p2 = dedup_pairs(std::move(p2));
    }

    WMC_ASSERT(measure_of(ex.tree) < mu, "measure must drop in branch 2");
    ++ctx.stats.case2;
    auto sub = recurse(ex.tree, std::move(p2), std::move(wt2), depth + 1,
                       trace_id, ctx);
    if (sub) {
      map_back(sub->vertices, ex.to_ambient);
      // Keep only the shallowest witness vertex on the [y..z] prefix: pairs
      // through a deeper prefix vertex pass the shallower one too.
      VertexId keep_v = kNoVertex;
      std::vector<VertexId> cleaned;
      for (VertexId v : sub->vertices) {
        if (on_path_v[v] && path_pos[v] <= z_pos) {
          if (keep_v == kNoVertex || path_pos[v] < path_pos[keep_v]) keep_v = v;
        } else {
          cleaned.push_back(v);
        }
      }
      WMC_ASSERT(keep_v != kNoVertex, "branch-2 witness must hit the prefix");
      cleaned.push_back(keep_v);
      if (auto it = fold_witness.find(keep_v); it != fold_witness.end())
        cleaned.insert(cleaned.end(), it->second.begin(), it->second.end());
      // Recompute the ambient weight; dropped duplicates carried zero extra
      // weight by minimality.
      Weight w = 0;
      std::sort(cleaned.begin(), cleaned.end());
      cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
      for (VertexId v : cleaned) {
        WMC_ASSERT(is_deletable(weights[v]), "undeletable vertex in witness");
        w = add_weight(w, weights[v]);
      }
      take_min(best, Witness{w, std::move(cleaned)});
    }
  }

  return best;
}

}  // namespace

std::string trace_to_dot(const Trace& trace) {
  std::ostringstream os;
  os << "digraph branching {\n";
  for (const auto& n : trace.nodes) {
    os << "  n" << n.id << " [label=\"" << n.tag << "\"];\n";
    if (n.parent != n.id)
      os << "  n" << n.parent << " -> n" << n.id << ";\n";
  }
  os << "}\n";
  return os.str();
}

LeavesResult solve_leaves(const RootedTree& tree,
                          std::span<const TerminalPair> pairs,
                          std::span<const Weight> weights, Trace* trace) {
  WMC_ASSERT(weights.size() == tree.n(), "weight map size mismatch");
  Ctx ctx;
  ctx.trace = trace;

  // Root at the smallest-id leaf so every vertex with two children counts as
  // branching; that guarantees the closest branching ancestor exists.
  RootedTree rooted = tree;
  auto dc = degree_classes(tree);
  if (!dc.leaves.empty()) rooted = reroot(tree, dc.leaves.front());

  LeavesResult res;
  res.best = recurse(rooted, dedup_pairs({pairs.begin(), pairs.end()}),
                     {weights.begin(), weights.end()}, 0, 0, ctx);
  res.stats = ctx.stats;

  const std::uint64_t leaves = dc.leaves.size();
  WMC_ASSERT(res.stats.node_count <= saturating_pow2(2 * leaves + 1),
             "branch count exceeded 2^(2l+1)");
  return res;
}

bool decision_leaves(const RootedTree& tree, std::span<const TerminalPair> pairs,
                     std::span<const Weight> weights, Weight budget_w) {
  auto res = solve_leaves(tree, pairs, weights);
  return res.best && res.best->weight <= budget_w;
}

OptWitness tree_multicut(const RootedTree& tree,
                         std::span<const TerminalPair> pairs,
                         std::span<const Weight> weights) {
  return solve_leaves(tree, pairs, weights).best;
}

}  // namespace wmctree
