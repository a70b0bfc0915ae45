#include <algorithm>

#include "wmctree/solver_light.hpp"

namespace wmctree {
namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

void append_sorted_unique(std::vector<VertexId>& into,
                          const std::vector<VertexId>& more) {
  into.insert(into.end(), more.begin(), more.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

}  // namespace

IOSets compute_io(const RootedTree& tree, std::span<const TerminalPair> pairs) {
  IOSets io;
  io.inside.assign(tree.n(), {});
  io.outgoing.assign(tree.n(), {});
  for (std::uint32_t pi = 0; pi < pairs.size(); ++pi) {
    const auto& p = pairs[pi];
    VertexId l = lca(tree, p.s, p.t);
    io.inside[l].push_back(pi);
    for (VertexId v = p.s; v != l; v = tree.parent(v))
      io.outgoing[v].push_back({pi, p.s, p.t});
    for (VertexId v = p.t; v != l; v = tree.parent(v))
      io.outgoing[v].push_back({pi, p.t, p.s});
  }
  return io;
}

LightClassification classify_light(const RootedTree& tree,
                                   std::span<const TerminalPair> pairs,
                                   std::uint32_t d) {
  LightClassification cls;
  cls.d = d;
  cls.paths_through.assign(tree.n(), 0);
  IOSets io = compute_io(tree, pairs);
  for (VertexId v = 0; v < tree.n(); ++v)
    cls.paths_through[v] = io.inside[v].size() + io.outgoing[v].size();
  cls.light.resize(tree.n());
  for (VertexId v = 0; v < tree.n(); ++v)
    cls.light[v] = cls.paths_through[v] <= d;

  // Connected components of the heavy vertices, with the leaf count of the
  // tree induced by each component's closed neighborhood.
  std::vector<bool> seen(tree.n(), false);
  auto neighbors = [&](VertexId v) {
    std::vector<VertexId> nb = tree.children(v);
    if (tree.parent(v) != kNoVertex) nb.push_back(tree.parent(v));
    return nb;
  };
  for (VertexId v = 0; v < tree.n(); ++v) {
    if (cls.light[v] || seen[v]) continue;
    HeavyComponent comp;
    std::vector<VertexId> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      comp.vertices.push_back(u);
      for (VertexId w : neighbors(u)) {
        if (cls.light[w] || seen[w]) continue;
        seen[w] = true;
        stack.push_back(w);
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    std::vector<VertexId> closed = comp.vertices;
    for (VertexId u : comp.vertices)
      for (VertexId w : neighbors(u))
        if (cls.light[w]) closed.push_back(w);
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    auto in_closed = [&](VertexId u) {
      return std::binary_search(closed.begin(), closed.end(), u);
    };
    for (VertexId u : closed) {
      std::size_t deg = 0;
      for (VertexId w : neighbors(u))
        if (in_closed(w)) ++deg;
      if (deg == 1) ++comp.closed_neighborhood_leaves;
    }
    cls.heavy_components.push_back(std::move(comp));
  }
  return cls;
}

LightSolver::LightSolver(const RootedTree& tree,
                         std::span<const TerminalPair> pairs,
                         std::span<const Weight> weights, std::uint32_t d)
    : pairs_(dedup_pairs({pairs.begin(), pairs.end()})),
      weights_(weights.begin(), weights.end()),
      d_(d) {
  WMC_ASSERT(weights.size() == tree.n(), "weight map size mismatch");
  cls_ = classify_light(tree, pairs_, d);
  VertexId light_root = kNoVertex;
  for (VertexId v = 0; v < tree.n(); ++v)
    if (cls_.light[v]) {
      light_root = v;
      break;
    }
  tree_ = light_root == kNoVertex ? tree : reroot(tree, light_root);
  io_ = compute_io(tree_, pairs_);
  component_of_.assign(tree_.n(), -1);
  for (std::size_t c = 0; c < cls_.heavy_components.size(); ++c)
    for (VertexId v : cls_.heavy_components[c].vertices)
      component_of_[v] = static_cast<std::int32_t>(c);
  tables_.resize(tree_.n());
}

const LightTableEntry& LightSolver::tab(VertexId v, std::uint64_t mask) const {
  WMC_ASSERT(v < tables_.size() && tables_[v].filled, "table entry not filled");
  WMC_ASSERT(mask < tables_[v].by_mask.size(), "subset mask out of range");
  return tables_[v].by_mask[mask];
}

const LightTableEntry& LightSolver::root_answer() const {
  return tab(tree_.root(), 0);
}

void LightSolver::update_leaf(VertexId v) {
  auto& vt = tables_[v];
  WMC_ASSERT(io_.inside[v].size() + io_.outgoing[v].size() <= d_,
             "light leaf exceeds its request-degree bound");
  const std::size_t bits = io_.outgoing[v].size();
  vt.by_mask.assign(std::size_t{1} << bits, {});
  const bool forced = !io_.inside[v].empty();  // a (v,v) pair
  for (std::uint64_t mask = 0; mask < vt.by_mask.size(); ++mask) {
    auto& e = vt.by_mask[mask];
    if (mask == 0 && !forced) {
      e.weight = 0;
      continue;
    }
    if (is_deletable(weights_[v])) {
      e.weight = weights_[v];
      e.witness = {v};
    }
  }
  vt.filled = true;
  stats_.table_entries += vt.by_mask.size();
}

LightTableEntry LightSolver::star_dispatch(
    VertexId child, const std::vector<std::uint32_t>& q_pairs) {
  if (cls_.light[child]) {
    std::uint64_t mask = 0;
    const auto& out = io_.outgoing[child];
    for (std::uint32_t q : q_pairs) {
      bool found = false;
      for (std::size_t b = 0; b < out.size(); ++b)
        if (out[b].pair == q) {
          mask |= std::uint64_t{1} << b;
          found = true;
          break;
        }
      WMC_ASSERT(found, "query pair not outgoing at the light child");
    }
    return tab(child, mask);
  }
  return heavy_query(child, q_pairs);
}

void LightSolver::update_internal(VertexId v) {
  const auto& children = tree_.children(v);
  const int p = static_cast<int>(children.size());
  const auto& out_v = io_.outgoing[v];
  WMC_ASSERT(out_v.size() <= d_ && io_.inside[v].size() + out_v.size() <= d_,
             "light vertex exceeds its request-degree bound");

  // Split the pairs with lca v by the child branches their endpoints use.
  std::vector<std::uint32_t> i0;                    // (v,v) pairs
  std::vector<std::vector<std::uint32_t>> ii(p);    // one branch + v
  struct CrossPair {
    std::uint32_t pair;
    int ci, cj;  // ci < cj
  };
  std::vector<CrossPair> cross;
  auto child_of = [&](VertexId e) {
    for (int c = 0; c < p; ++c)
      if (tree_.is_ancestor(children[c], e)) return c;
    internal_failure("endpoint not below any child");
  };
  for (std::uint32_t q : io_.inside[v]) {
    const auto& pr = pairs_[q];
    if (pr.s == v && pr.t == v) {
      i0.push_back(q);
    } else if (pr.s == v || pr.t == v) {
      ii[child_of(pr.s == v ? pr.t : pr.s)].push_back(q);
    } else {
      int a = child_of(pr.s), b = child_of(pr.t);
      WMC_ASSERT(a != b, "pair with lca v inside one branch");
      cross.push_back({q, std::min(a, b), std::max(a, b)});
    }
  }
  {
    std::size_t buckets = i0.size() + cross.size();
    for (const auto& s : ii) buckets += s.size();
    WMC_ASSERT(buckets == io_.inside[v].size(),
               "inside-pair buckets must partition I[v]");
  }

  auto& vt = tables_[v];
  vt.by_mask.assign(std::size_t{1} << out_v.size(), {});
  std::uint64_t vertex_distributions = 0;

  for (std::uint64_t mask = 0; mask < vt.by_mask.size(); ++mask) {
    auto& entry = vt.by_mask[mask];
    // O-partition: pairs whose inside endpoint is v itself force deletion.
    bool o0 = false;
    std::size_t o_count = 0;
    std::vector<std::vector<std::uint32_t>> oi(p);
    for (std::size_t b = 0; b < out_v.size(); ++b) {
      if (((mask >> b) & 1) == 0) continue;
      ++o_count;
      if (out_v[b].inside == v)
        o0 = true;
      else
        oi[child_of(out_v[b].inside)].push_back(out_v[b].pair);
    }
    {
      std::size_t buckets = 0;
      for (const auto& s : oi) buckets += s.size();
      for (std::size_t b = 0; b < out_v.size(); ++b)
        if (((mask >> b) & 1) && out_v[b].inside == v) ++buckets;
      WMC_ASSERT(buckets == o_count, "outgoing buckets must partition O");
    }

    // Deleting v is always an option and the only one when I0/O0 is busy.
    std::optional<Weight> del_w;
    std::vector<VertexId> del_wit;
    if (is_deletable(weights_[v])) {
      del_w = weights_[v];
      del_wit = {v};
      for (int c = 0; c < p && del_w; ++c) {
        auto sub = star_dispatch(children[c], {});
        if (!sub.weight) {
          del_w.reset();
          break;
        }
        del_w = add_weight(*del_w, *sub.weight);
        append_sorted_unique(del_wit, sub.witness);
      }
    }
    if (!i0.empty() || o0) {
      if (del_w) {
        entry.weight = del_w;
        entry.witness = std::move(del_wit);
      }
      continue;
    }
    if (del_w) {
      entry.weight = del_w;
      entry.witness = del_wit;
    }

    // v survives: distribute each cross pair to one of its two branches.
    std::vector<std::uint32_t> choice(cross.size(), 0);
    while (true) {
      ++vertex_distributions;
      ++stats_.distribution_rounds;
      std::vector<std::vector<std::uint32_t>> duty = oi;
      for (int c = 0; c < p; ++c)
        duty[c].insert(duty[c].end(), ii[c].begin(), ii[c].end());
      for (std::size_t cp = 0; cp < cross.size(); ++cp)
        duty[choice[cp] == 0 ? cross[cp].ci : cross[cp].cj].push_back(
            cross[cp].pair);
      std::optional<Weight> total = Weight{0};
      std::vector<VertexId> wit;
      for (int c = 0; c < p && total; ++c) {
        std::sort(duty[c].begin(), duty[c].end());
        auto sub = star_dispatch(children[c], duty[c]);
        if (!sub.weight) {
          total.reset();
          break;
        }
        total = add_weight(*total, *sub.weight);
        append_sorted_unique(wit, sub.witness);
      }
      if (total && (!entry.weight || *total < *entry.weight)) {
        entry.weight = total;
        entry.witness = std::move(wit);
      }
      // odometer
      std::size_t cp = 0;
      while (cp < choice.size() && choice[cp] == 1) choice[cp++] = 0;
      if (cp == choice.size()) break;
      choice[cp] = 1;
    }
  }
  WMC_ASSERT(vertex_distributions <= saturating_pow(3, d_),
             "distribution rounds exceeded 3^d");
  stats_.max_vertex_distributions =
      std::max(stats_.max_vertex_distributions, vertex_distributions);
  vt.filled = true;
  stats_.table_entries += vt.by_mask.size();
}

const LightTableEntry& LightSolver::heavy_query(
    VertexId u, std::vector<std::uint32_t> q_pairs) {
  WMC_ASSERT(!cls_.light[u], "heavy query on a light vertex");
  std::sort(q_pairs.begin(), q_pairs.end());
  q_pairs.erase(std::unique(q_pairs.begin(), q_pairs.end()), q_pairs.end());
  auto key = std::make_pair(u, q_pairs);
  if (auto it = heavy_memo_.find(key); it != heavy_memo_.end())
    return it->second;
  ++stats_.heavy_calls;

  const std::vector<VertexId> t_u = subtree_vertices(tree_, u);
  auto inside_u = [&](VertexId w) { return tree_.is_ancestor(u, w); };
  for (std::uint32_t q : q_pairs) {
    const auto& pr = pairs_[q];
    if (inside_u(pr.s) == inside_u(pr.t))
      throw InputError("heavy query: pair is not outgoing at u");
  }

  // Component members and the light boundary below u.
  const auto& comp =
      cls_.heavy_components[static_cast<std::size_t>(component_of_[u])].vertices;
  std::vector<VertexId> boundary;  // N_u, sorted
  for (VertexId c : comp) {
    for (VertexId w : tree_.children(c))
      if (cls_.light[w]) boundary.push_back(w);
  }
  std::sort(boundary.begin(), boundary.end());

  LightTableEntry result;
  if (boundary.empty()) {
    // The whole subtree is heavy: hand it to the leaves-parameterized
    // engine, rewriting each outgoing pair to end at u.
    auto ex = extract_subtree(tree_, u, t_u);
    std::vector<TerminalPair> local;
    for (const auto& pr : pairs_)
      if (inside_u(pr.s) && inside_u(pr.t))
        local.emplace_back(ex.from_ambient[pr.s], ex.from_ambient[pr.t]);
    for (std::uint32_t q : q_pairs) {
      const auto& pr = pairs_[q];
      VertexId s = inside_u(pr.s) ? pr.s : pr.t;
      local.emplace_back(ex.from_ambient[s], ex.from_ambient[u]);
    }
    std::vector<Weight> wloc(t_u.size());
    for (std::size_t i = 0; i < t_u.size(); ++i) wloc[i] = weights_[t_u[i]];
    ++stats_.base_solver_calls;
    auto sub = tree_multicut(ex.tree, dedup_pairs(std::move(local)), wloc);
    if (sub) {
      result.weight = sub->weight;
      result.witness = sub->vertices;
      for (auto& w : result.witness) w = ex.to_ambient[w];
      std::sort(result.witness.begin(), result.witness.end());
    }
    return heavy_memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  // T'_u: the subtree of u with the boundary subtrees removed; the
  // projection sends boundary subtrees to their component-side parents and
  // everything outside the subtree of u to u itself.
  std::vector<VertexId> keep = t_u;
  std::vector<VertexId> parent_of_boundary(boundary.size());
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    parent_of_boundary[i] = tree_.parent(boundary[i]);
    for (VertexId w : subtree_vertices(tree_, boundary[i])) {
      auto it = std::lower_bound(keep.begin(), keep.end(), w);
      if (it != keep.end() && *it == w) keep.erase(it);
    }
  }
  auto ex = extract_subtree(tree_, u, keep);
  auto project = [&](VertexId w) -> VertexId {
    for (std::size_t i = 0; i < boundary.size(); ++i)
      if (tree_.is_ancestor(boundary[i], w)) return parent_of_boundary[i];
    if (!inside_u(w)) return u;
    return w;
  };

  // Pairs that may still need cutting inside T'_u, before per-distribution
  // filtering: the queried outgoing pairs plus everything inside T_u that is
  // not inside a boundary subtree.
  struct Pending {
    std::uint32_t index;
    TerminalPair original;
    std::int32_t boundary_s, boundary_t;  // boundary subtree index or -1
  };
  std::vector<Pending> pending;
  auto boundary_index = [&](VertexId w) -> std::int32_t {
    for (std::size_t i = 0; i < boundary.size(); ++i)
      if (tree_.is_ancestor(boundary[i], w)) return static_cast<std::int32_t>(i);
    return -1;
  };
  auto consider = [&](std::uint32_t qi) {
    const auto& pr = pairs_[qi];
    std::int32_t bs = boundary_index(pr.s), bt = boundary_index(pr.t);
    if (bs >= 0 && bs == bt) return;  // inside one boundary subtree
    pending.push_back({qi, pr, bs, bt});
  };
  for (std::uint32_t qi = 0; qi < pairs_.size(); ++qi)
    if (inside_u(pairs_[qi].s) && inside_u(pairs_[qi].t)) consider(qi);
  for (std::uint32_t q : q_pairs)
    consider(q);

  // Distributions: guess, for every boundary vertex, which of its outgoing
  // pairs its own subtree solution already cuts.
  const std::size_t lambda = boundary.size();
  std::uint64_t rounds = 0;
  std::vector<std::uint64_t> omask(lambda, 0);
  std::vector<std::vector<std::uint32_t>> bound_sets(lambda);
  std::vector<Weight> wloc(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) wloc[i] = weights_[keep[i]];
  while (true) {
    ++rounds;
    std::optional<Weight> total = Weight{0};
    std::vector<VertexId> wit;
    for (std::size_t i = 0; i < lambda && total; ++i) {
      const auto& out = io_.outgoing[boundary[i]];
      std::vector<std::uint32_t> oi;
      for (std::size_t b = 0; b < out.size(); ++b)
        if ((omask[i] >> b) & 1) oi.push_back(out[b].pair);
      std::sort(oi.begin(), oi.end());
      auto sub = tab(boundary[i], omask[i]);
      if (!sub.weight) {
        total.reset();
        break;
      }
      total = add_weight(*total, *sub.weight);
      append_sorted_unique(wit, sub.witness);
      bound_sets[i] = std::move(oi);
    }
    if (total) {
      std::vector<TerminalPair> projected;
      auto guessed = [&](std::int32_t bi, std::uint32_t qi) {
        if (bi < 0) return false;
        const auto& set = bound_sets[static_cast<std::size_t>(bi)];
        return std::binary_search(set.begin(), set.end(), qi);
      };
      for (const auto& pd : pending) {
        if (guessed(pd.boundary_s, pd.index) || guessed(pd.boundary_t, pd.index))
          continue;
        projected.emplace_back(ex.from_ambient[project(pd.original.s)],
                               ex.from_ambient[project(pd.original.t)]);
      }
      ++stats_.base_solver_calls;
      auto core = tree_multicut(ex.tree, dedup_pairs(std::move(projected)), wloc);
      if (core) {
        Weight cand = add_weight(*total, core->weight);
        if (!result.weight || cand < *result.weight) {
          result.weight = cand;
          for (auto& w : core->vertices) w = ex.to_ambient[w];
          append_sorted_unique(wit, core->vertices);
          result.witness = std::move(wit);
        }
      }
    }
    // odometer over the boundary subsets
    std::size_t i = 0;
    while (i < lambda) {
      std::uint64_t limit =
          (std::uint64_t{1} << io_.outgoing[boundary[i]].size()) - 1;
      if (omask[i] == limit) {
        omask[i] = 0;
        ++i;
      } else {
        ++omask[i];
        break;
      }
    }
    if (i == lambda) break;
  }
  WMC_ASSERT(rounds <= saturating_pow(2, d_ * static_cast<std::uint64_t>(lambda)),
             "heavy distributions exceeded 2^(d*lambda)");
  stats_.max_heavy_distributions =
      std::max(stats_.max_heavy_distributions, rounds);
  return heavy_memo_.emplace(std::move(key), std::move(result)).first->second;
}

void LightSolver::fill() {
  WMC_ASSERT(has_light_vertex(), "fill requires a d-light vertex");
  WMC_ASSERT(!filled_, "fill runs once");
  filled_ = true;
  // Postorder over light vertices: children tables before parents.
  std::vector<VertexId> order;
  std::vector<std::pair<VertexId, bool>> stack{{tree_.root(), false}};
  while (!stack.empty()) {
    auto [v, exiting] = stack.back();
    stack.pop_back();
    if (exiting) {
      order.push_back(v);
      continue;
    }
    stack.emplace_back(v, true);
    for (VertexId c : tree_.children(v)) stack.emplace_back(c, false);
  }
  for (VertexId v : order) {
    if (!cls_.light[v]) continue;
    if (tree_.children(v).empty())
      update_leaf(v);
    else
      update_internal(v);
  }
}

LightResult solve_light(const RootedTree& tree,
                        std::span<const TerminalPair> pairs,
                        std::span<const Weight> weights, std::uint32_t d,
                        std::optional<Weight> budget_w) {
  LightResult res;
  LightSolver solver(tree, pairs, weights, d);
  if (!solver.has_light_vertex()) {
    // No d-light vertex: the whole tree is one heavy component with few
    // leaves, exactly the shape the leaves-parameterized solver handles.
    auto direct = tree_multicut(tree, solver.pairs(), weights);
    res.best = std::move(direct);
    res.stats = solver.stats();
  } else {
    solver.fill();
    const auto& root = solver.root_answer();
    if (root.weight) res.best = Witness{*root.weight, root.witness};
    res.stats = solver.stats();
  }
  if (budget_w) res.decision = res.best && res.best->weight <= *budget_w;
  return res;
}

}  // namespace wmctree
