#include "wmctree/tree.hpp"

#include <algorithm>
#include <numeric>

#include "wmctree/instance.hpp"

namespace wmctree {

std::vector<TerminalPair> dedup_pairs(std::vector<TerminalPair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

Solution Solution::from_vertices(std::vector<VertexId> vs,
                                 const std::vector<Weight>& weights) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  Solution sol;
  sol.total_weight = 0;
  for (VertexId v : vs) {
    WMC_ASSERT(v < weights.size(), "solution vertex out of range");
    WMC_ASSERT(is_deletable(weights[v]), "solution contains undeletable vertex");
    sol.total_weight = add_weight(sol.total_weight, weights[v]);
  }
  sol.size = vs.size();
  sol.vertices = std::move(vs);
  return sol;
}

RootedTree RootedTree::from_parents(VertexId root,
                                    const std::vector<VertexId>& parent) {
  RootedTree t;
  const auto n = static_cast<std::uint32_t>(parent.size());
  if (n == 0) throw InputError("empty tree");
  if (root >= n) throw InputError("root out of range");
  t.root_ = root;
  t.parent_ = parent;
  t.children_.assign(n, {});
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) {
      if (parent[v] != kNoVertex) throw InputError("root must have no parent");
      continue;
    }
    if (parent[v] >= n) throw InputError("bad parent id");
    t.children_[parent[v]].push_back(v);
  }
  t.finish();
  return t;
}

RootedTree RootedTree::from_edges(
    std::uint32_t n, std::span<const std::pair<VertexId, VertexId>> edges,
    VertexId root) {
  if (n == 0) throw InputError("empty tree");
  if (edges.size() != n - 1) throw InputError("not a tree: edge count != n-1");
  if (root >= n) throw InputError("root out of range");
  std::vector<std::vector<VertexId>> adj(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("bad vertex id in edge");
    if (u == v) throw InputError("not a tree: self-loop");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (VertexId v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      parent[v] = u;
      stack.push_back(v);
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw InputError("not a tree: disconnected");
  return from_parents(root, parent);
}

void RootedTree::finish() {
  const auto n = this->n();
  for (auto& cs : children_) std::sort(cs.begin(), cs.end());
  depth_.assign(n, 0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  std::uint32_t clock = 0;
  std::uint32_t visited = 0;
  // Iterative preorder with explicit exit events.
  std::vector<std::pair<VertexId, bool>> stack{{root_, false}};
  while (!stack.empty()) {
    auto [v, exiting] = stack.back();
    stack.pop_back();
    if (exiting) {
      tout_[v] = clock;
      continue;
    }
    ++visited;
    tin_[v] = clock++;
    stack.emplace_back(v, true);
    const auto& cs = children_[v];
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
      depth_[*it] = depth_[v] + 1;
      stack.emplace_back(*it, false);
    }
  }
  if (visited != n) throw InputError("not a tree: cycle or disconnected");
}

std::vector<std::pair<VertexId, VertexId>> RootedTree::undirected_edges() const {
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(n() > 0 ? n() - 1 : 0);
  for (VertexId v = 0; v < n(); ++v)
    if (parent_[v] != kNoVertex) edges.emplace_back(parent_[v], v);
  return edges;
}

RootedTree reroot(const RootedTree& tree, VertexId new_root) {
  tree.check_vertex(new_root);
  if (new_root == tree.root()) return tree;
  return RootedTree::from_edges(tree.n(), tree.undirected_edges(), new_root);
}

bool TreeView::contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::vector<VertexId> subtree_vertices(const RootedTree& tree, VertexId u) {
  std::vector<VertexId> out;
  std::vector<VertexId> stack{u};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (VertexId c : tree.children(v)) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubtreeViews subtree_views(const RootedTree& tree, VertexId u,
                           std::optional<VertexId> x) {
  tree.check_vertex(u);
  SubtreeViews views;
  views.t_u.vertices = subtree_vertices(tree, u);
  views.t_u.roots = {u};
  views.t_dag_u.vertices = views.t_u.vertices;
  views.t_dag_u.vertices.erase(
      std::lower_bound(views.t_dag_u.vertices.begin(),
                       views.t_dag_u.vertices.end(), u));
  views.t_dag_u.roots = tree.children(u);

  if (!x) return views;
  tree.check_vertex(*x);
  if (!tree.is_ancestor(u, *x))
    throw InputError("subtree_views: x is not a descendant of u");
  if (*x == u) {
    // Convention from the branch-vertex arguments: keeping "the branch of u
    // containing u" keeps everything below u.
    views.t_ux = views.t_u;
    views.t_dag_ux = views.t_dag_u;
    return views;
  }
  VertexId branch_child = kNoVertex;
  for (VertexId c : tree.children(u)) {
    if (tree.is_ancestor(c, *x)) {
      branch_child = c;
      break;
    }
  }
  WMC_ASSERT(branch_child != kNoVertex, "descendant without child branch");
  views.t_dag_ux.vertices = subtree_vertices(tree, branch_child);
  views.t_dag_ux.roots = {branch_child};
  views.t_ux.vertices = views.t_dag_ux.vertices;
  views.t_ux.vertices.insert(
      std::lower_bound(views.t_ux.vertices.begin(), views.t_ux.vertices.end(), u),
      u);
  views.t_ux.roots = {u};
  return views;
}

ExtractedTree extract_subtree(const RootedTree& tree, VertexId new_root,
                              const std::vector<VertexId>& vertices) {
  ExtractedTree out;
  out.to_ambient = vertices;
  out.from_ambient.assign(tree.n(), kNoVertex);
  for (std::uint32_t i = 0; i < vertices.size(); ++i)
    out.from_ambient[vertices[i]] = i;
  std::vector<VertexId> parent(vertices.size(), kNoVertex);
  for (std::uint32_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == new_root) continue;
    VertexId p = tree.parent(vertices[i]);
    WMC_ASSERT(p != kNoVertex && out.from_ambient[p] != kNoVertex,
               "extract_subtree: set not a subtree under new_root");
    parent[i] = out.from_ambient[p];
  }
  out.tree = RootedTree::from_parents(out.from_ambient[new_root], parent);
  return out;
}

std::vector<VertexId> path_between(const RootedTree& tree, VertexId x,
                                   VertexId y) {
  tree.check_vertex(x);
  tree.check_vertex(y);
  std::vector<VertexId> up_x, up_y;
  VertexId a = x, b = y;
  while (tree.depth(a) > tree.depth(b)) {
    up_x.push_back(a);
    a = tree.parent(a);
  }
  while (tree.depth(b) > tree.depth(a)) {
    up_y.push_back(b);
    b = tree.parent(b);
  }
  while (a != b) {
    up_x.push_back(a);
    up_y.push_back(b);
    a = tree.parent(a);
    b = tree.parent(b);
  }
  up_x.push_back(a);
  up_x.insert(up_x.end(), up_y.rbegin(), up_y.rend());
  return up_x;
}

VertexId lca(const RootedTree& tree, VertexId u, VertexId v) {
  tree.check_vertex(u);
  tree.check_vertex(v);
  while (tree.depth(u) > tree.depth(v)) u = tree.parent(u);
  while (tree.depth(v) > tree.depth(u)) v = tree.parent(v);
  while (u != v) {
    u = tree.parent(u);
    v = tree.parent(v);
  }
  return u;
}

bool on_path(const RootedTree& tree, VertexId v, VertexId s, VertexId t) {
  VertexId l = lca(tree, s, t);
  return tree.is_ancestor(l, v) &&
         (tree.is_ancestor(v, s) || tree.is_ancestor(v, t));
}

std::vector<VertexId> lca_closure(const RootedTree& tree,
                                  std::vector<VertexId> x) {
  for (VertexId v : x) tree.check_vertex(v);
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  std::vector<VertexId> worklist = x;
  while (!worklist.empty()) {
    VertexId v = worklist.back();
    worklist.pop_back();
    for (std::size_t i = 0; i < x.size(); ++i) {
      VertexId w = lca(tree, v, x[i]);
      auto it = std::lower_bound(x.begin(), x.end(), w);
      if (it == x.end() || *it != w) {
        x.insert(it, w);
        worklist.push_back(w);
      }
    }
  }
  return x;
}

ContractResult contract_path(const RootedTree& tree,
                             std::span<const TerminalPair> pairs,
                             std::span<const Weight> weights, VertexId y,
                             VertexId x) {
  tree.check_vertex(y);
  tree.check_vertex(x);
  if (!tree.is_ancestor(y, x))
    throw InputError("contract_path: x is not a descendant of y");
  WMC_ASSERT(weights.size() == tree.n(), "weight map size mismatch");

  const std::vector<VertexId> path = path_between(tree, y, x);
  std::vector<bool> on(tree.n(), false);
  for (VertexId v : path) on[v] = true;

  ContractResult res;
  auto& psi = res.psi;
  psi.forward.assign(tree.n(), kNoVertex);
  // Representatives keep ascending old-id order; the whole path is
  // represented by y.
  std::uint32_t next = 0;
  for (VertexId v = 0; v < tree.n(); ++v) {
    if (on[v] && v != y) continue;
    psi.forward[v] = next++;
  }
  for (VertexId v : path) psi.forward[v] = psi.forward[y];
  res.contracted = psi.forward[y];
  psi.fibers.assign(next, {});
  for (VertexId v = 0; v < tree.n(); ++v) psi.fibers[psi.forward[v]].push_back(v);

  std::vector<VertexId> parent(next, kNoVertex);
  for (VertexId v = 0; v < tree.n(); ++v) {
    VertexId p = tree.parent(v);
    if (p == kNoVertex) continue;
    if (psi.forward[v] == psi.forward[p]) continue;  // contracted edge
    parent[psi.forward[v]] = psi.forward[p];
  }
  res.tree = RootedTree::from_parents(psi.forward[tree.root()], parent);

  res.weights.assign(next, 0);
  for (VertexId v = 0; v < tree.n(); ++v)
    if (!on[v]) res.weights[psi.forward[v]] = weights[v];
  res.weights[res.contracted] = kUndeletable;

  res.pairs.reserve(pairs.size());
  for (const auto& p : pairs)
    res.pairs.emplace_back(psi.forward[p.s], psi.forward[p.t]);
  res.pairs = dedup_pairs(std::move(res.pairs));
  return res;
}

std::vector<TerminalPair> restrict_pairs(
    std::span<const TerminalPair> pairs,
    const std::vector<VertexId>& sorted_vertices) {
  auto in = [&](VertexId v) {
    return std::binary_search(sorted_vertices.begin(), sorted_vertices.end(), v);
  };
  std::vector<TerminalPair> out;
  for (const auto& p : pairs)
    if (in(p.s) && in(p.t)) out.push_back(p);
  return out;
}

PairsThrough pairs_through(const RootedTree& tree,
                           std::span<const TerminalPair> pairs, VertexId v) {
  tree.check_vertex(v);
  PairsThrough res;
  for (const auto& p : pairs)
    if (on_path(tree, v, p.s, p.t)) res.pairs.push_back(p);
  res.count = res.pairs.size();
  return res;
}

DegreeClasses degree_classes(const RootedTree& tree) {
  DegreeClasses dc;
  for (VertexId v = 0; v < tree.n(); ++v) {
    std::uint32_t d = tree.degree(v);
    if (d >= 3) dc.branching.push_back(v);
    if (d == 1) dc.leaves.push_back(v);
  }
  return dc;
}

Instance Instance::make(RootedTree tree, std::vector<TerminalPair> pairs,
                        std::vector<Weight> weights,
                        std::optional<Weight> budget_w,
                        std::optional<std::int64_t> budget_k) {
  if (weights.size() != tree.n())
    throw InputError("weight map size does not match vertex count");
  Weight total = 0;
  for (Weight w : weights) {
    if (!is_deletable(w)) continue;
    total += w;
    if (total > kWeightSumCap)
      throw InputError("sum of finite weights exceeds 2^62 cap");
  }
  for (const auto& p : pairs) {
    tree.check_vertex(p.s);
    tree.check_vertex(p.t);
  }
  if (budget_k && *budget_k < 0) throw InputError("negative size budget");
  Instance inst;
  inst.tree = std::move(tree);
  inst.pairs = dedup_pairs(std::move(pairs));
  inst.weights = std::move(weights);
  inst.budget_w = budget_w;
  inst.budget_k = budget_k;
  return inst;
}

Solution solution_from(const Instance& inst, std::vector<VertexId> vertices) {
  for (VertexId v : vertices) inst.tree.check_vertex(v);
  return Solution::from_vertices(std::move(vertices), inst.weights);
}

VerifyResult verify_solution(const Instance& inst, const Solution& sol) {
  VerifyResult res;
  for (VertexId v : sol.vertices) {
    if (v >= inst.n()) {
      res.ok = false;
      res.violation = "bad vertex id " + std::to_string(v);
      return res;
    }
    if (!is_deletable(inst.weights[v])) {
      res.ok = false;
      res.violation = "undeletable vertex " + std::to_string(v) + " in solution";
      return res;
    }
  }
  for (const auto& p : inst.pairs) {
    bool hit = false;
    for (VertexId v : sol.vertices) {
      if (on_path(inst.tree, v, p.s, p.t)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      res.ok = false;
      res.violation = "uncut pair (" + std::to_string(p.s) + "," +
                      std::to_string(p.t) + ")";
      res.violated_pair = p;
      return res;
    }
  }
  Weight total = 0;
  for (VertexId v : sol.vertices) total = add_weight(total, inst.weights[v]);
  if (total != sol.total_weight || sol.size != sol.vertices.size()) {
    res.ok = false;
    res.violation = "solution totals inconsistent with vertex set";
    return res;
  }
  if (inst.budget_w && total > *inst.budget_w) {
    res.ok = false;
    res.violation = "weight exceeded";
    return res;
  }
  if (inst.budget_k &&
      sol.vertices.size() > static_cast<std::size_t>(*inst.budget_k)) {
    res.ok = false;
    res.violation = "size exceeded";
    return res;
  }
  return res;
}

}  // namespace wmctree
