#pragma once

#include <span>
#include <utility>

#include "wmctree/types.hpp"

namespace wmctree {

// Immutable rooted tree over dense vertex ids 0..n-1.
// Children lists are kept sorted so every traversal is deterministic.
class RootedTree {
 public:
  RootedTree() = default;  // empty placeholder; assign before use

  static RootedTree from_parents(VertexId root,
                                 const std::vector<VertexId>& parent);
  static RootedTree from_edges(std::uint32_t n,
                               std::span<const std::pair<VertexId, VertexId>> edges,
                               VertexId root);

  std::uint32_t n() const { return static_cast<std::uint32_t>(parent_.size()); }
  VertexId root() const { return root_; }
  VertexId parent(VertexId v) const { return parent_[v]; }  // kNoVertex at root
  const std::vector<VertexId>& children(VertexId v) const { return children_[v]; }
  std::uint32_t depth(VertexId v) const { return depth_[v]; }
  std::uint32_t degree(VertexId v) const {
    return static_cast<std::uint32_t>(children_[v].size()) +
           (parent_[v] == kNoVertex ? 0u : 1u);
  }

  // Preorder interval test: is `a` an ancestor of `d` (or equal)?
  bool is_ancestor(VertexId a, VertexId d) const {
    return tin_[a] <= tin_[d] && tout_[d] <= tout_[a];
  }

  void check_vertex(VertexId v) const {
    if (v >= n()) throw InputError("bad vertex id " + std::to_string(v));
  }

  std::vector<std::pair<VertexId, VertexId>> undirected_edges() const;

 private:
  void finish();  // fills depth/tin/tout, validates connectivity

  VertexId root_ = 0;
  std::vector<VertexId> parent_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> tin_, tout_;
};

// Same vertex set, new root.
RootedTree reroot(const RootedTree& tree, VertexId new_root);

// Vertices of an induced sub-forest of some ambient tree, plus its roots
// (vertices whose parent lies outside the set). `vertices` sorted ascending.
struct TreeView {
  std::vector<VertexId> vertices;
  std::vector<VertexId> roots;

  bool contains(VertexId v) const;
};

// The four handles of the rooted-subtree notation: the subtree at u, the
// forest strictly below u, and the variants keeping only the branch of u
// that contains x.
struct SubtreeViews {
  TreeView t_u;       // subtree rooted at u
  TreeView t_dag_u;   // t_u minus u (forest)
  TreeView t_ux;      // only the child branch of u containing x (plus u)
  TreeView t_dag_ux;  // t_ux minus u
};

SubtreeViews subtree_views(const RootedTree& tree, VertexId u,
                           std::optional<VertexId> x = std::nullopt);

std::vector<VertexId> subtree_vertices(const RootedTree& tree, VertexId u);

// A standalone tree cut out of an ambient one; to_ambient maps new -> old ids.
struct ExtractedTree {
  RootedTree tree;
  std::vector<VertexId> to_ambient;
  std::vector<VertexId> from_ambient;  // ambient -> new, kNoVertex outside
};

// `vertices` must induce a connected subtree containing `new_root`.
ExtractedTree extract_subtree(const RootedTree& tree, VertexId new_root,
                              const std::vector<VertexId>& vertices);

std::vector<VertexId> path_between(const RootedTree& tree, VertexId x, VertexId y);

VertexId lca(const RootedTree& tree, VertexId u, VertexId v);

bool on_path(const RootedTree& tree, VertexId v, VertexId s, VertexId t);

// Minimal superset of X closed under pairwise lca; sorted ascending.
std::vector<VertexId> lca_closure(const RootedTree& tree,
                                  std::vector<VertexId> x);

// Records vertex identification across edge contractions (the psi map).
struct ContractionMap {
  std::vector<VertexId> forward;            // old id -> new id
  std::vector<std::vector<VertexId>> fibers;  // new id -> sorted old ids
};

struct ContractResult {
  RootedTree tree;
  std::vector<TerminalPair> pairs;
  std::vector<Weight> weights;
  ContractionMap psi;
  VertexId contracted;  // the vertex the path collapsed onto; UNDELETABLE
};

// Contracts the edges of the (y,x)-path (x a descendant of y) onto a single
// undeletable vertex and maps pairs/weights through psi.
ContractResult contract_path(const RootedTree& tree,
                             std::span<const TerminalPair> pairs,
                             std::span<const Weight> weights, VertexId y,
                             VertexId x);

// Pairs with both endpoints inside the (sorted) vertex set.
std::vector<TerminalPair> restrict_pairs(std::span<const TerminalPair> pairs,
                                         const std::vector<VertexId>& sorted_vertices);

struct PairsThrough {
  std::vector<TerminalPair> pairs;
  std::size_t count = 0;
};

// Pairs whose unique path contains v.
PairsThrough pairs_through(const RootedTree& tree,
                           std::span<const TerminalPair> pairs, VertexId v);

struct DegreeClasses {
  std::vector<VertexId> branching;  // undirected degree >= 3
  std::vector<VertexId> leaves;     // undirected degree == 1
};

DegreeClasses degree_classes(const RootedTree& tree);

}  // namespace wmctree
