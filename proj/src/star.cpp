#include <algorithm>
#include <map>
#include <unordered_map>

#include "wmctree/base_solvers.hpp"

namespace wmctree {
namespace {

struct LegPos {
  int leg = -1;
  int pos = -1;  // 0 = adjacent to the center
};

struct ThroughPair {
  LegPos a, b;  // leg == -1 when the endpoint sits on the center
};

struct StarComponent {
  bool is_path = false;
  std::vector<VertexId> path;  // when is_path
  VertexId center = kNoVertex;
  std::vector<std::vector<VertexId>> legs;  // center excluded
};

std::vector<StarComponent> decompose(const RootedTree& tree,
                                     const std::vector<VertexId>& vertices) {
  auto in = [&](VertexId v) {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  };
  std::unordered_map<VertexId, std::vector<VertexId>> adj;
  for (VertexId v : vertices) adj[v];
  for (VertexId v : vertices) {
    VertexId p = tree.parent(v);
    if (p != kNoVertex && in(p)) {
      adj[v].push_back(p);
      adj[p].push_back(v);
    }
  }
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());

  std::unordered_map<VertexId, bool> seen;
  std::vector<StarComponent> comps;
  for (VertexId start : vertices) {
    if (seen[start]) continue;
    std::vector<VertexId> comp;
    std::vector<VertexId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (VertexId w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    VertexId center = kNoVertex;
    for (VertexId v : comp) {
      if (adj[v].size() >= 3) {
        if (center != kNoVertex)
          throw InputError("star multicut: component has two branching vertices");
        center = v;
      }
    }
    StarComponent sc;
    if (center == kNoVertex) {
      sc.is_path = true;
      // Walk from the smallest-id endpoint.
      VertexId end = comp[0];
      for (VertexId v : comp)
        if (adj[v].size() <= 1) {
          end = v;
          break;
        }
      VertexId prev = kNoVertex, cur = end;
      while (true) {
        sc.path.push_back(cur);
        VertexId next = kNoVertex;
        for (VertexId w : adj[cur])
          if (w != prev) next = w;
        if (next == kNoVertex) break;
        prev = cur;
        cur = next;
      }
    } else {
      sc.center = center;
      for (VertexId first : adj[center]) {
        std::vector<VertexId> leg;
        VertexId prev = center, cur = first;
        while (true) {
          leg.push_back(cur);
          VertexId next = kNoVertex;
          for (VertexId w : adj[cur])
            if (w != prev) next = w;
          if (next == kNoVertex) break;
          prev = cur;
          cur = next;
        }
        sc.legs.push_back(std::move(leg));
      }
    }
    comps.push_back(std::move(sc));
  }
  return comps;
}

struct SameLegPair {
  int leg;
  int lo, hi;  // position interval of the pair path
};

OptWitness solve_star(const StarComponent& sc,
                      const std::vector<TerminalPair>& pairs,
                      std::span<const Weight> weights) {
  const VertexId r = sc.center;
  std::unordered_map<VertexId, LegPos> where;
  for (int l = 0; l < static_cast<int>(sc.legs.size()); ++l)
    for (int p = 0; p < static_cast<int>(sc.legs[l].size()); ++p)
      where[sc.legs[l][p]] = {l, p};

  std::vector<SameLegPair> same_leg;
  std::vector<ThroughPair> through;
  for (const auto& pr : pairs) {
    LegPos a = pr.s == r ? LegPos{} : where.at(pr.s);
    LegPos b = pr.t == r ? LegPos{} : where.at(pr.t);
    if (a.leg >= 0 && a.leg == b.leg) {
      same_leg.push_back({a.leg, std::min(a.pos, b.pos), std::max(a.pos, b.pos)});
    } else {
      through.push_back({a, b});
    }
  }

  // Branch A: the center is deleted. Remaining pairs live inside the legs.
  OptWitness best;
  if (is_deletable(weights[r])) {
    PathForest legs_forest;
    legs_forest.components = sc.legs;
    std::vector<TerminalPair> leg_pairs;
    for (const auto& sl : same_leg)
      leg_pairs.emplace_back(sc.legs[sl.leg][sl.lo], sc.legs[sl.leg][sl.hi]);
    if (auto sub = path_multicut(legs_forest, leg_pairs, weights)) {
      sub->weight = add_weight(sub->weight, weights[r]);
      sub->vertices.push_back(r);
      std::sort(sub->vertices.begin(), sub->vertices.end());
      take_min(best, std::move(sub));
    }
  }

  // Branch B: the center stays. Phase 1 repeatedly truncates the leg that
  // holds the shallowest fully-off-center pair, folding the cost of the cut
  // part below each candidate vertex into that vertex's weight.
  std::vector<std::vector<VertexId>> legs = sc.legs;
  std::vector<std::vector<SameLegPair>> per_leg(legs.size());
  for (const auto& sl : same_leg) per_leg[sl.leg].push_back(sl);
  std::vector<Weight> wt(weights.begin(), weights.end());
  std::unordered_map<VertexId, std::vector<VertexId>> fold_witness;

  while (true) {
    int pick_leg = -1, pick_pos = -1;
    for (int l = 0; l < static_cast<int>(legs.size()); ++l) {
      int b = -1;
      for (const auto& sl : per_leg[l]) b = b < 0 ? sl.hi : std::min(b, sl.hi);
      if (b < 0) continue;
      if (pick_leg < 0 || b < pick_pos ||
          (b == pick_pos && legs[l][b] < legs[pick_leg][pick_pos])) {
        pick_leg = l;
        pick_pos = b;
      }
    }
    if (pick_leg < 0) break;
    const auto& leg = legs[pick_leg];
    // Fold the tail below every candidate position.
    for (int pos = 0; pos <= pick_pos; ++pos) {
      std::vector<VertexId> tail(leg.begin() + pos + 1, leg.end());
      std::vector<TerminalPair> tail_pairs;
      for (const auto& sl : per_leg[pick_leg])
        if (sl.lo > pos) tail_pairs.emplace_back(leg[sl.lo], leg[sl.hi]);
      PathForest pf;
      if (!tail.empty()) pf.components.push_back(tail);
      auto fold = path_multicut(pf, tail_pairs, wt);
      if (!fold) {
        wt[leg[pos]] = kUndeletable;
      } else if (is_deletable(wt[leg[pos]])) {
        wt[leg[pos]] = add_weight(wt[leg[pos]], fold->weight);
        if (!fold->vertices.empty()) fold_witness[leg[pos]] = fold->vertices;
      }
    }
    legs[pick_leg].resize(pick_pos + 1);
    per_leg[pick_leg].clear();
    // Pairs leaving through the truncated tail are dominated by the new
    // (center, z) pair: any admissible cut on this leg hits them too.
    std::erase_if(through, [&](const ThroughPair& tp) {
      return (tp.a.leg == pick_leg && tp.a.pos > pick_pos) ||
             (tp.b.leg == pick_leg && tp.b.pos > pick_pos);
    });
    through.push_back({LegPos{pick_leg, pick_pos}, LegPos{}});
  }

  // Phase 2: guess the set of legs the solution intersects, contract the
  // rest onto the center, and solve the arcless core. Legs carrying no
  // constraint side are never cut by a minimal solution, so guessing is
  // confined to the relevant ones.
  const int n_legs = static_cast<int>(legs.size());
  bool impossible = false;
  for (const auto& tp : through)
    if (tp.a.leg < 0 && tp.b.leg < 0) impossible = true;  // center-only pair
  std::vector<int> relevant;
  {
    std::vector<bool> seen_leg(legs.size(), false);
    for (const auto& tp : through) {
      if (tp.a.leg >= 0) seen_leg[tp.a.leg] = true;
      if (tp.b.leg >= 0) seen_leg[tp.b.leg] = true;
    }
    for (int l = 0; l < n_legs; ++l)
      if (seen_leg[l]) relevant.push_back(l);
  }
  if (relevant.size() > 30)
    throw CapacityError("star multicut: too many constrained legs");
  if (!impossible) {
    for (std::uint32_t guess = 0; guess < (std::uint32_t{1} << relevant.size());
         ++guess) {
      std::vector<int> leg_index(n_legs, -1);
      ArclessProblem prob;
      for (std::size_t ri = 0; ri < relevant.size(); ++ri) {
        if (((guess >> ri) & 1) == 0) continue;
        int l = relevant[ri];
        leg_index[l] = static_cast<int>(prob.legs.size());
        ArclessLeg al;
        al.vertices = legs[l];
        for (VertexId v : legs[l]) al.weights.push_back(wt[v]);
        prob.legs.push_back(std::move(al));
      }
      bool valid = true;
      for (const auto& tp : through) {
        ArclessConstraint c;
        if (tp.a.leg >= 0 && leg_index[tp.a.leg] >= 0) {
          c.leg_a = leg_index[tp.a.leg];
          c.pos_a = tp.a.pos;
        }
        if (tp.b.leg >= 0 && leg_index[tp.b.leg] >= 0) {
          c.leg_b = leg_index[tp.b.leg];
          c.pos_b = tp.b.pos;
        }
        if (c.leg_a < 0 && c.leg_b < 0) {
          valid = false;
          break;
        }
        prob.constraints.push_back(c);
      }
      if (!valid) continue;
      auto res = arcless_solve(prob);
      if (!res) continue;
      Witness cand;
      cand.weight = res->weight;
      for (std::size_t i = 0; i < prob.legs.size(); ++i) {
        VertexId v = prob.legs[i].vertices[static_cast<std::size_t>(res->cut_positions[i])];
        cand.vertices.push_back(v);
        if (auto it = fold_witness.find(v); it != fold_witness.end())
          cand.vertices.insert(cand.vertices.end(), it->second.begin(),
                               it->second.end());
      }
      std::sort(cand.vertices.begin(), cand.vertices.end());
      take_min(best, std::move(cand));
    }
  }
  return best;
}

}  // namespace

OptWitness star_multicut_on(const RootedTree& tree,
                            const std::vector<VertexId>& vertices,
                            std::span<const TerminalPair> pairs,
                            std::span<const Weight> weights) {
  WMC_ASSERT(weights.size() == tree.n(), "weight map size mismatch");
  auto comps = decompose(tree, vertices);
  // Route pairs to their components.
  std::unordered_map<VertexId, int> comp_of;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    const auto& sc = comps[c];
    if (sc.is_path) {
      for (VertexId v : sc.path) comp_of[v] = c;
    } else {
      comp_of[sc.center] = c;
      for (const auto& leg : sc.legs)
        for (VertexId v : leg) comp_of[v] = c;
    }
  }
  std::vector<std::vector<TerminalPair>> comp_pairs(comps.size());
  for (const auto& p : pairs) {
    auto is = comp_of.find(p.s), it = comp_of.find(p.t);
    if (is == comp_of.end() || it == comp_of.end() || is->second != it->second)
      throw InputError("star multicut: pair not inside one component");
    comp_pairs[static_cast<std::size_t>(is->second)].push_back(p);
  }

  Witness total;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    OptWitness sub;
    if (comps[c].is_path) {
      PathForest pf;
      pf.components.push_back(comps[c].path);
      sub = path_multicut(pf, comp_pairs[c], weights);
    } else {
      sub = solve_star(comps[c], comp_pairs[c], weights);
    }
    if (!sub) return std::nullopt;
    total.weight = add_weight(total.weight, sub->weight);
    total.vertices.insert(total.vertices.end(), sub->vertices.begin(),
                          sub->vertices.end());
  }
  std::sort(total.vertices.begin(), total.vertices.end());
  return total;
}

OptWitness star_multicut(const RootedTree& tree,
                         std::span<const TerminalPair> pairs,
                         std::span<const Weight> weights) {
  std::vector<VertexId> all(tree.n());
  for (VertexId v = 0; v < tree.n(); ++v) all[v] = v;
  return star_multicut_on(tree, all, pairs, weights);
}

}  // namespace wmctree
