#include <algorithm>

#include "wmctree/base_solvers.hpp"

namespace wmctree {
namespace {

struct LegCandidates {
  // Candidate cut positions: for every constraint threshold on this leg, the
  // cheapest deletable position at or above it, plus the unconstrained
  // cheapest. Sorted ascending, deduplicated.
  std::vector<int> positions;
};

}  // namespace

std::optional<ArclessResult> arcless_solve(const ArclessProblem& problem) {
  const int n_legs = static_cast<int>(problem.legs.size());
  for (const auto& c : problem.constraints) {
    auto check_side = [&](int leg, int pos) {
      if (leg < 0) return;
      if (leg >= n_legs) throw InputError("arcless: constraint leg out of range");
      if (pos < 0 || pos >= static_cast<int>(problem.legs[leg].weights.size()))
        throw InputError("arcless: constraint threshold out of range");
    };
    check_side(c.leg_a, c.pos_a);
    check_side(c.leg_b, c.pos_b);
    if (c.leg_a < 0 && c.leg_b < 0)
      return std::nullopt;  // nothing can satisfy it
  }

  // prefix_best[l][p] = cheapest deletable position <= p on leg l (smallest
  // position among weight ties, for determinism), or -1.
  std::vector<std::vector<int>> prefix_best(n_legs);
  for (int l = 0; l < n_legs; ++l) {
    const auto& wts = problem.legs[l].weights;
    if (wts.empty()) throw InputError("arcless: empty leg");
    prefix_best[l].assign(wts.size(), -1);
    int best = -1;
    for (std::size_t p = 0; p < wts.size(); ++p) {
      if (is_deletable(wts[p]) &&
          (best < 0 || wts[p] < wts[static_cast<std::size_t>(best)]))
        best = static_cast<int>(p);
      prefix_best[l][p] = best;
    }
    if (best < 0) return std::nullopt;  // a leg with no deletable cut at all
  }

  // An optimal assignment can be normalized so that every leg cuts at the
  // cheapest position under some threshold occurring on that leg (or under
  // the full leg length), so those are the only candidates to enumerate.
  std::vector<LegCandidates> cands(n_legs);
  for (int l = 0; l < n_legs; ++l) {
    std::vector<int> thresholds;
    for (const auto& c : problem.constraints) {
      if (c.leg_a == l) thresholds.push_back(c.pos_a);
      if (c.leg_b == l) thresholds.push_back(c.pos_b);
    }
    thresholds.push_back(static_cast<int>(problem.legs[l].weights.size()) - 1);
    std::vector<int>& ps = cands[l].positions;
    for (int t : thresholds) {
      int p = prefix_best[l][static_cast<std::size_t>(t)];
      if (p >= 0) ps.push_back(p);
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    if (ps.empty()) return std::nullopt;
  }

  // Group constraints by the later-assigned leg so each is checked as soon
  // as both sides are fixed.
  std::vector<std::vector<const ArclessConstraint*>> check_at(n_legs);
  for (const auto& c : problem.constraints) {
    int last = std::max(c.leg_a, c.leg_b);
    check_at[static_cast<std::size_t>(last)].push_back(&c);
  }

  std::optional<ArclessResult> best;
  std::vector<int> assign(n_legs, -1);
  Weight acc = 0;

  auto satisfied_side = [&](int leg, int pos) {
    return leg >= 0 && assign[leg] >= 0 && assign[leg] <= pos;
  };

  auto rec = [&](auto&& self, int l) -> void {
    if (l == n_legs) {
      if (!best || acc < best->weight) best = ArclessResult{acc, assign};
      return;
    }
    for (int p : cands[l].positions) {
      Weight w = problem.legs[l].weights[static_cast<std::size_t>(p)];
      Weight next = add_weight(acc, w);
      if (best && next >= best->weight) continue;
      assign[l] = p;
      bool ok = true;
      for (const ArclessConstraint* c : check_at[l]) {
        if (!satisfied_side(c->leg_a, c->pos_a) &&
            !satisfied_side(c->leg_b, c->pos_b)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        Weight saved = acc;
        acc = next;
        self(self, l + 1);
        acc = saved;
      }
      assign[l] = -1;
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace wmctree
