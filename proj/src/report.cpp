#include <chrono>
#include <fstream>

#include "json.hpp"
#include "wmctree/oracle.hpp"
#include "wmctree/report.hpp"
#include "wmctree/solver_k.hpp"
#include "wmctree/solver_light.hpp"

namespace wmctree {
namespace {

using nlohmann::json;

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

void write_trace(const std::string& path, const Trace& trace) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open trace file " + path);
  f << trace_to_dot(trace);
}

struct AutoPick {
  Algo algo = Algo::kLeaves;
  std::optional<std::uint32_t> d;
};

AutoPick pick_auto(const Instance& inst, const SolveOptions& opts,
                   bool has_w, bool has_k) {
  if (inst.n() <= 14) return {Algo::kOracle, {}};
  if (degree_classes(inst.tree).leaves.size() <= 6) return {Algo::kLeaves, {}};
  if (has_w) {
    for (std::uint32_t d = 0; d <= 3; ++d) {
      auto cls = classify_light(inst.tree, inst.pairs, d);
      if (cls.any_light() && cls.is_dq_light(6)) return {Algo::kLight, d};
    }
  }
  if (has_k && has_w) return {Algo::kK, {}};
  (void)opts;
  return {Algo::kLeaves, {}};
}

}  // namespace

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "oracle") return Algo::kOracle;
  if (name == "k") return Algo::kK;
  if (name == "leaves") return Algo::kLeaves;
  if (name == "light") return Algo::kLight;
  if (name == "auto") return Algo::kAuto;
  return std::nullopt;
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::kOracle: return "oracle";
    case Algo::kK: return "k";
    case Algo::kLeaves: return "leaves";
    case Algo::kLight: return "light";
    case Algo::kAuto: return "auto";
  }
  return "auto";
}

std::uint64_t branch_bound_k(std::int64_t k) {
  if (k < 0) return 1;
  return saturating_pow(static_cast<std::uint64_t>(k) + 2,
                        2 * static_cast<std::uint64_t>(k) + 1);
}

std::uint64_t branch_bound_leaves(std::uint64_t l) {
  return 2 * l + 1 >= 64 ? std::numeric_limits<std::uint64_t>::max()
                         : (std::uint64_t{1} << (2 * l + 1));
}

RunReport run_solve(const Instance& inst, const SolveOptions& opts) {
  RunReport rep;
  rep.config_echo = opts.config_echo;
  const std::optional<Weight> budget_w = opts.w ? opts.w : inst.budget_w;
  const std::optional<std::int64_t> budget_k =
      opts.k ? opts.k : inst.budget_k;

  Algo algo = opts.algo;
  std::optional<std::uint32_t> light_d = opts.d;
  if (algo == Algo::kAuto) {
    auto pick = pick_auto(inst, opts, budget_w.has_value(), budget_k.has_value());
    algo = pick.algo;
    if (!light_d) light_d = pick.d;
  }
  rep.algo = algo_name(algo);
  if (!opts.trace_dot_path.empty() && algo != Algo::kK && algo != Algo::kLeaves)
    throw InputError("--trace requires a branching algorithm (k or leaves)");

  const auto t0 = std::chrono::steady_clock::now();
  switch (algo) {
    case Algo::kK: {
      if (!budget_k) throw InputError("algorithm k requires --k");
      if (!budget_w) throw InputError("algorithm k requires --w");
      Instance tuned = inst;
      tuned.budget_k = budget_k;
      tuned.budget_w = budget_w;
      Trace trace;
      KResult res = solve_k(tuned, opts.trace_dot_path.empty() ? nullptr : &trace);
      if (!opts.trace_dot_path.empty()) write_trace(opts.trace_dot_path, trace);
      rep.answer = res.yes ? "yes" : "no";
      if (res.witness) {
        rep.min_weight = res.witness->total_weight;
        rep.witness = res.witness->vertices;
      }
      rep.nodes = res.stats.node_count;
      rep.max_depth = res.stats.max_depth;
      rep.case1 = res.stats.case1;
      rep.case2 = res.stats.case2;
      rep.base_cases = res.stats.base_cases;
      rep.subroutine_calls = res.stats.subroutine_calls;
      rep.bound = branch_bound_k(*budget_k);
      break;
    }
    case Algo::kLeaves: {
      Trace trace;
      auto res = solve_leaves(inst.tree, inst.pairs, inst.weights,
                              opts.trace_dot_path.empty() ? nullptr : &trace);
      if (!opts.trace_dot_path.empty()) write_trace(opts.trace_dot_path, trace);
      if (!res.best) {
        rep.answer = "infeasible";
      } else if (budget_w) {
        rep.answer = res.best->weight <= *budget_w ? "yes" : "no";
      } else {
        rep.answer = "yes";
      }
      if (res.best) {
        rep.min_weight = res.best->weight;
        rep.witness = res.best->vertices;
      }
      rep.nodes = res.stats.node_count;
      rep.max_depth = res.stats.max_depth;
      rep.case1 = res.stats.case1;
      rep.case2 = res.stats.case2;
      rep.base_cases = res.stats.base_cases;
      rep.subroutine_calls = res.stats.subroutine_calls;
      rep.bound = branch_bound_leaves(degree_classes(inst.tree).leaves.size());
      break;
    }
    case Algo::kLight: {
      if (!light_d) throw InputError("algorithm light requires --d");
      if (!budget_w) throw InputError("algorithm light requires --w");
      auto res = solve_light(inst.tree, inst.pairs, inst.weights, *light_d,
                             budget_w);
      if (!res.best) {
        rep.answer = "infeasible";
      } else if (res.decision) {
        rep.answer = *res.decision ? "yes" : "no";
      } else {
        rep.answer = "yes";
      }
      if (res.best) {
        rep.min_weight = res.best->weight;
        rep.witness = res.best->vertices;
      }
      rep.nodes = res.stats.table_entries;
      rep.subroutine_calls = res.stats.base_solver_calls + res.stats.heavy_calls;
      break;
    }
    case Algo::kOracle: {
      auto res = brute_min_multicut(inst.tree, inst.pairs, inst.weights,
                                    budget_k);
      if (!res) {
        rep.answer = "infeasible";
      } else if (budget_w) {
        rep.answer = res->weight <= *budget_w ? "yes" : "no";
      } else {
        rep.answer = "yes";
      }
      if (res) {
        rep.min_weight = res->weight;
        rep.witness = res->vertices;
      }
      rep.nodes = 1;
      break;
    }
    case Algo::kAuto:
      internal_failure("auto must resolve before dispatch");
  }
  const auto t1 = std::chrono::steady_clock::now();
  rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (rep.bound) rep.within_bound = rep.nodes <= *rep.bound;

  if (!rep.witness.empty() || rep.answer == "yes") {
    // Any reported witness must verify against the *unbudgeted* instance;
    // budget conformance is what the answer field already states.
    Instance check = inst;
    check.budget_w = std::nullopt;
    check.budget_k = std::nullopt;
    Solution sol = solution_from(check, rep.witness);
    auto v = verify_solution(check, sol);
    WMC_ASSERT(v.ok, "report witness failed verification: " + v.violation);
  }
  return rep;
}

std::string report_to_json(const RunReport& rep) {
  json j;
  j["algo"] = rep.algo;
  j["answer"] = rep.answer;
  if (rep.min_weight)
    j["min_weight"] = *rep.min_weight;
  else
    j["min_weight"] = nullptr;
  j["witness"] = rep.witness;
  j["stats"] = {
      {"nodes", rep.nodes},
      {"max_depth", rep.max_depth},
      {"case1", rep.case1},
      {"case2", rep.case2},
      {"base_cases", rep.base_cases},
      {"subroutine_calls", rep.subroutine_calls},
      {"wall_ms", rep.wall_ms},
  };
  if (rep.bound) {
    j["bound"] = *rep.bound;
    j["within_bound"] = rep.within_bound;
  }
  if (!rep.config_echo.empty()) j["config"] = rep.config_echo;
  return j.dump(2);
}

std::string classification_to_json(const Instance& inst, std::uint32_t d,
                                   std::optional<std::uint32_t> q) {
  auto cls = classify_light(inst.tree, inst.pairs, d);
  json j;
  j["d"] = d;
  j["n"] = inst.n();
  std::vector<VertexId> light, heavy;
  for (VertexId v = 0; v < inst.n(); ++v)
    (cls.light[v] ? light : heavy).push_back(v);
  j["light"] = light;
  j["heavy"] = heavy;
  j["paths_through"] = cls.paths_through;
  json comps = json::array();
  for (const auto& c : cls.heavy_components)
    comps.push_back({{"vertices", c.vertices},
                     {"closed_neighborhood_leaves", c.closed_neighborhood_leaves}});
  j["heavy_components"] = comps;
  if (q) {
    j["q"] = *q;
    j["dq_light"] = cls.is_dq_light(*q);
  }
  return j.dump(2);
}

}  // namespace wmctree
