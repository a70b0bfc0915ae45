#pragma once

#include "wmctree/instance.hpp"
#include "wmctree/solver_leaves.hpp"

namespace wmctree {

enum class Algo { kOracle, kK, kLeaves, kLight, kAuto };

std::optional<Algo> algo_from_name(const std::string& name);
std::string algo_name(Algo algo);

struct SolveOptions {
  Algo algo = Algo::kAuto;
  std::optional<std::int64_t> k;  // overrides the instance budget
  std::optional<Weight> w;
  std::optional<std::uint32_t> d;
  std::string trace_dot_path;  // when set, k/leaves runs dump the branch tree
  std::string config_echo;     // free-form flag echo for the report
};

struct RunReport {
  std::string algo;                    // resolved algorithm tag
  std::string answer;                  // "yes" | "no" | "infeasible"
  std::optional<Weight> min_weight;
  std::vector<VertexId> witness;       // sorted
  std::uint64_t nodes = 0;             // branch nodes or table entries
  std::uint64_t max_depth = 0;
  std::uint64_t case1 = 0;
  std::uint64_t case2 = 0;
  std::uint64_t base_cases = 0;
  std::uint64_t subroutine_calls = 0;
  std::optional<std::uint64_t> bound;  // closed-form branch bound, saturated
  bool within_bound = true;
  double wall_ms = 0.0;
  std::string config_echo;

  bool yes() const { return answer == "yes"; }
};

// Dispatches to the requested solver, verifies any witness against the
// instance, and fills the stats block. InputError on inconsistent options.
RunReport run_solve(const Instance& inst, const SolveOptions& opts);

std::string report_to_json(const RunReport& report);

// Classification report for the classify command, as JSON.
std::string classification_to_json(const Instance& inst, std::uint32_t d,
                                   std::optional<std::uint32_t> q);

std::uint64_t branch_bound_k(std::int64_t k);        // (k+2)^(2k+1), saturated
std::uint64_t branch_bound_leaves(std::uint64_t l);  // 2^(2l+1), saturated

}  // namespace wmctree
