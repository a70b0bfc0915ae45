#pragma once

#include "wmctree/tree.hpp"

namespace wmctree {

// Exhaustive reference solvers. Enumeration is restricted to deletable
// vertices lying on at least one relevant pair path; ties between
// equal-weight minima resolve to the lexicographically smallest vertex set,
// so expected values frozen from these are reproducible.
struct OracleConfig {
  std::uint32_t max_n = 18;
};

OptWitness brute_min_multicut(const RootedTree& tree,
                              std::span<const TerminalPair> pairs,
                              std::span<const Weight> weights,
                              std::optional<std::int64_t> size_cap = std::nullopt,
                              const OracleConfig& cfg = {});

struct VertexCoverResult {
  std::size_t size = 0;
  std::vector<VertexId> vertices;
};

VertexCoverResult brute_vertex_cover(
    std::uint32_t n, std::span<const std::pair<VertexId, VertexId>> edges,
    const OracleConfig& cfg = {});

// Definitional value of the light-DP table entry: min weight of a subset of
// T_v that multicuts the pairs inside T_v and hits every O-pair's path in the
// full tree.
std::optional<Weight> brute_tab_entry(const RootedTree& tree,
                                      std::span<const TerminalPair> pairs,
                                      std::span<const Weight> weights,
                                      VertexId v,
                                      std::span<const TerminalPair> out_pairs,
                                      const OracleConfig& cfg = {});

}  // namespace wmctree
