#pragma once

#include "wmctree/instance.hpp"

namespace wmctree {

// Text format, one record per line, `#` comments allowed:
//   wmctree 1 <n> <m_pairs>
//   e <u> <v>            (n-1 lines)
//   w <v> <weight|*>     (n lines, ids ascending; * marks undeletable)
//   p <s> <t>            (m_pairs lines)
//   budget w <w>         (optional)
//   budget k <k>         (optional)
// Serialization is byte-exact: space-separated fields, \n endings.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& inst, const std::string& path);

enum class GenShape { kUniform, kCaterpillar, kStarish, kPath };

std::optional<GenShape> gen_shape_from_name(const std::string& name);
std::string gen_shape_name(GenShape shape);

// Seed-deterministic random instance; pairs sampled uniformly over vertex
// pairs, weights uniform in [1, weight_max].
Instance gen_random(std::uint32_t n, std::uint32_t m_pairs, Weight weight_max,
                    std::uint64_t seed, GenShape shape);

// Spine x_1..x_n with a pendant y_i per vertex; pendant pairs mirror the
// graph's edges. A vertex cover of size k exists iff the instance has a
// multicut of weight k.
Instance reduce_vertex_cover(std::uint32_t n,
                             std::span<const std::pair<VertexId, VertexId>> edges);

struct WeightedEdge {
  VertexId u = 0;
  VertexId v = 0;
  Weight weight = 0;
};

// Edge-deletion instances become vertex-deletion ones by subdividing every
// edge; the subdivision vertex carries the edge weight and the original
// vertices become undeletable.
Instance reduce_edge_deletion(std::uint32_t n,
                              std::span<const WeightedEdge> edges,
                              std::span<const TerminalPair> pairs);

// Instance certified (d,q)-light by construction and re-checked before
// returning; deterministic per seed.
Instance gen_dq_light(std::uint32_t d, std::uint32_t q,
                      std::uint32_t size_target, std::uint64_t seed);

}  // namespace wmctree
