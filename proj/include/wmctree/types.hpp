#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wmctree {

using VertexId = std::uint32_t;
using Weight = std::uint64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// Marker weight for vertices that no solution may contain.
inline constexpr Weight kUndeletable = std::numeric_limits<Weight>::max();

// Finite input weights must sum to at most this; enforced at instance
// construction so that weight sums never wrap.
inline constexpr Weight kWeightSumCap = Weight{1} << 62;

// Folded weights (original weight plus sub-solution weights) saturate here.
// Anything at the cap already exceeds every admissible budget, so ordering
// against true optima is preserved.
inline constexpr Weight kWeightSaturated = Weight{1} << 63;

inline bool is_deletable(Weight w) { return w != kUndeletable; }

// Saturating addition of finite weights. Callers must branch on kUndeletable
// themselves; it never goes through arithmetic.
inline Weight add_weight(Weight a, Weight b) {
  if (a >= kWeightSaturated || b >= kWeightSaturated) return kWeightSaturated;
  Weight s = a + b;
  return s > kWeightSaturated ? kWeightSaturated : s;
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments or violated caller-side preconditions.
struct InputError : Error {
  using Error::Error;
};

// Malformed instance text; message carries the line number.
struct ParseError : Error {
  using Error::Error;
};

// Oracle asked to enumerate beyond its configured cap.
struct CapacityError : Error {
  using Error::Error;
};

// Generator cannot satisfy the requested parameters.
struct GenerationError : Error {
  using Error::Error;
};

// Internal invariant broken: a bug, not user error.
[[noreturn]] inline void internal_failure(const std::string& msg) {
  throw std::logic_error("internal invariant violated: " + msg);
}

#define WMC_ASSERT(cond, msg) \
  do {                        \
    if (!(cond)) ::wmctree::internal_failure(msg); \
  } while (0)

struct TerminalPair {
  VertexId s = 0;
  VertexId t = 0;

  TerminalPair() = default;
  TerminalPair(VertexId a, VertexId b) : s(a < b ? a : b), t(a < b ? b : a) {}

  bool operator==(const TerminalPair&) const = default;
  auto operator<=>(const TerminalPair&) const = default;
};

// Sorts, orients (s <= t) and removes duplicate/symmetric pairs.
std::vector<TerminalPair> dedup_pairs(std::vector<TerminalPair> pairs);

// A witness vertex set with its derived weight and size.
struct Solution {
  std::vector<VertexId> vertices;  // sorted ascending
  Weight total_weight = 0;
  std::size_t size = 0;

  static Solution from_vertices(std::vector<VertexId> vs,
                                const std::vector<Weight>& weights);
};

// Weight plus witness, the common return shape of the exact solvers.
struct Witness {
  Weight weight = 0;
  std::vector<VertexId> vertices;  // sorted ascending
};

using OptWitness = std::optional<Witness>;

// Keeps the better candidate; ties resolve to the existing one.
inline void take_min(OptWitness& best, OptWitness cand) {
  if (!cand) return;
  if (!best || cand->weight < best->weight) best = std::move(cand);
}

}  // namespace wmctree
