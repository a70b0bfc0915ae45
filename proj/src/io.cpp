#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "wmctree/io.hpp"
#include "wmctree/solver_light.hpp"

namespace wmctree {
namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

// Portable uniform draw in [0, bound); distribution classes are not pinned
// across standard libraries, the engine is.
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;

  std::uint32_t n = 0, m_pairs = 0;
  bool header_seen = false;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::optional<Weight>> weights;
  std::vector<TerminalPair> pairs;
  std::optional<Weight> budget_w;
  std::optional<std::int64_t> budget_k;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;

    auto want_u32 = [&](const char* what) {
      std::int64_t v;
      if (!(ls >> v) || v < 0 || v > std::numeric_limits<std::uint32_t>::max())
        parse_fail(lineno, std::string("expected ") + what);
      return static_cast<std::uint32_t>(v);
    };

    if (!header_seen) {
      if (tag != "wmctree") parse_fail(lineno, "missing 'wmctree 1 n m' header");
      std::uint32_t version = want_u32("format version");
      if (version != 1) parse_fail(lineno, "unsupported format version");
      n = want_u32("vertex count");
      if (n == 0) parse_fail(lineno, "vertex count must be positive");
      m_pairs = want_u32("pair count");
      weights.assign(n, std::nullopt);
      header_seen = true;
      continue;
    }
    if (tag == "e") {
      VertexId u = want_u32("edge endpoint");
      VertexId v = want_u32("edge endpoint");
      if (u >= n || v >= n) parse_fail(lineno, "bad vertex");
      edges.emplace_back(u, v);
    } else if (tag == "w") {
      VertexId v = want_u32("vertex id");
      if (v >= n) parse_fail(lineno, "bad vertex");
      if (weights[v]) parse_fail(lineno, "duplicate weight");
      std::string w;
      if (!(ls >> w)) parse_fail(lineno, "expected weight or *");
      if (w == "*") {
        weights[v] = kUndeletable;
      } else {
        try {
          std::size_t used = 0;
          unsigned long long val = std::stoull(w, &used);
          if (used != w.size() || w[0] == '-') throw std::invalid_argument(w);
          if (val >= kWeightSaturated)
            parse_fail(lineno, "weight too large");
          weights[v] = static_cast<Weight>(val);
        } catch (const ParseError&) {
          throw;
        } catch (const std::exception&) {
          parse_fail(lineno, "bad weight");
        }
      }
    } else if (tag == "p") {
      VertexId s = want_u32("pair endpoint");
      VertexId t = want_u32("pair endpoint");
      if (s >= n || t >= n) parse_fail(lineno, "bad vertex");
      pairs.emplace_back(s, t);
    } else if (tag == "budget") {
      std::string which;
      if (!(ls >> which)) parse_fail(lineno, "expected 'budget w' or 'budget k'");
      if (which == "w") {
        unsigned long long v;
        if (!(ls >> v) || v >= kWeightSaturated)
          parse_fail(lineno, "bad weight budget");
        budget_w = static_cast<Weight>(v);
      } else if (which == "k") {
        std::int64_t v;
        if (!(ls >> v) || v < 0) parse_fail(lineno, "bad size budget");
        budget_k = v;
      } else {
        parse_fail(lineno, "unknown budget kind");
      }
    } else {
      parse_fail(lineno, "unknown record '" + tag + "'");
    }
  }
  if (!header_seen) throw ParseError("empty instance text");
  if (edges.size() != static_cast<std::size_t>(n) - 1)
    throw ParseError("not a tree: expected " + std::to_string(n - 1) +
                     " edges, got " + std::to_string(edges.size()));
  if (pairs.size() != m_pairs)
    throw ParseError("header declared " + std::to_string(m_pairs) +
                     " pairs, got " + std::to_string(pairs.size()));
  std::vector<Weight> wt(n);
  for (VertexId v = 0; v < n; ++v) {
    if (!weights[v])
      throw ParseError("missing weight for vertex " + std::to_string(v));
    wt[v] = *weights[v];
  }
  RootedTree tree;
  try {
    tree = RootedTree::from_edges(n, edges, 0);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
  return Instance::make(std::move(tree), std::move(pairs), std::move(wt),
                        budget_w, budget_k);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "wmctree 1 " << inst.n() << ' ' << inst.pairs.size() << '\n';
  for (auto [u, v] : inst.tree.undirected_edges()) os << "e " << u << ' ' << v << '\n';
  for (VertexId v = 0; v < inst.n(); ++v) {
    os << "w " << v << ' ';
    if (is_deletable(inst.weights[v]))
      os << inst.weights[v];
    else
      os << '*';
    os << '\n';
  }
  for (const auto& p : inst.pairs) os << "p " << p.s << ' ' << p.t << '\n';
  if (inst.budget_w) os << "budget w " << *inst.budget_w << '\n';
  if (inst.budget_k) os << "budget k " << *inst.budget_k << '\n';
  return os.str();
}

Instance load_instance_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_instance(buf.str());
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path + " for writing");
  f << serialize_instance(inst);
}

std::optional<GenShape> gen_shape_from_name(const std::string& name) {
  if (name == "uniform") return GenShape::kUniform;
  if (name == "caterpillar") return GenShape::kCaterpillar;
  if (name == "star-ish" || name == "starish") return GenShape::kStarish;
  if (name == "path") return GenShape::kPath;
  return std::nullopt;
}

std::string gen_shape_name(GenShape shape) {
  switch (shape) {
    case GenShape::kUniform: return "uniform";
    case GenShape::kCaterpillar: return "caterpillar";
    case GenShape::kStarish: return "star-ish";
    case GenShape::kPath: return "path";
  }
  return "uniform";
}

Instance gen_random(std::uint32_t n, std::uint32_t m_pairs, Weight weight_max,
                    std::uint64_t seed, GenShape shape) {
  if (n == 0) throw GenerationError("n must be positive");
  if (weight_max == 0 || weight_max >= kWeightSaturated)
    throw GenerationError("weight_max out of range");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  switch (shape) {
    case GenShape::kPath:
      for (VertexId v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
      break;
    case GenShape::kUniform:
      for (VertexId v = 1; v < n; ++v)
        edges.emplace_back(static_cast<VertexId>(rng_below(rng, v)), v);
      break;
    case GenShape::kCaterpillar: {
      // Roughly half the vertices form the spine, the rest hang off it.
      std::uint32_t spine = std::max<std::uint32_t>(1, n / 2);
      for (VertexId v = 1; v < spine; ++v) edges.emplace_back(v - 1, v);
      for (VertexId v = spine; v < n; ++v)
        edges.emplace_back(static_cast<VertexId>(rng_below(rng, spine)), v);
      break;
    }
    case GenShape::kStarish: {
      // Subdivided star: legs of random lengths around vertex 0.
      VertexId next = 1;
      while (next < n) {
        std::uint32_t len =
            1 + static_cast<std::uint32_t>(rng_below(rng, std::max(1u, n / 4)));
        VertexId prev = 0;
        for (std::uint32_t i = 0; i < len && next < n; ++i) {
          edges.emplace_back(prev, next);
          prev = next++;
        }
      }
      break;
    }
  }
  std::vector<Weight> weights(n);
  for (auto& w : weights) w = 1 + rng_below(rng, weight_max);
  std::vector<TerminalPair> pairs;
  pairs.reserve(m_pairs);
  for (std::uint32_t i = 0; i < m_pairs; ++i)
    pairs.emplace_back(static_cast<VertexId>(rng_below(rng, n)),
                       static_cast<VertexId>(rng_below(rng, n)));
  return Instance::make(RootedTree::from_edges(n, edges, 0), std::move(pairs),
                        std::move(weights));
}

Instance reduce_vertex_cover(
    std::uint32_t n, std::span<const std::pair<VertexId, VertexId>> edges) {
  if (n == 0) throw InputError("vertex cover reduction needs n >= 1");
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("bad vertex id in edge");
    if (u == v) throw InputError("self-loop");
  }
  // Vertices 0..n-1: spine x_i; n..2n-1: pendants y_i.
  std::vector<std::pair<VertexId, VertexId>> tree_edges;
  for (VertexId i = 1; i < n; ++i) tree_edges.emplace_back(i - 1, i);
  for (VertexId i = 0; i < n; ++i) tree_edges.emplace_back(i, n + i);
  std::vector<Weight> weights(2 * n, 1);
  for (VertexId i = 0; i < n; ++i) weights[i] = static_cast<Weight>(n) + 1;
  std::vector<TerminalPair> pairs;
  for (auto [u, v] : edges) pairs.emplace_back(n + u, n + v);
  return Instance::make(RootedTree::from_edges(2 * n, tree_edges, 0),
                        std::move(pairs), std::move(weights));
}

Instance reduce_edge_deletion(std::uint32_t n,
                              std::span<const WeightedEdge> edges,
                              std::span<const TerminalPair> pairs) {
  if (n == 0) throw InputError("empty tree");
  if (edges.size() != static_cast<std::size_t>(n) - 1)
    throw InputError("not a tree: edge count != n-1");
  // Vertices 0..n-1 stay (undeletable); edge i becomes vertex n+i.
  std::vector<std::pair<VertexId, VertexId>> tree_edges;
  std::vector<Weight> weights(n + edges.size(), kUndeletable);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.u >= n || e.v >= n) throw InputError("bad vertex id in edge");
    if (!is_deletable(e.weight)) throw InputError("edge weight out of range");
    tree_edges.emplace_back(e.u, n + i);
    tree_edges.emplace_back(n + i, e.v);
    weights[n + i] = e.weight;
  }
  std::vector<TerminalPair> ps(pairs.begin(), pairs.end());
  for (const auto& p : ps)
    if (p.s >= n || p.t >= n) throw InputError("bad vertex id in pair");
  return Instance::make(
      RootedTree::from_edges(n + static_cast<std::uint32_t>(edges.size()),
                             tree_edges, 0),
      std::move(ps), std::move(weights));
}

Instance gen_dq_light(std::uint32_t d, std::uint32_t q,
                      std::uint32_t size_target, std::uint64_t seed) {
  if (size_target == 0) throw GenerationError("size target must be positive");
  std::mt19937_64 rng(seed);

  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<TerminalPair> pairs;
  std::uint32_t n = 0;

  // Heavy star blobs need q >= 4: the closed neighborhood of a heavy center
  // picks up its legs plus up to two chain connectors as leaves.
  const std::uint32_t legs = q >= 4 ? std::clamp(q - 2, 2u, 4u) : 0;
  const std::uint32_t blob_size = 1 + 2 * legs + 1;  // center, legs, connector
  if (d >= 1 && legs >= 2 && size_target >= blob_size + 1) {
    // vertex 0 starts the connector chain; blobs hang between connectors.
    n = 1;
    VertexId prev_connector = 0;
    while (n + blob_size <= size_target) {
      VertexId center = n++;
      edges.emplace_back(prev_connector, center);
      std::vector<VertexId> tips;
      for (std::uint32_t l = 0; l < legs; ++l) {
        VertexId mid = n++;
        VertexId tip = n++;
        edges.emplace_back(center, mid);
        edges.emplace_back(mid, tip);
        tips.push_back(tip);
      }
      // d+1 cross-leg pair paths make the center heavy; each leg carries at
      // most d of them, keeping mids and tips light.
      std::uint32_t made = 0;
      std::vector<std::uint32_t> used(tips.size(), 0);
      for (std::uint32_t i = 0; made < d + 1 && i < 64 * (d + 1); ++i) {
        std::size_t a = rng_below(rng, tips.size());
        std::size_t b = rng_below(rng, tips.size());
        if (a == b || used[a] >= d || used[b] >= d) continue;
        pairs.emplace_back(tips[a], tips[b]);
        ++used[a];
        ++used[b];
        ++made;
      }
      VertexId connector = n++;
      edges.emplace_back(center, connector);
      prev_connector = connector;
    }
    while (n < size_target) {
      edges.emplace_back(prev_connector, n);
      prev_connector = n++;
    }
  } else {
    // Path fallbacks. Heavy vertices on a path only ever form subpath
    // components whose closed neighborhood has two leaves, so random pairs
    // are safe whenever q >= 2; otherwise pairs must keep every vertex
    // light: disjoint short pairs for d >= 1, none for d = 0.
    n = size_target;
    for (VertexId v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
    if (q >= 2) {
      for (std::uint32_t i = 0; i < size_target / 3; ++i)
        pairs.emplace_back(static_cast<VertexId>(rng_below(rng, n)),
                           static_cast<VertexId>(rng_below(rng, n)));
    } else if (d >= 1) {
      for (VertexId v = 0; v + 1 < n; v += 3) pairs.emplace_back(v, v + 1);
    }
  }
  std::vector<Weight> weights(n);
  for (auto& w : weights) w = 1 + rng_below(rng, 20);
  Instance inst = Instance::make(RootedTree::from_edges(n, edges, 0),
                                 std::move(pairs), std::move(weights));
  auto cls = classify_light(inst.tree, inst.pairs, d);
  if (!cls.is_dq_light(q))
    throw GenerationError("generated instance failed the (d,q)-light check");
  return inst;
}

}  // namespace wmctree
