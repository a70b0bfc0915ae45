#include <cstring>
#include <string>

#include "wmctree/io.hpp"
#include "wmctree/report.hpp"
#include "wmctree/solver_light.hpp"
#include "wmctree/wmctree.h"

using namespace wmctree;

struct wmct_instance {
  Instance inst;
};
struct wmct_report {
  RunReport rep;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
wmct_status guarded(F&& f) {
  try {
    f();
    return WMCT_OK;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return WMCT_ERR_PARSE;
  } catch (const CapacityError& e) {
    g_last_error = e.what();
    return WMCT_ERR_CAPACITY;
  } catch (const GenerationError& e) {
    g_last_error = e.what();
    return WMCT_ERR_GENERATION;
  } catch (const InputError& e) {
    g_last_error = e.what();
    return WMCT_ERR_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WMCT_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* wmct_last_error(void) { return g_last_error.c_str(); }

void wmct_string_free(char* s) { std::free(s); }

wmct_status wmct_instance_parse(const char* text, wmct_instance** out) {
  if (!text || !out) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] { *out = new wmct_instance{parse_instance(text)}; });
}

wmct_status wmct_instance_load(const char* path, wmct_instance** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] { *out = new wmct_instance{load_instance_file(path)}; });
}

wmct_status wmct_instance_serialize(const wmct_instance* inst, char** out_text) {
  if (!inst || !out_text) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] { *out_text = dup_string(serialize_instance(inst->inst)); });
}

wmct_status wmct_instance_save(const wmct_instance* inst, const char* path) {
  if (!inst || !path) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] { save_instance_file(inst->inst, path); });
}

void wmct_instance_free(wmct_instance* inst) { delete inst; }

uint32_t wmct_instance_n(const wmct_instance* inst) { return inst->inst.n(); }

uint32_t wmct_instance_pairs(const wmct_instance* inst) {
  return static_cast<uint32_t>(inst->inst.pairs.size());
}

uint32_t wmct_instance_leaves(const wmct_instance* inst) {
  return static_cast<uint32_t>(degree_classes(inst->inst.tree).leaves.size());
}

uint32_t wmct_instance_request_degree(const wmct_instance* inst) {
  auto cls = classify_light(inst->inst.tree, inst->inst.pairs, 0);
  std::size_t best = 0;
  for (auto c : cls.paths_through) best = std::max(best, c);
  return static_cast<uint32_t>(best);
}

int wmct_instance_budget_w(const wmct_instance* inst, uint64_t* out_w) {
  if (!inst->inst.budget_w) return 0;
  if (out_w) *out_w = *inst->inst.budget_w;
  return 1;
}

int wmct_instance_budget_k(const wmct_instance* inst, int64_t* out_k) {
  if (!inst->inst.budget_k) return 0;
  if (out_k) *out_k = *inst->inst.budget_k;
  return 1;
}

wmct_status wmct_instance_set_budgets(wmct_instance* inst, int has_w,
                                      uint64_t w, int has_k, int64_t k) {
  if (!inst) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] {
    if (has_k && k < 0) throw InputError("negative size budget");
    inst->inst.budget_w = has_w ? std::optional<Weight>(w) : std::nullopt;
    inst->inst.budget_k =
        has_k ? std::optional<std::int64_t>(k) : std::nullopt;
  });
}

wmct_status wmct_gen_random(uint32_t n, uint32_t m_pairs, uint64_t weight_max,
                            uint64_t seed, const char* shape,
                            wmct_instance** out) {
  if (!out) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] {
    auto sh = gen_shape_from_name(shape ? shape : "uniform");
    if (!sh) throw GenerationError("unknown shape");
    *out = new wmct_instance{gen_random(n, m_pairs, weight_max, seed, *sh)};
  });
}

wmct_status wmct_gen_dq_light(uint32_t d, uint32_t q, uint32_t size_target,
                              uint64_t seed, wmct_instance** out) {
  if (!out) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded(
      [&] { *out = new wmct_instance{gen_dq_light(d, q, size_target, seed)}; });
}

wmct_status wmct_reduce_vertex_cover(uint32_t n, const uint32_t* edges_uv,
                                     uint32_t m, wmct_instance** out) {
  if (!out || (m > 0 && !edges_uv)) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] {
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(m);
    for (uint32_t i = 0; i < m; ++i)
      edges.emplace_back(edges_uv[2 * i], edges_uv[2 * i + 1]);
    *out = new wmct_instance{reduce_vertex_cover(n, edges)};
  });
}

wmct_status wmct_solve(const wmct_instance* inst,
                       const wmct_solve_options* opts, wmct_report** out) {
  if (!inst || !out) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] {
    SolveOptions so;
    if (opts) {
      if (opts->algo) {
        auto a = algo_from_name(opts->algo);
        if (!a) throw InputError("unknown algorithm");
        so.algo = *a;
      }
      if (opts->has_k) so.k = opts->k;
      if (opts->has_w) so.w = opts->w;
      if (opts->has_d) so.d = opts->d;
      if (opts->trace_dot_path) so.trace_dot_path = opts->trace_dot_path;
      if (opts->config_echo) so.config_echo = opts->config_echo;
    }
    *out = new wmct_report{run_solve(inst->inst, so)};
  });
}

const char* wmct_report_answer(const wmct_report* rep) {
  return rep->rep.answer.c_str();
}

const char* wmct_report_algo(const wmct_report* rep) {
  return rep->rep.algo.c_str();
}

int wmct_report_has_weight(const wmct_report* rep) {
  return rep->rep.min_weight ? 1 : 0;
}

uint64_t wmct_report_weight(const wmct_report* rep) {
  return rep->rep.min_weight ? *rep->rep.min_weight : 0;
}

size_t wmct_report_witness_size(const wmct_report* rep) {
  return rep->rep.witness.size();
}

void wmct_report_witness(const wmct_report* rep, uint32_t* out) {
  for (std::size_t i = 0; i < rep->rep.witness.size(); ++i)
    out[i] = rep->rep.witness[i];
}

uint64_t wmct_report_nodes(const wmct_report* rep) { return rep->rep.nodes; }

int wmct_report_has_bound(const wmct_report* rep) {
  return rep->rep.bound ? 1 : 0;
}

uint64_t wmct_report_bound(const wmct_report* rep) {
  return rep->rep.bound ? *rep->rep.bound : 0;
}

int wmct_report_within_bound(const wmct_report* rep) {
  return rep->rep.within_bound ? 1 : 0;
}

double wmct_report_wall_ms(const wmct_report* rep) { return rep->rep.wall_ms; }

wmct_status wmct_report_to_json(const wmct_report* rep, char** out_json) {
  if (!rep || !out_json) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] { *out_json = dup_string(report_to_json(rep->rep)); });
}

void wmct_report_free(wmct_report* rep) { delete rep; }

wmct_status wmct_verify(const wmct_instance* inst, const uint32_t* witness,
                        size_t len, int has_w, uint64_t w, int has_k,
                        int64_t k, int* out_ok, char** out_violation) {
  if (!inst || !out_ok || (len > 0 && !witness)) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] {
    Instance check = inst->inst;
    if (has_w) check.budget_w = w;
    if (has_k) check.budget_k = k;
    std::vector<VertexId> vs(witness, witness + len);
    for (VertexId v : vs) check.tree.check_vertex(v);
    // An undeletable vertex in the witness is a verification failure, not a
    // construction error.
    VerifyResult res;
    bool bad_vertex = false;
    for (VertexId v : vs)
      if (!is_deletable(check.weights[v])) {
        res.ok = false;
        res.violation =
            "undeletable vertex " + std::to_string(v) + " in solution";
        bad_vertex = true;
        break;
      }
    if (!bad_vertex) res = verify_solution(check, solution_from(check, vs));
    *out_ok = res.ok ? 1 : 0;
    if (out_violation) *out_violation = dup_string(res.violation);
  });
}

wmct_status wmct_classify(const wmct_instance* inst, uint32_t d, int has_q,
                          uint32_t q, char** out_json) {
  if (!inst || !out_json) {
    g_last_error = "null argument";
    return WMCT_ERR_INPUT;
  }
  return guarded([&] {
    *out_json = dup_string(classification_to_json(
        inst->inst, d, has_q ? std::optional<std::uint32_t>(q) : std::nullopt));
  });
}

}  // extern "C"
