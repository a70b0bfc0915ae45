/* C interface to the tree multicut solver library. All functions returning
 * wmct_status yield WMCT_OK on success; on failure wmct_last_error() holds a
 * message for the calling thread. Handles are opaque and freed with their
 * matching *_free function. Strings returned through char** out-params are
 * owned by the caller and released with wmct_string_free. */
#ifndef WMCTREE_WMCTREE_H
#define WMCTREE_WMCTREE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wmct_instance wmct_instance;
typedef struct wmct_report wmct_report;

typedef enum wmct_status {
  WMCT_OK = 0,
  WMCT_ERR_INPUT = 1,     /* bad arguments or violated preconditions */
  WMCT_ERR_PARSE = 2,     /* malformed instance text */
  WMCT_ERR_CAPACITY = 3,  /* exhaustive solver asked beyond its cap */
  WMCT_ERR_GENERATION = 4,
  WMCT_ERR_INTERNAL = 5
} wmct_status;

const char* wmct_last_error(void);
void wmct_string_free(char* s);

/* ---- instances ---- */

wmct_status wmct_instance_parse(const char* text, wmct_instance** out);
wmct_status wmct_instance_load(const char* path, wmct_instance** out);
wmct_status wmct_instance_serialize(const wmct_instance* inst, char** out_text);
wmct_status wmct_instance_save(const wmct_instance* inst, const char* path);
void wmct_instance_free(wmct_instance* inst);

uint32_t wmct_instance_n(const wmct_instance* inst);
uint32_t wmct_instance_pairs(const wmct_instance* inst);
uint32_t wmct_instance_leaves(const wmct_instance* inst);
/* Largest number of pair paths through any single vertex. */
uint32_t wmct_instance_request_degree(const wmct_instance* inst);
int wmct_instance_budget_w(const wmct_instance* inst, uint64_t* out_w);
int wmct_instance_budget_k(const wmct_instance* inst, int64_t* out_k);
/* has_* == 0 clears the corresponding budget. */
wmct_status wmct_instance_set_budgets(wmct_instance* inst, int has_w,
                                      uint64_t w, int has_k, int64_t k);

/* ---- generators and reductions ---- */

wmct_status wmct_gen_random(uint32_t n, uint32_t m_pairs, uint64_t weight_max,
                            uint64_t seed, const char* shape,
                            wmct_instance** out);
wmct_status wmct_gen_dq_light(uint32_t d, uint32_t q, uint32_t size_target,
                              uint64_t seed, wmct_instance** out);
/* edges: m pairs of endpoints, flattened (u0,v0,u1,v1,...). */
wmct_status wmct_reduce_vertex_cover(uint32_t n, const uint32_t* edges_uv,
                                     uint32_t m, wmct_instance** out);

/* ---- solving ---- */

typedef struct wmct_solve_options {
  const char* algo; /* "k", "leaves", "light", "oracle", "auto"; NULL = auto */
  int has_k;
  int64_t k;
  int has_w;
  uint64_t w;
  int has_d;
  uint32_t d;
  const char* trace_dot_path; /* optional; branching algorithms only */
  const char* config_echo;    /* free-form string echoed into the report */
} wmct_solve_options;

wmct_status wmct_solve(const wmct_instance* inst,
                       const wmct_solve_options* opts, wmct_report** out);

const char* wmct_report_answer(const wmct_report* rep); /* yes|no|infeasible */
const char* wmct_report_algo(const wmct_report* rep);
int wmct_report_has_weight(const wmct_report* rep);
uint64_t wmct_report_weight(const wmct_report* rep);
size_t wmct_report_witness_size(const wmct_report* rep);
void wmct_report_witness(const wmct_report* rep, uint32_t* out);
uint64_t wmct_report_nodes(const wmct_report* rep);
int wmct_report_has_bound(const wmct_report* rep);
uint64_t wmct_report_bound(const wmct_report* rep);
int wmct_report_within_bound(const wmct_report* rep);
double wmct_report_wall_ms(const wmct_report* rep);
wmct_status wmct_report_to_json(const wmct_report* rep, char** out_json);
void wmct_report_free(wmct_report* rep);

/* ---- verification and classification ---- */

/* out_ok: 1 when the witness cuts every pair, avoids undeletable vertices
 * and fits the supplied budgets. When invalid, *out_violation names the
 * first failure. */
wmct_status wmct_verify(const wmct_instance* inst, const uint32_t* witness,
                        size_t len, int has_w, uint64_t w, int has_k,
                        int64_t k, int* out_ok, char** out_violation);

wmct_status wmct_classify(const wmct_instance* inst, uint32_t d, int has_q,
                          uint32_t q, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* WMCTREE_WMCTREE_H */
