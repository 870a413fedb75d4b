/* popproto: population-protocol simulation, measurement, and
 * verification for complete-graph identification on directed
 * communication graphs.
 *
 * C API over opaque handles. All returned strings are heap-allocated
 * and must be released with pp_string_free; graphs with pp_graph_free.
 * On any non-PP_OK status, pp_last_error() describes the failure
 * (thread-local, valid until the next API call on the same thread).
 */
#ifndef POPPROTO_H
#define POPPROTO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    PP_OK = 0,
    PP_ERR_ARGUMENT = 1,
    PP_ERR_IO = 2,
    PP_ERR_PARSE = 3,
    PP_ERR_INVARIANT = 4,
    PP_ERR_TOO_LARGE = 5
} pp_status;

typedef struct pp_graph pp_graph;

const char* pp_last_error(void);
void pp_string_free(char* s);
void pp_graph_free(pp_graph* g);

/* kind: complete | directed_ring | directed_line | star_bidir |
 *       near_complete_minus_one_arc | random_weakly_connected */
pp_status pp_graph_generate(const char* kind, int32_t n, uint64_t seed, pp_graph** out);

/* Text format: first line n, then "initiator responder" per line,
 * '#' starts a comment; written arcs are sorted lexicographically. */
pp_status pp_graph_read(const char* path, pp_graph** out);
pp_status pp_graph_write(const pp_graph* g, const char* path);

pp_status pp_graph_validate(const pp_graph* g, int32_t* ok, char** diagnostic);
int32_t pp_graph_is_complete(const pp_graph* g);
int32_t pp_graph_node_count(const pp_graph* g);
int64_t pp_graph_arc_count(const pp_graph* g);

/* The two-copy cross-wired transform f(G) on 2n nodes. */
pp_status pp_graph_f_transform(const pp_graph* g, pp_graph** out);

/* Maximum expected hitting time of the simple random walk on the
 * undirected multigraph derived from g. */
pp_status pp_graph_max_hitting_time(const pp_graph* g, double* out);

typedef struct {
    const char* protocol;  /* ciw_n | ciw_nk | cig */
    int32_t k;             /* ciw_nk only; ignored otherwise */
    const char* schedule;  /* uniform_random | round_robin | shuffled_rounds */
    uint64_t seed;
    int32_t trials;        /* <= 0 means 1 */
    uint64_t max_steps;    /* 0 = protocol-scale default */
    int32_t negative_mode; /* horizon run counting wrong-yes sightings */
    int32_t invariant_checks;
    int32_t census;
    int32_t jobs;          /* <= 1 = serial */
} pp_run_opts;

/* One engine run per trial (protocol parameter n is the graph's node
 * count). json_out receives newline-separated run records ordered by
 * trial index. all_ok is 1 iff every trial stabilized (positive mode)
 * or saw zero wrong-yes outputs (negative mode). Returns
 * PP_ERR_INVARIANT if any trial violated a protocol invariant. */
pp_status pp_simulate(const pp_graph* g, const pp_run_opts* opts, char** json_out,
                      int32_t* all_ok);

/* Scaling sweep on complete graphs under the uniformly random
 * scheduler. One CSV row per (n, k) pair; for ciw_n and cig pass
 * ks = NULL. */
pp_status pp_sweep(const char* protocol, const int32_t* sizes, int32_t num_sizes,
                   const int32_t* ks, int32_t num_ks, uint64_t seed, int32_t trials,
                   int32_t jobs, char** csv_out);

/* Exhaustive reachability check of the global-fairness correctness
 * criterion. expected: "yes" or "no". cap bounds the explored
 * configuration count (0 = default). */
pp_status pp_modelcheck(const pp_graph* g, const char* protocol, int32_t k,
                        const char* expected, uint64_t cap, char** json_out,
                        int32_t* solves);

/* Runs the protocol on K_n and on f(K_n) under the mirrored schedule
 * and reports whether the mirror invariant held. */
pp_status pp_mirror_demo(const char* protocol, int32_t n, int32_t k, uint64_t steps,
                         uint64_t seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* POPPROTO_H */
