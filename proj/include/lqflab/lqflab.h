/* C interface to lqflab: schedule enumeration, exact LP oracles, pooling
 * factors, stability-region membership and the LQF simulator.
 *
 * Every call returns an lqf_status; on failure lqf_last_error() describes it.
 * Results are owned by the caller and released with lqf_result_destroy().
 * Node labels in all text are 1-based. */
#ifndef LQFLAB_H
#define LQFLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(LQFLAB_BUILDING_LIBRARY)
#define LQF_API __attribute__((visibility("default")))
#else
#define LQF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lqf_context lqf_context;
typedef struct lqf_graph lqf_graph;
typedef struct lqf_result lqf_result;

typedef enum lqf_status {
    LQF_OK = 0,
    LQF_INVALID_ARGUMENT = 1,
    LQF_PARSE = 2,
    LQF_RESOURCE_LIMIT = 3,
    LQF_INTERNAL = 4
} lqf_status;

typedef enum lqf_limit {
    LQF_LIMIT_MAX_NODES = 0,
    LQF_LIMIT_MAX_SUBSET_NODES = 1,
    LQF_LIMIT_JOBS = 2
} lqf_limit;

typedef enum lqf_oracle_kind { LQF_ORACLE_CHI = 0, LQF_ORACLE_PHI = 1, LQF_ORACLE_TAU = 2 } lqf_oracle_kind;

typedef struct lqf_sim_options {
    const char* arrivals;        /* "constant" or "bernoulli" */
    const char* tie_break;       /* "lex" or "random" */
    uint64_t horizon;
    uint64_t seed;
    const char* initial_backlog; /* comma-separated rationals, or NULL for zero */
} lqf_sim_options;

LQF_API const char* lqf_version(void);
/* Message of the last failure on the calling thread; "" if none. */
LQF_API const char* lqf_last_error(void);
LQF_API const char* lqf_status_name(lqf_status status);

LQF_API lqf_status lqf_context_create(lqf_context** out);
LQF_API void lqf_context_destroy(lqf_context* ctx);
LQF_API lqf_status lqf_context_set_limit(lqf_context* ctx, lqf_limit which, uint64_t value);
/* Adds decimal annotations next to exact values in JSON output. */
LQF_API lqf_status lqf_context_set_approx(lqf_context* ctx, int enabled);

/* Graph text: "n <count>" then "e <u> <v>" lines; '#' starts a comment. */
LQF_API lqf_status lqf_graph_parse(const lqf_context* ctx, const char* text, lqf_graph** out);
LQF_API lqf_status lqf_graph_load(const lqf_context* ctx, const char* path, lqf_graph** out);
LQF_API void lqf_graph_destroy(lqf_graph* graph);
LQF_API size_t lqf_graph_node_count(const lqf_graph* graph);

/* Rate arguments are comma-separated rationals ("1/2,0,1/3") or "@path" of a
 * file with "<node> <rate>" lines. Only lqf_simulate also accepts decimals
 * such as 0.001, converted exactly. */

/* Maximal schedules. text: JSON; aux: one 0/1 row per schedule. */
LQF_API lqf_status lqf_mis(const lqf_context* ctx, const lqf_graph* graph, lqf_result** out);
/* Maximal cliques, same layout as lqf_mis. */
LQF_API lqf_status lqf_cliques(const lqf_context* ctx, const lqf_graph* graph, lqf_result** out);
LQF_API lqf_status lqf_oracle(const lqf_context* ctx, const lqf_graph* graph, lqf_oracle_kind kind,
                              const char* rate, lqf_result** out);
LQF_API lqf_status lqf_sigma(const lqf_context* ctx, const lqf_graph* graph, lqf_result** out);
/* subset: "1,3,5", "all" for every non-empty subset, or NULL for the whole graph. */
LQF_API lqf_status lqf_rank(const lqf_context* ctx, const lqf_graph* graph, const char* subset, lqf_result** out);
/* region: "lambda", "lambda-o", "sigma-lambda", "omega", "delta-c", "delta-r" or "all". */
LQF_API lqf_status lqf_member(const lqf_context* ctx, const lqf_graph* graph, const char* region, const char* rate,
                              lqf_result** out);
LQF_API lqf_status lqf_report(const lqf_context* ctx, const lqf_graph* graph, const char* rate,
                              const lqf_sim_options* sims, size_t sim_count, lqf_result** out);
/* text: JSON summary; aux: CSV trace. */
LQF_API lqf_status lqf_simulate(const lqf_context* ctx, const lqf_graph* graph, const char* rate,
                                const lqf_sim_options* options, lqf_result** out);
/* Re-checks every verdict in `verdicts` (one verdict, a map of verdicts, or
 * a full report). *ok is 1 when all certificates hold. */
LQF_API lqf_status lqf_verify_witness(const lqf_context* ctx, const lqf_graph* graph, const char* rate,
                                      const char* verdicts, int* ok);

LQF_API const char* lqf_result_text(const lqf_result* result);
LQF_API const char* lqf_result_aux(const lqf_result* result);
LQF_API void lqf_result_destroy(lqf_result* result);

#ifdef __cplusplus
}
#endif

#endif
