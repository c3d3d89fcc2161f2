#ifndef SIDCODES_H
#define SIDCODES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SID_PRUNE_FORCED_BOUNDARY 1

#define SID_PRUNE_TRIPLE_COLUMN 2

#define SID_PRUNE_DEGREE_CONDITION 4

#define SID_PRUNE_ALL 7

typedef enum SidStatus {
  SID_STATUS_OK = 0,
  SID_STATUS_NULL_POINTER = 1,
  SID_STATUS_INVALID_ARGUMENT = 2,
  SID_STATUS_UNSUPPORTED = 3,
  SID_STATUS_INFEASIBLE = 4,
  SID_STATUS_BUDGET_EXCEEDED = 5,
  SID_STATUS_PARSE = 6,
  SID_STATUS_IO = 7,
  SID_STATUS_PANIC = 8,
} SidStatus;

typedef enum SidTopology {
  SID_TOPOLOGY_PATH = 0,
  SID_TOPOLOGY_CYCLE = 1,
} SidTopology;

typedef enum SidCheck {
  SID_CHECK_DOMINATING = 0,
  SID_CHECK_IDENTIFYING = 1,
  SID_CHECK_SELF_IDENTIFYING = 2,
  SID_CHECK_SELF_IDENTIFYING_DEF2 = 3,
  SID_CHECK_DEGREE = 4,
  SID_CHECK_SUFFICIENT = 5,
} SidCheck;

typedef enum SidProblem {
  SID_PROBLEM_SELF_IDENTIFYING = 0,
  SID_PROBLEM_IDENTIFYING = 1,
} SidProblem;

/**
 * Opaque code handle; owns a copy of its graph.
 */
typedef struct SidCode SidCode;

/**
 * Opaque graph handle.
 */
typedef struct SidGraph SidGraph;

/**
 * Opaque solver result handle.
 */
typedef struct SidSolveResult SidSolveResult;

/**
 * Search limits. `threads == 0` uses the available parallelism.
 */
typedef struct SidBudget {
  uint64_t max_nodes;
  double max_seconds;
  bool allow_symmetry;
  /**
   * Bitwise OR of the `SID_PRUNE_*` flags.
   */
  uint32_t pruning;
  uint32_t threads;
} SidBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. Owned by the
 * library; valid until the next failing call.
 */
const char *sid_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sid_version(void);

struct SidBudget sid_budget_default(void);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum SidStatus sid_graph_new(size_t m, size_t n, enum SidTopology topology, struct SidGraph **out);

/**
 * # Safety
 * `g` must be NULL or a handle from [`sid_graph_new`] not yet freed.
 */
void sid_graph_free(struct SidGraph *g);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
size_t sid_graph_order(const struct SidGraph *g);

/**
 * Number of edges, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
size_t sid_graph_edge_count(const struct SidGraph *g);

/**
 * Builds a code from `len` (row, column) pairs.
 *
 * # Safety
 * `rows` and `cols` must each point to `len` readable values (or be NULL
 * when `len == 0`); `g` must be a live graph handle.
 */
enum SidStatus sid_code_new(const struct SidGraph *g,
                            const size_t *rows,
                            const size_t *cols,
                            size_t len,
                            struct SidCode **out);

/**
 * The explicit construction for the graph.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum SidStatus sid_construct(const struct SidGraph *g, struct SidCode **out);

/**
 * # Safety
 * `c` must be NULL or a live code handle.
 */
void sid_code_free(struct SidCode *c);

/**
 * Number of codewords, or 0 for NULL.
 *
 * # Safety
 * `c` must be NULL or a live code handle.
 */
size_t sid_code_len(const struct SidCode *c);

/**
 * The `i`-th codeword in canonical order.
 *
 * # Safety
 * `c` must be a live code handle; `row` and `col` writable.
 */
enum SidStatus sid_code_get(const struct SidCode *c, size_t i, size_t *row, size_t *col);

/**
 * Evaluates one predicate on the code.
 *
 * # Safety
 * `c` must be a live code handle and `holds` writable.
 */
enum SidStatus sid_code_check(const struct SidCode *c, enum SidCheck check, bool *holds);

/**
 * Serializes the code to the JSON code-file format. Free the string with
 * [`sid_string_free`].
 *
 * # Safety
 * `c` must be a live code handle and `out` writable.
 */
enum SidStatus sid_code_to_json(const struct SidCode *c, char **out);

/**
 * Parses a JSON code file.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum SidStatus sid_code_from_json(const char *json, struct SidCode **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void sid_string_free(char *s);

/**
 * Exact minimum code. A result is produced even when the budget runs out;
 * check [`sid_result_certified`].
 *
 * # Safety
 * `g` must be a live graph handle, `budget` NULL (defaults) or readable,
 * and `out` writable.
 */
enum SidStatus sid_solve(const struct SidGraph *g,
                         const struct SidBudget *budget,
                         enum SidProblem problem,
                         struct SidSolveResult **out);

/**
 * # Safety
 * `r` must be NULL or a live result handle.
 */
void sid_result_free(struct SidSolveResult *r);

/**
 * # Safety
 * `r` must be NULL or a live result handle.
 */
size_t sid_result_optimum(const struct SidSolveResult *r);

/**
 * # Safety
 * `r` must be NULL or a live result handle.
 */
bool sid_result_certified(const struct SidSolveResult *r);

/**
 * # Safety
 * `r` must be NULL or a live result handle.
 */
bool sid_result_canonical(const struct SidSolveResult *r);

/**
 * # Safety
 * `r` must be NULL or a live result handle.
 */
uint64_t sid_result_nodes(const struct SidSolveResult *r);

/**
 * Copies the witness into a new code handle.
 *
 * # Safety
 * `r` must be a live result handle and `out` writable.
 */
enum SidStatus sid_result_witness(const struct SidSolveResult *r, struct SidCode **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SidStatus sid_lower_bound(size_t m, size_t n, enum SidTopology topology, size_t *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SidStatus sid_upper_bound(size_t m, size_t n, enum SidTopology topology, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIDCODES_H */
