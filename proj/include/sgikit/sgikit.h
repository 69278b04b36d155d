/* sgikit - structural global identifiability analysis for LTI structures.
 *
 * C API over the C++ core. All functions are thread-compatible: distinct
 * handles may be used concurrently; a single handle must not be mutated from
 * two threads at once. Strings returned through `char**` outputs are owned by
 * the caller and must be released with sgikit_string_free().
 */
#ifndef SGIKIT_H
#define SGIKIT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgikit_status {
    SGIKIT_OK = 0,
    SGIKIT_PARSE_ERROR = 2,      /* model file syntax / validation */
    SGIKIT_RESOURCE_ERROR = 3,   /* step budget or degree bound exhausted */
    SGIKIT_DEGENERATE = 4,       /* structure has no informative output */
    SGIKIT_INVALID_ARGUMENT = 5, /* bad option key/value, dimension misuse */
    SGIKIT_INTERNAL_ERROR = 6
} sgikit_status;

/* Opaque handles. */
typedef struct sgikit_model sgikit_model;
typedef struct sgikit_options sgikit_options;

/* Library version string, e.g. "1.0.0". Static storage; do not free. */
const char* sgikit_version(void);

/* Human-readable message for the most recent failure on this thread.
 * Static thread-local storage; do not free. Empty string if none. */
const char* sgikit_last_error(void);

/* ---- model handles ---- */

/* Parse a model file (resp. in-memory text) in the line-oriented model
 * grammar. On success stores a new handle in *out. */
sgikit_status sgikit_model_parse_file(const char* path, sgikit_model** out);
sgikit_status sgikit_model_parse_text(const char* text, sgikit_model** out);

void sgikit_model_free(sgikit_model* model);

/* ---- options ---- */

/* Fresh options with defaults: inputs=full, seed=1, validate=0, timings=0,
 * step_budget=1000000, degree_bound=8, sim_input=impulse, sim_t_end=10,
 * sim_points=201. */
sgikit_options* sgikit_options_new(void);

/* Set one option. Keys (values are strings):
 *   inputs        full | uncontrolled | none | impulse | step | ramp |
 *                 exponential:<rate> (comma-separated list for several signals)
 *   seed          decimal integer; 0 requests an entropy-derived seed
 *   order         lex|grlex|grevlex[:v1,v2,...] Groebner order spec
 *   compare_order second order spec for the ordering experiment
 *   validate      0 | 1  (numeric cross-validation of enumerated solutions)
 *   timings       0 | 1  (include wall-clock timings in the report)
 *   step_budget   positive integer, Groebner reduction-step budget
 *   degree_bound  positive integer, solution-enumeration degree bound
 *   theta         name=value,... exact rationals (simulate only)
 *   sim_input     input signal for simulate
 *   sim_t_end     simulation horizon (decimal)
 *   sim_points    grid size (integer >= 2)
 */
sgikit_status sgikit_options_set(sgikit_options* opts, const char* key,
                                 const char* value);

void sgikit_options_free(sgikit_options* opts);

/* ---- analyses (JSON / CSV results in *out, caller-owned) ---- */

/* Full identifiability analysis report (JSON). */
sgikit_status sgikit_analyze(const sgikit_model* model,
                             const sgikit_options* opts, char** out);

/* Labeled invariant list (JSON). */
sgikit_status sgikit_invariants(const sgikit_model* model,
                                const sgikit_options* opts, char** out);

/* Groebner ordering experiment on the invariant ideal (JSON). */
sgikit_status sgikit_groebner(const sgikit_model* model,
                              const sgikit_options* opts, char** out);

/* Numeric output simulation (CSV: header t,y1..yk). */
sgikit_status sgikit_simulate(const sgikit_model* model,
                              const sgikit_options* opts, char** out);

void sgikit_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SGIKIT_H */
