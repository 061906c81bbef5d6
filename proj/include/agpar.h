/* agpar — finite groupoid toolkit: Cayley-table classification, identity
 * checking, parallelogram constructions and derived parallelogram algebras.
 *
 * C API over the shared library. All handles are opaque; every function
 * returns a status code, with outputs through pointers. agpar_last_error()
 * returns a thread-local message for the most recent failure.
 */
#ifndef AGPAR_H
#define AGPAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AGPAR_API __declspec(dllexport)
#else
#define AGPAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum agpar_status {
  AGPAR_OK = 0,
  AGPAR_ERR_INVALID_ARGUMENT = 1, /* bad index, null pointer, malformed call */
  AGPAR_ERR_PARSE = 2,            /* table file or identity text malformed */
  AGPAR_ERR_DOMAIN = 3,           /* table lacks the structure the call needs */
  AGPAR_ERR_LIMIT = 4,            /* bound exceeded without force */
  AGPAR_ERR_IO = 5,               /* file access */
  AGPAR_ERR_INTERNAL = 6
} agpar_status;

typedef struct agpar_table agpar_table;
typedef struct agpar_derived agpar_derived;
typedef struct agpar_models agpar_models;

AGPAR_API const char* agpar_version(void);
/* Message for the calling thread's most recent error; empty when none. */
AGPAR_API const char* agpar_last_error(void);
/* Frees strings returned through char** outputs. */
AGPAR_API void agpar_free_string(char* s);

/* ---- tables ---- */

AGPAR_API agpar_status agpar_table_parse(const char* text, agpar_table** out);
AGPAR_API agpar_status agpar_table_from_file(const char* path, agpar_table** out);
AGPAR_API agpar_status agpar_table_from_entries(int order, const int32_t* entries,
                                                agpar_table** out);
AGPAR_API void agpar_table_free(agpar_table* table);
AGPAR_API int agpar_table_order(const agpar_table* table);
AGPAR_API agpar_status agpar_table_serialize(const agpar_table* table, char** out_text);

AGPAR_API agpar_status agpar_product(const agpar_table* table, int a, int b, int* out);
/* Unique x with a*x = b. */
AGPAR_API agpar_status agpar_left_divide(const agpar_table* table, int a, int b, int* out);
/* Unique y with y*a = b. */
AGPAR_API agpar_status agpar_right_divide(const agpar_table* table, int b, int a, int* out);
/* Writes -1 when the table has no left identity. */
AGPAR_API agpar_status agpar_left_identity(const agpar_table* table, int* out);
AGPAR_API agpar_status agpar_inverse(const agpar_table* table, int a, int* out);

/* ---- classification and identities ---- */

AGPAR_API agpar_status agpar_classify_json(const agpar_table* table, int threads,
                                           char** out_json);
/* out_holds: 1 = identity holds, 0 = counterexample found (see JSON). */
AGPAR_API agpar_status agpar_check_identity(const agpar_table* table, const char* src,
                                            int threads, int* out_holds, char** out_json);
AGPAR_API agpar_status agpar_check_preset(const agpar_table* table, const char* name,
                                          int threads, int* out_holds, char** out_json);
AGPAR_API agpar_status agpar_preset_list(char** out_json);
AGPAR_API agpar_status agpar_pre_l1_suite_json(const agpar_table* table, int threads,
                                               char** out_json);

/* ---- parallelograms ---- */

AGPAR_API agpar_status agpar_par_holds(const agpar_table* table, int a, int b, int c, int d,
                                       int* out_holds);
AGPAR_API agpar_status agpar_fourth_vertex(const agpar_table* table, int a, int b, int c,
                                           int* out_d);
/* out_ok: 1 when the decomposition exists; then (x,y) are written. */
AGPAR_API agpar_status agpar_t1_decompose(const agpar_table* table, int a, int b, int c, int d,
                                          int* out_ok, int* out_x, int* out_y);
AGPAR_API agpar_status agpar_c1_ratio(const agpar_table* table, int a, int b, int* out);
/* Writes the n witness pairs ordered by q; out_pq holds p,q interleaved and
 * must have room for 2*order values. */
AGPAR_API agpar_status agpar_witnesses(const agpar_table* table, int a, int b, int c, int d,
                                       int32_t* out_pq, size_t capacity, int* out_count);
/* method: "t3" (args a,b,p), "t4" (a,b), "t5" (a,b), "c2" (a).
 * out_nontrivial (may be NULL) is set for c2. */
AGPAR_API agpar_status agpar_construct(const agpar_table* table, const char* method,
                                       const int* args, size_t nargs, int out_quad[4],
                                       int* out_nontrivial);
AGPAR_API agpar_status agpar_par_axioms_json(const agpar_table* table, int force, int threads,
                                             char** out_json, int* out_all_hold);

/* ---- derived parallelogram algebra ---- */

/* max_table_order: derived tables larger than this stay on-demand (pass 0 for
 * the default, 4096). */
AGPAR_API agpar_status agpar_derived_build(const agpar_table* base, int64_t max_table_order,
                                           int threads, agpar_derived** out);
AGPAR_API void agpar_derived_free(agpar_derived* derived);
AGPAR_API int64_t agpar_derived_order(const agpar_derived* derived);
AGPAR_API int agpar_derived_materialized(const agpar_derived* derived);
AGPAR_API agpar_status agpar_derived_product(const agpar_derived* derived, int64_t i, int64_t j,
                                             int64_t* out);
AGPAR_API agpar_status agpar_derived_identity(const agpar_derived* derived, int64_t* out);
AGPAR_API agpar_status agpar_derived_inverse(const agpar_derived* derived, int64_t i,
                                             int64_t* out);
AGPAR_API agpar_status agpar_derived_quad(const agpar_derived* derived, int64_t i,
                                          int out_quad[4]);
AGPAR_API agpar_status agpar_derived_index_of(const agpar_derived* derived, const int quad[4],
                                              int64_t* out);
/* Table format preceded by a '#' block mapping indices to quadruples. */
AGPAR_API agpar_status agpar_derived_serialize(const agpar_derived* derived, char** out_text);
AGPAR_API agpar_status agpar_derived_table(const agpar_derived* derived, agpar_table** out);
AGPAR_API agpar_status agpar_derived_classify_json(const agpar_derived* derived, int threads,
                                                   char** out_json);

/* ---- enumeration ---- */

/* class_name: quasigroup | medial-quasigroup | ag-group | abelian-group */
AGPAR_API agpar_status agpar_enumerate(const char* class_name, int order, int up_to_iso,
                                       int force, int threads, agpar_models** out);
AGPAR_API void agpar_models_free(agpar_models* models);
AGPAR_API size_t agpar_models_count(const agpar_models* models);
/* Writes the labeled model count; returns AGPAR_ERR_DOMAIN when the search
 * pruned the labeled space (identity pinned in up-to-iso runs). */
AGPAR_API agpar_status agpar_models_labeled_count(const agpar_models* models, uint64_t* out);
AGPAR_API agpar_status agpar_models_get(const agpar_models* models, size_t index,
                                        agpar_table** out);
AGPAR_API agpar_status agpar_canonical_form(const agpar_table* table, int force,
                                            agpar_table** out);

#ifdef __cplusplus
}
#endif

#endif /* AGPAR_H */
