#ifndef BIPINV_H
#define BIPINV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BIPINV_BUILDING)
#    define BIPINV_API __declspec(dllexport)
#  else
#    define BIPINV_API __declspec(dllimport)
#  endif
#else
#  define BIPINV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status; BIPINV_OK is 0. On failure the message, stage
 * and witness of the last error on the calling thread are available through
 * bipinv_last_error() and bipinv_last_error_json(). */
typedef enum bipinv_status {
    BIPINV_OK = 0,
    BIPINV_E_SYNTAX,
    BIPINV_E_INVALID_GRAPH,
    BIPINV_E_NOT_BIPARTITE,
    BIPINV_E_ORDER_MISMATCH,
    BIPINV_E_NO_PERFECT_MATCHING,
    BIPINV_E_NOT_UNIQUE,
    BIPINV_E_CYCLE_FOUND,
    BIPINV_E_SAME_VERTEX,
    BIPINV_E_SIZE_TOO_SMALL,
    BIPINV_E_NOT_TRIANGULARIZABLE,
    BIPINV_E_NOT_UNIT_TRIANGULAR,
    BIPINV_E_MISSING_VERTEX,
    BIPINV_E_PRECONDITION,
    BIPINV_E_NOT_ACYCLIC,
    BIPINV_E_INVALID_POSET,
    BIPINV_E_TOO_LARGE,
    BIPINV_E_SINGULAR,
    BIPINV_E_DIMENSION_MISMATCH,
    BIPINV_E_IO,
    BIPINV_E_INTERNAL,
    BIPINV_E_INVALID_ARGUMENT,
    BIPINV_E_OUT_OF_MEMORY
} bipinv_status;

typedef enum bipinv_verdict {
    BIPINV_VERDICT_NONNEGATIVE = 0,
    BIPINV_VERDICT_ODD_FLOWER = 1
} bipinv_verdict;

typedef struct bipinv_graph bipinv_graph;
typedef struct bipinv_matrix bipinv_matrix;
typedef struct bipinv_report bipinv_report;
typedef struct bipinv_poset bipinv_poset;

BIPINV_API const char* bipinv_version(void);
/* "SyntaxError", "NotUnique", ... */
BIPINV_API const char* bipinv_status_name(bipinv_status status);
/* Message of the last failure on this thread; "" after success. */
BIPINV_API const char* bipinv_last_error(void);
/* {"code","stage","message","witness"} of the last failure, or NULL. Free
 * with bipinv_string_free. */
BIPINV_API char* bipinv_last_error_json(void);
BIPINV_API void bipinv_string_free(char* s);

/* Graphs: edge-list text "n m" then "e u v" lines. */
BIPINV_API bipinv_status bipinv_graph_parse(const char* text, bipinv_graph** out);
BIPINV_API bipinv_status bipinv_graph_read(const char* path, bipinv_graph** out);
/* Square 0/1 matrix; row i becomes vertex 2i, column j vertex 2j+1. */
BIPINV_API bipinv_status bipinv_graph_from_biadjacency(const bipinv_matrix* b, bipinv_graph** out);
/* generator: "unique_pm" (uses p) or "matched_tree". relabel_seed 0 keeps
 * the generator's vertex ids. */
BIPINV_API bipinv_status bipinv_graph_generate(const char* generator, size_t pairs, double p, uint64_t seed,
                                               uint64_t relabel_seed, bipinv_graph** out);
BIPINV_API void bipinv_graph_free(bipinv_graph* g);
BIPINV_API size_t bipinv_graph_vertex_count(const bipinv_graph* g);
BIPINV_API size_t bipinv_graph_edge_count(const bipinv_graph* g);
BIPINV_API bipinv_status bipinv_graph_to_text(const bipinv_graph* g, char** out);
BIPINV_API bipinv_status bipinv_graph_digest(const bipinv_graph* g, char** out);

/* Integer matrices in Matrix Market coordinate format. */
BIPINV_API bipinv_status bipinv_matrix_parse(const char* text, bipinv_matrix** out);
BIPINV_API bipinv_status bipinv_matrix_read(const char* path, bipinv_matrix** out);
BIPINV_API void bipinv_matrix_free(bipinv_matrix* m);
BIPINV_API size_t bipinv_matrix_rows(const bipinv_matrix* m);
BIPINV_API size_t bipinv_matrix_cols(const bipinv_matrix* m);
/* BIPINV_E_TOO_LARGE when the entry does not fit in 64 bits. */
BIPINV_API bipinv_status bipinv_matrix_entry(const bipinv_matrix* m, size_t i, size_t j, int64_t* out);
/* Decimal text of any entry. */
BIPINV_API bipinv_status bipinv_matrix_entry_text(const bipinv_matrix* m, size_t i, size_t j, char** out);
BIPINV_API bipinv_status bipinv_matrix_to_text(const bipinv_matrix* m, char** out);
/* Inverse of a 0/1 biadjacency matrix with a unique perfect matching, indexed
 * (column of b, row of b). */
BIPINV_API bipinv_status bipinv_matrix_invert(const bipinv_matrix* b, bipinv_matrix** out);
/* Both factors unit lower-triangular 0/1. */
BIPINV_API bipinv_status bipinv_matrix_kron(const bipinv_matrix* a, const bipinv_matrix* b, bipinv_matrix** out);

/* Full pipeline. mtx_dir may be NULL to inline matrices in the report. */
BIPINV_API bipinv_status bipinv_analyze(const bipinv_graph* g, const char* mtx_dir, int with_timing,
                                        bipinv_report** out);
BIPINV_API void bipinv_report_free(bipinv_report* r);
BIPINV_API bipinv_status bipinv_report_verdict(const bipinv_report* r, bipinv_verdict* out);
BIPINV_API bipinv_status bipinv_report_json(const bipinv_report* r, char** out);
/* BIPINV_OK when report_json is a valid report for g; otherwise
 * BIPINV_E_PRECONDITION with the problem as the last error. */
BIPINV_API bipinv_status bipinv_report_validate(const bipinv_graph* g, const char* report_json);

/* Weighted edge list ("n m" then "w u v weight") -> verdict JSON
 * {"balanced":true,"zeta":[..]} or {"balanced":false,"negative_cycle":[..],
 * "chordless_cycle":[..]}. */
BIPINV_API bipinv_status bipinv_balance(const char* weighted_text, int* balanced, char** json_out);
/* Inverse graph of g as a weighted edge list. */
BIPINV_API bipinv_status bipinv_inverse_graph(const bipinv_graph* g, char** out);

/* Flower check of the given vertex set; *is_flower is 0 with the reason in
 * json_out ({"flower":false,"reason":..}) when S is not a flower. With
 * vertices == NULL an odd flower is searched for instead. */
BIPINV_API bipinv_status bipinv_flower(const bipinv_graph* g, const int* vertices, size_t count, int* is_flower,
                                       char** json_out);

/* Posets: text "k" then "le i j" lines. */
BIPINV_API bipinv_status bipinv_poset_parse(const char* text, bipinv_poset** out);
BIPINV_API bipinv_status bipinv_poset_boolean(size_t atoms, bipinv_poset** out);
BIPINV_API bipinv_status bipinv_poset_chain(size_t k, bipinv_poset** out);
/* Closure of the Simion-Cao digraph of g. */
BIPINV_API bipinv_status bipinv_poset_from_graph(const bipinv_graph* g, bipinv_poset** out);
BIPINV_API void bipinv_poset_free(bipinv_poset* p);
BIPINV_API size_t bipinv_poset_size(const bipinv_poset* p);
BIPINV_API bipinv_status bipinv_poset_zeta(const bipinv_poset* p, bipinv_matrix** out);
BIPINV_API bipinv_status bipinv_poset_mobius(const bipinv_poset* p, bipinv_matrix** out);
/* mu(a, b) for elements a, b. */
BIPINV_API bipinv_status bipinv_poset_mu(const bipinv_poset* p, int a, int b, int64_t* out);
BIPINV_API bipinv_status bipinv_poset_report(const bipinv_poset* p, int mobius, const char* mtx_dir, char** json_out);
BIPINV_API bipinv_status bipinv_poset_to_graph(const bipinv_poset* p, bipinv_graph** out);

/* Corpus manifest: JSON list of {generator, parameters, seed}. */
BIPINV_API bipinv_status bipinv_manifest_entry(const char* generator, size_t pairs, double p, uint64_t seed,
                                               uint64_t relabel_seed, char** json_out);

typedef struct bipinv_selfcheck_options {
    size_t pairs;
    size_t count;
    uint64_t seed;
    unsigned threads;       /* 0: hardware concurrency */
    const char* replay_dir; /* NULL: current directory */
    int64_t inject_fault;   /* instance index to corrupt, or -1 */
} bipinv_selfcheck_options;

/* log_out gets one line per instance and the summary line; consistent gets
 * the number of consistent instances. */
BIPINV_API bipinv_status bipinv_selfcheck(const bipinv_selfcheck_options* options, size_t* consistent,
                                          char** log_out);

#ifdef __cplusplus
}
#endif

#endif
