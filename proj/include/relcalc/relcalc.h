#ifndef RELCALC_RELCALC_H
#define RELCALC_RELCALC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RELCALC_BUILDING)
#    define RELCALC_API __declspec(dllexport)
#  else
#    define RELCALC_API __declspec(dllimport)
#  endif
#else
#  define RELCALC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct relcalc_env relcalc_env;
typedef struct relcalc_relation relcalc_relation;

typedef enum relcalc_status {
  RELCALC_OK = 0,
  RELCALC_E_INVALID_ARGUMENT = 1,
  RELCALC_E_DIMENSION = 2,
  RELCALC_E_PARSE = 3,
  RELCALC_E_TYPE = 4,
  RELCALC_E_UNKNOWN_NAME = 5,
  RELCALC_E_IO = 6,
  RELCALC_E_UNKNOWN_LAW = 7,
  RELCALC_E_REFUSED = 8,     /* a decomposition or construction does not exist */
  RELCALC_E_PRECONDITION = 9,
  RELCALC_E_NUMERIC = 10,
  RELCALC_E_INTERNAL = 11
} relcalc_status;

typedef enum relcalc_binary_op {
  RELCALC_OP_SUM = 0,        /* operatorwise sum A + B */
  RELCALC_OP_DIFF = 1,       /* A - B */
  RELCALC_OP_CW_SUM = 2,     /* componentwise sum */
  RELCALC_OP_PRODUCT = 3,    /* AB: first B, then A */
  RELCALC_OP_INTERSECT = 4
} relcalc_binary_op;

typedef enum relcalc_unary_op {
  RELCALC_OP_ADJOINT = 0,
  RELCALC_OP_INVERSE = 1,
  RELCALC_OP_REAL_PART = 2,
  RELCALC_OP_IMAG_PART = 3,
  RELCALC_OP_REGULAR_PART = 4,
  RELCALC_OP_SINGULAR_PART = 5,
  RELCALC_OP_OPERATOR_PART = 6,
  RELCALC_OP_MUL_PART = 7,
  RELCALC_OP_INFINITY_EXT = 8
} relcalc_unary_op;

/* Message of the last failed call on this thread ("" if none). */
RELCALC_API const char* relcalc_last_error(void);
RELCALC_API const char* relcalc_status_name(relcalc_status s);
/* Frees strings returned through char** out parameters. */
RELCALC_API void relcalc_string_free(char* s);

/* Environments: named relations, subspaces and scalars over C^n. */
RELCALC_API relcalc_status relcalc_env_create(int n, relcalc_env** out);
RELCALC_API relcalc_status relcalc_env_load(const char* path, relcalc_env** out);
RELCALC_API relcalc_status relcalc_env_load_string(const char* text, relcalc_env** out);
RELCALC_API relcalc_status relcalc_env_save(const relcalc_env* env, const char* path);
RELCALC_API relcalc_status relcalc_env_serialize(const relcalc_env* env, char** out);
RELCALC_API void relcalc_env_destroy(relcalc_env* env);
RELCALC_API int relcalc_env_dim(const relcalc_env* env);
/* Newline-separated binding names in definition order. */
RELCALC_API relcalc_status relcalc_env_names(const relcalc_env* env, char** out);

/* Runs statements ("x = e", "print e", bare expressions); assignments persist in env. */
RELCALC_API relcalc_status relcalc_eval(relcalc_env* env, const char* program, char** out);

RELCALC_API relcalc_status relcalc_report(const relcalc_env* env, const char* name, int json, char** out);
RELCALC_API relcalc_status relcalc_classify(const relcalc_env* env, const char* name, char** out);
RELCALC_API relcalc_status relcalc_nrange_csv(const relcalc_env* env, const char* name, size_t samples,
                                              uint64_t seed, char** out);

/* law_id: a registered id or "all". threads = 0 uses every core.
   out receives one line per law; *all_passed is 1 iff every law passed. */
RELCALC_API relcalc_status relcalc_laws_run(const char* law_id, size_t trials, int dim_lo, int dim_hi, uint64_t seed,
                                            unsigned threads, char** out, int* all_passed);
RELCALC_API relcalc_status relcalc_law_list(char** out);

/* Relation handles. Complex arrays are interleaved (re, im) and column-major. */
RELCALC_API relcalc_status relcalc_relation_get(const relcalc_env* env, const char* name, relcalc_relation** out);
/* Binds r under name, replacing any existing binding. */
RELCALC_API relcalc_status relcalc_relation_bind(relcalc_env* env, const char* name, const relcalc_relation* r);
/* k graph vectors of length 2n: (f | f'). */
RELCALC_API relcalc_status relcalc_relation_from_graph(int n, int k, const double* vectors, relcalc_relation** out);
/* n x n matrix, everywhere defined. */
RELCALC_API relcalc_status relcalc_relation_from_operator(int n, const double* matrix, relcalc_relation** out);
RELCALC_API void relcalc_relation_destroy(relcalc_relation* r);
RELCALC_API int relcalc_relation_n(const relcalc_relation* r);
RELCALC_API int relcalc_relation_dim(const relcalc_relation* r);
/* dims[0..3] = dim dom, ran, ker, mul. */
RELCALC_API relcalc_status relcalc_relation_component_dims(const relcalc_relation* r, int dims[4]);
/* Orthonormal graph basis: 2n x dim complex entries, capacity in doubles. */
RELCALC_API relcalc_status relcalc_relation_basis(const relcalc_relation* r, double* out, size_t capacity);
RELCALC_API relcalc_status relcalc_relation_unary(relcalc_unary_op op, const relcalc_relation* a,
                                                  relcalc_relation** out);
RELCALC_API relcalc_status relcalc_relation_binary(relcalc_binary_op op, const relcalc_relation* a,
                                                   const relcalc_relation* b, relcalc_relation** out);
RELCALC_API relcalc_status relcalc_relation_scale(const relcalc_relation* a, double re, double im,
                                                  relcalc_relation** out);
RELCALC_API relcalc_status relcalc_relation_opening(const relcalc_relation* a, const relcalc_relation* b,
                                                    double* out);

#ifdef __cplusplus
}
#endif

#endif
