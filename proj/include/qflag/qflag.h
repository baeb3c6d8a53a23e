/* C interface to the qflag library. */
#ifndef QFLAG_QFLAG_H
#define QFLAG_QFLAG_H

#include <stddef.h>
#include <stdint.h>

#if defined(QFLAG_BUILDING_LIBRARY)
#define QFLAG_API __attribute__((visibility("default")))
#else
#define QFLAG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qflag_status {
  QFLAG_OK = 0,
  QFLAG_E_VALIDATION = 1,
  QFLAG_E_RESOURCE = 2,
  QFLAG_E_VERIFY = 3,
  QFLAG_E_INTERNAL = 4
} qflag_status;

typedef struct qflag_context qflag_context;
typedef struct qflag_result qflag_result;

QFLAG_API const char* qflag_version(void);
QFLAG_API const char* qflag_status_string(qflag_status status);

/* Contexts carry caps, the worker count and the last error message.
   A context must not be used from two threads at once. */
QFLAG_API qflag_status qflag_context_new(qflag_context** out);
QFLAG_API void qflag_context_free(qflag_context* ctx);
QFLAG_API qflag_status qflag_context_set_word_cap(qflag_context* ctx, uint64_t cap);
QFLAG_API qflag_status qflag_context_set_jobs(qflag_context* ctx, unsigned jobs);
/* Empty string when the last call succeeded. Owned by the context. */
QFLAG_API const char* qflag_context_last_error(const qflag_context* ctx);

/* Computations. On success *out receives a result that the caller releases
   with qflag_result_free. `d` holds the r entries d_1 < ... < d_r < n.
   `eval_q` may be NULL; otherwise it is a decimal integer. */
QFLAG_API qflag_status qflag_qbinom(qflag_context* ctx, unsigned n, unsigned e, const char* eval_q,
                                    qflag_result** out);
QFLAG_API qflag_status qflag_qmultinom(qflag_context* ctx, unsigned n, const unsigned* d, size_t r,
                                       const char* eval_q, qflag_result** out);
QFLAG_API qflag_status qflag_invdist(qflag_context* ctx, unsigned n, const unsigned* d, size_t r,
                                     qflag_result** out);
/* method: "table", "denumerant" or "binomial" (full flags only). */
QFLAG_API qflag_status qflag_inv(qflag_context* ctx, unsigned n, const unsigned* d, size_t r, uint64_t k,
                                 const char* method, qflag_result** out);
/* method: "fn", "subset", "pentagonal" or "explog". */
QFLAG_API qflag_status qflag_psi(qflag_context* ctx, unsigned n, int64_t r, const char* method,
                                 qflag_result** out);
QFLAG_API qflag_status qflag_denumerant(qflag_context* ctx, const long* w, size_t len, int64_t m,
                                        qflag_result** out);
QFLAG_API qflag_status qflag_bounds(qflag_context* ctx, unsigned n, const unsigned* d, size_t r, uint64_t k,
                                    qflag_result** out);
/* mode: "list", "count" or "cells". */
QFLAG_API qflag_status qflag_flags(qflag_context* ctx, unsigned n, const unsigned* d, size_t r, uint32_t p,
                                   const char* mode, qflag_result** out);
QFLAG_API qflag_status qflag_tau(qflag_context* ctx, unsigned n, unsigned d1, uint64_t k, qflag_result** out);
/* Returns QFLAG_E_VERIFY when any check fails; *out is filled either way. */
QFLAG_API qflag_status qflag_verify(qflag_context* ctx, const char* suite, unsigned max_n, qflag_result** out);

QFLAG_API void qflag_result_free(qflag_result* result);
QFLAG_API const char* qflag_result_kind(const qflag_result* result);
QFLAG_API size_t qflag_result_columns(const qflag_result* result);
QFLAG_API size_t qflag_result_rows(const qflag_result* result);
QFLAG_API const char* qflag_result_column_name(const qflag_result* result, size_t column);
/* NULL when out of range. */
QFLAG_API const char* qflag_result_cell(const qflag_result* result, size_t row, size_t column);

/* format: "table", "csv" or "json". *out is released with qflag_string_free. */
QFLAG_API qflag_status qflag_result_render(qflag_context* ctx, const qflag_result* result, const char* format,
                                           char** out);
QFLAG_API void qflag_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
