/* C interface to the weighted least-squares approximation library.
 *
 * All entry points are thread-safe; error messages are thread-local and valid
 * until the next failing call on the same thread. Results are opaque handles
 * that must be released with obls_result_free.
 */
#ifndef OBLS_H
#define OBLS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  OBLS_OK = 0,
  OBLS_INVALID_ARGUMENT = 1,
  OBLS_RUNTIME_ERROR = 2
} obls_status;

typedef struct obls_result obls_result;

/* Runs one command ("experiment", "stability", "points" or "design") with a
 * JSON configuration string and a root seed. On success *out receives a
 * result handle. On failure *out is NULL and obls_last_error() describes
 * the problem. */
obls_status obls_run(const char* command, const char* config_json, uint64_t seed,
                     obls_result** out);

/* Borrowed pointers, valid while the result handle lives. */
const char* obls_result_csv(const obls_result* result);
const char* obls_result_json(const obls_result* result);

void obls_result_free(obls_result* result);

/* Message of the last failing call on this thread, or an empty string. */
const char* obls_last_error(void);

/* n(delta, eta, m) sample-size rule; returns -1 and sets the error message on
 * invalid input. */
long obls_required_sample_size(double delta, double eta, long m);

/* Cardinality of the index set ("total_degree" or "hyperbolic_cross");
 * returns -1 on invalid input. */
long obls_index_set_size(const char* rule, int dimension, int degree);

const char* obls_version(void);

#ifdef __cplusplus
}
#endif

#endif /* OBLS_H */
