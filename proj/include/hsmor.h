/* hsmor — multi-object relation field simulator, C API.
 *
 * All functions return hsmor_status; on failure hsmor_last_error() holds a
 * thread-local description of what went wrong. Handles are opaque and owned
 * by the caller via the matching *_free function.
 *
 * Threading: distinct handles may be used concurrently, but one handle must
 * not be shared between threads without external synchronization (a model
 * carries per-classification working state). Create one model per thread
 * for parallel classification; executing a run parallelizes internally via
 * the workers argument.
 */
#ifndef HSMOR_H
#define HSMOR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hsmor_status {
    HSMOR_OK = 0,
    HSMOR_ERROR_CONFIG = 1, /* invalid configuration or arguments */
    HSMOR_ERROR_RUNTIME = 2 /* runtime or numeric failure */
} hsmor_status;

const char* hsmor_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* hsmor_last_error(void);

/* ------------------------------------------------------------------ */
/* A run: a parsed task configuration ready to execute.               */

typedef struct hsmor_run hsmor_run;

hsmor_status hsmor_run_parse(const char* config_text, hsmor_run** out);
hsmor_status hsmor_run_parse_file(const char* path, hsmor_run** out);

/* "scan", "aura", "omega-profile", "trajectory" or "refine". */
const char* hsmor_run_task(const hsmor_run* run);

/* Executes the task, writing its output files plus manifest.txt into
 * out_dir (created if missing). workers >= 1; output bytes are identical
 * for every worker count. */
hsmor_status hsmor_run_execute(hsmor_run* run, const char* out_dir, int workers);

void hsmor_run_free(hsmor_run* run);

/* ------------------------------------------------------------------ */
/* A model: objects + metric + averaging settings, for per-position    */
/* classification. The [task] section is not required.                 */

typedef struct hsmor_model hsmor_model;

hsmor_status hsmor_model_parse(const char* config_text, hsmor_model** out);

size_t hsmor_model_dimension(const hsmor_model* model);

/* Classifies one drifter position. Any output pointer may be NULL.
 * signature_buf receives the NUL-terminated grouping signature (truncated
 * to its capacity); *signature_len reports the full length. */
hsmor_status hsmor_model_classify(hsmor_model* model, const double* coords, size_t ncoords,
                                  double* omega, double* neg_ln_omega, int* cycles,
                                  int* degenerate, char* signature_buf, size_t signature_cap,
                                  size_t* signature_len);

void hsmor_model_free(hsmor_model* model);

#ifdef __cplusplus
}
#endif

#endif /* HSMOR_H */
