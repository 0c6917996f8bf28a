#ifndef FPLATE_H
#define FPLATE_H

/* C API of the fractional-order nonlocal plate solver.
 *
 * A study is configured from flat key=value text (see README for the keys),
 * run to produce report rows, and written out as CSV.  All functions return
 * FPLATE_OK on success; on failure fplate_last_error() describes the problem
 * for the calling thread. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fplate_study fplate_study;

typedef enum {
  FPLATE_OK = 0,
  FPLATE_ERR_ARGUMENT = 1,
  FPLATE_ERR_PARSE = 2,
  FPLATE_ERR_NUMERIC = 3,
  FPLATE_ERR_IO = 4,
  FPLATE_ERR_INTERNAL = 5
} fplate_status;

const char* fplate_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* fplate_last_error(void);

fplate_status fplate_study_create_from_file(const char* path,
                                            fplate_study** out);
fplate_status fplate_study_create_from_string(const char* text,
                                              fplate_study** out);
void fplate_study_destroy(fplate_study* s);

/* Overrides applied after parsing. kind: validate|converge|static|modal. */
fplate_status fplate_study_set_kind(fplate_study* s, const char* kind);
fplate_status fplate_study_set_output(fplate_study* s, const char* path);
fplate_status fplate_study_set_threads(fplate_study* s, int threads);
fplate_status fplate_study_set_tolerance(fplate_study* s, double rel_tol);

/* Runs the study; writes the CSV when an output path is configured. */
fplate_status fplate_study_run(fplate_study* s);

/* Row access after a successful run. */
fplate_status fplate_study_row_count(const fplate_study* s, size_t* count);
/* Copies one CSV-formatted row (no newline) into buf. */
fplate_status fplate_study_row(const fplate_study* s, size_t index, char* buf,
                               size_t buf_size);
/* Copies the full CSV document into buf; *needed receives the length
 * (excluding the terminator) regardless of buffer size. */
fplate_status fplate_study_csv(const fplate_study* s, char* buf,
                               size_t buf_size, size_t* needed);

/* Assembles the first (alpha, lf) cell of the configuration and writes
 * <prefix>.K.mtx and <prefix>.M.mtx in Matrix Market symmetric form. */
fplate_status fplate_study_export_matrices(fplate_study* s,
                                           const char* prefix);

#ifdef __cplusplus
}
#endif

#endif /* FPLATE_H */
