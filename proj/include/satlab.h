#ifndef SATLAB_H
#define SATLAB_H

/* C interface to the satlab analysis library. Every function returning a
 * satlab_status stores a message for satlab_last_error() on failure. Strings
 * returned through out-parameters are owned by the caller and released with
 * satlab_string_free. */

#include <stddef.h>

#if defined(SATLAB_BUILDING_LIBRARY)
#define SATLAB_API __attribute__((visibility("default")))
#else
#define SATLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum satlab_status {
  SATLAB_OK = 0,
  SATLAB_ERR_STRUCTURAL = 1,
  SATLAB_ERR_PRECONDITION = 2,
  SATLAB_ERR_CONSTRUCTION = 3,
  SATLAB_ERR_CAPACITY = 4,
  SATLAB_ERR_CONSISTENCY = 5,
  SATLAB_ERR_PARSE = 6,
  SATLAB_ERR_SCHEMA = 7,
  SATLAB_ERR_INTERNAL = 8,
  SATLAB_ERR_ARGUMENT = 9
} satlab_status;

typedef struct satlab_problem satlab_problem;
typedef struct satlab_report satlab_report;

typedef struct satlab_options {
  int has_epsilon; /* nonzero: epsilon overrides the problem file */
  double epsilon;
  unsigned seed;
} satlab_options;

/* A single target needs alpha, beta and has_n; batch mode needs has_batch.
 * Paths are a vertex label or comma-separated edge labels. */
typedef struct satlab_graph_query {
  const char* alpha;
  const char* beta;
  int has_n;
  int n;
  int has_batch;
  int batch;
} satlab_graph_query;

SATLAB_API const char* satlab_version(void);
SATLAB_API const char* satlab_status_string(satlab_status status);
/* Message of the last failure on the calling thread; empty if none. */
SATLAB_API const char* satlab_last_error(void);

SATLAB_API satlab_status satlab_problem_parse(const char* text, size_t length, satlab_problem** out);
SATLAB_API void satlab_problem_destroy(satlab_problem* problem);
SATLAB_API satlab_status satlab_problem_kind(const satlab_problem* problem, char** out);
SATLAB_API satlab_status satlab_problem_canonical_json(const satlab_problem* problem, char** out);

SATLAB_API satlab_status satlab_run_analyze(const satlab_problem* problem, const satlab_options* options,
                                            satlab_report** out);
SATLAB_API satlab_status satlab_run_strata(const satlab_problem* problem, const satlab_options* options,
                                           satlab_report** out);
SATLAB_API satlab_status satlab_run_hopf(const satlab_problem* problem, const satlab_options* options,
                                         satlab_report** out);
SATLAB_API satlab_status satlab_run_graph_witness(const satlab_problem* problem, const satlab_options* options,
                                                  const satlab_graph_query* query, satlab_report** out);

/* include_timing = 0 drops the timing field, which makes output byte-stable. */
SATLAB_API satlab_status satlab_report_json(const satlab_report* report, int include_timing, char** out);
SATLAB_API satlab_status satlab_report_text(const satlab_report* report, char** out);
SATLAB_API void satlab_report_destroy(satlab_report* report);

SATLAB_API void satlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
