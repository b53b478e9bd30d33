/* C interface to the directional Pareto toolkit. */
#ifndef DIRPARETO_H
#define DIRPARETO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DP_API __declspec(dllexport)
#else
#define DP_API __attribute__((visibility("default")))
#endif

typedef enum dp_status {
  DP_OK = 0,
  DP_INVALID_ARGUMENT = 1,
  DP_DIMENSION_MISMATCH = 2,
  DP_PARSE_ERROR = 3,
  DP_DOMAIN_ERROR = 4,
  DP_NUMERICAL_ERROR = 5,
  DP_IO_ERROR = 6,
  DP_INTERNAL_ERROR = 7
} dp_status;

/* Process exit codes carried by a result. */
enum { DP_EXIT_OK = 0, DP_EXIT_ERROR = 1, DP_EXIT_NEGATIVE = 2 };

typedef struct dp_session dp_session;
typedef struct dp_result dp_result;

DP_API const char* dp_version(void);

DP_API dp_status dp_session_create(dp_session** out);
DP_API void dp_session_destroy(dp_session* session);

/* Overrides applied to every run: "radius", "levels", "rays", "seed",
 * "norm" (l2|linf), "tol", "weak" (0|1). */
DP_API dp_status dp_session_set_option(dp_session* session, const char* key, const char* value);

/* Message of the last failing call on this session ("" if none). */
DP_API const char* dp_session_last_error(const dp_session* session);

/* Runs `command` on a JSON problem document. A library error still yields a
 * result (exit code 1, error report) and returns its status. */
DP_API dp_status dp_run(dp_session* session, const char* command, const char* problem_json,
                        dp_result** out);
DP_API dp_status dp_run_file(dp_session* session, const char* command, const char* path,
                             dp_result** out);
DP_API dp_status dp_run_example(dp_session* session, const char* name, dp_result** out);
DP_API dp_status dp_list_examples(dp_session* session, dp_result** out);

DP_API int dp_result_exit_code(const dp_result* result);
DP_API const char* dp_result_verdict(const dp_result* result);
DP_API const char* dp_result_report(const dp_result* result);
/* Empty strings when the command produced no CSV or SVG. */
DP_API const char* dp_result_csv(const dp_result* result);
DP_API const char* dp_result_svg(const dp_result* result);
DP_API void dp_result_destroy(dp_result* result);

DP_API size_t dp_example_count(void);
DP_API const char* dp_example_name(size_t index);
DP_API size_t dp_command_count(void);
DP_API const char* dp_command_name(size_t index);

/* s_{K,e}(y) for K = {v : rows v >= 0}, rows stored row-major (nrows x dim). */
DP_API dp_status dp_gerstewitz_value(const double* rows, size_t nrows, size_t dim, const double* e,
                                     const double* y, double* value);

#ifdef __cplusplus
}
#endif

#endif /* DIRPARETO_H */
