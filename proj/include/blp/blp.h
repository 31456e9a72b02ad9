/* C interface to the reference monitor, obligation checker and scenario
 * runner. All handles are opaque; every handle returned through an out
 * parameter is released with its matching *_free function, and every string
 * returned through a char** with blp_string_free. */
#ifndef BLP_BLP_H
#define BLP_BLP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BLP_BUILDING_LIBRARY)
#    define BLP_API __declspec(dllexport)
#  else
#    define BLP_API __declspec(dllimport)
#  endif
#else
#  define BLP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum blp_status {
  BLP_OK = 0,
  BLP_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown name, bad bounds */
  BLP_ERR_PARSE = 2,            /* scenario syntax error */
  BLP_ERR_BUILD = 3,            /* state block violates a type invariant */
  BLP_ERR_RUN = 4,              /* scenario could not be executed */
  BLP_ERR_NO_CLAUSE = 5,        /* a request matched no clause of its rule */
  BLP_ERR_INTERNAL = 6
} blp_status;

typedef enum blp_format { BLP_FORMAT_TEXT = 0, BLP_FORMAT_MACHINE = 1 } blp_format;

typedef struct blp_bounds {
  uint32_t subjects;
  uint32_t objects;
  uint32_t levels;
  uint32_t categories;
  uint32_t max_reads;
  uint32_t max_writes;
  uint32_t max_matrix;
} blp_bounds;

typedef struct blp_check_options {
  blp_bounds bounds;
  int random;           /* 0 = exhaustive */
  uint64_t samples;     /* random mode only */
  uint64_t seed;        /* random mode only */
  const char* rule;     /* NULL = all rules */
  const char* property; /* NULL = all properties */
  int strict_star_prop;
  unsigned workers;
} blp_check_options;

typedef struct blp_partition_options {
  blp_bounds bounds;
  const char* variant; /* "fixed" or "paperFaithful"; NULL = fixed */
  size_t max_witnesses; /* per distinct request; 0 keeps every witness */
  unsigned workers;
} blp_partition_options;

typedef struct blp_obligation_info {
  const char* rule;     /* static storage */
  const char* property; /* static storage */
  int pass;
  uint64_t states_checked;
  uint64_t requests_checked;
  uint64_t elapsed_ms;
} blp_obligation_info;

typedef struct blp_parse_error {
  size_t line;
  size_t column;
} blp_parse_error;

typedef struct blp_obligation_report blp_obligation_report;
typedef struct blp_partition_report blp_partition_report;
typedef struct blp_script blp_script;
typedef struct blp_trace blp_trace;

BLP_API const char* blp_version(void);
/* Message for the last failed call on this thread; empty if none. */
BLP_API const char* blp_last_error(void);
BLP_API void blp_string_free(char* s);

BLP_API void blp_bounds_default(blp_bounds* bounds);
BLP_API void blp_check_options_default(blp_check_options* options);
BLP_API void blp_partition_options_default(blp_partition_options* options);

/* Rule names in canonical order; NULL past the end. */
BLP_API size_t blp_rule_count(void);
BLP_API const char* blp_rule_name(size_t index);

BLP_API blp_status blp_check(const blp_check_options* options, blp_obligation_report** out);
BLP_API size_t blp_obligation_report_size(const blp_obligation_report* report);
BLP_API int blp_obligation_report_all_pass(const blp_obligation_report* report);
BLP_API blp_status blp_obligation_report_get(const blp_obligation_report* report, size_t index,
                                            blp_obligation_info* out);
/* timings = 0 prints every elapsed time as 0. */
BLP_API blp_status blp_obligation_report_format(const blp_obligation_report* report, blp_format format,
                                               int timings, char** out);
BLP_API void blp_obligation_report_free(blp_obligation_report* report);

BLP_API blp_status blp_partition(const char* rule, const blp_partition_options* options,
                                 blp_partition_report** out);
BLP_API uint64_t blp_partition_report_gaps(const blp_partition_report* report);
BLP_API uint64_t blp_partition_report_overlaps(const blp_partition_report* report);
BLP_API int blp_partition_report_clean(const blp_partition_report* report);
BLP_API blp_status blp_partition_report_format(const blp_partition_report* report, blp_format format,
                                              char** out);
BLP_API void blp_partition_report_free(blp_partition_report* report);

/* On BLP_ERR_PARSE, *error (if non-null) receives the 1-based position. */
BLP_API blp_status blp_script_parse(const char* source, size_t length, blp_script** out,
                                    blp_parse_error* error);
BLP_API void blp_script_free(blp_script* script);

/* variant NULL = fixed. */
BLP_API blp_status blp_script_run(const blp_script* script, const char* variant, blp_trace** out);
BLP_API int blp_trace_all_expectations_met(const blp_trace* trace);
BLP_API blp_status blp_trace_format(const blp_trace* trace, blp_format format, char** out);
BLP_API void blp_trace_free(blp_trace* trace);

#ifdef __cplusplus
}
#endif

#endif
