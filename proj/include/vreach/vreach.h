#ifndef VREACH_VREACH_H
#define VREACH_VREACH_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(VREACH_BUILDING_LIBRARY)
#    define VREACH_API __declspec(dllexport)
#  else
#    define VREACH_API __declspec(dllimport)
#  endif
#else
#  define VREACH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vreach_error {
  VREACH_OK = 0,
  VREACH_E_ARGUMENT = 1, /* bad argument, dimension mismatch, null handle */
  VREACH_E_IO = 2,
  VREACH_E_PARSE = 3,
  VREACH_E_SOLVER = 4, /* LP oracle failed to reach a verdict */
  VREACH_E_LIMIT = 5,  /* corner, placement or branch cap */
  VREACH_E_INTERNAL = 6
} vreach_error;

/* Values match the command-line exit codes. */
typedef enum vreach_verdict {
  VREACH_HOLDS = 0,
  VREACH_VIOLATED = 1,
  VREACH_UNKNOWN = 2,
  VREACH_TIMEOUT = 3
} vreach_verdict;

typedef struct vreach_network vreach_network;
typedef struct vreach_property vreach_property;
typedef struct vreach_options vreach_options;
typedef struct vreach_result vreach_result;

VREACH_API const char* vreach_version(void);

/* Message of the last failed call on this thread; "" if none. */
VREACH_API const char* vreach_last_error(void);

VREACH_API vreach_error vreach_network_load(const char* path, vreach_network** out);
VREACH_API vreach_error vreach_network_parse(const char* text, size_t length, vreach_network** out);
VREACH_API size_t vreach_network_input_dim(const vreach_network* net);
VREACH_API size_t vreach_network_output_dim(const vreach_network* net);
VREACH_API size_t vreach_network_layer_count(const vreach_network* net);
/* raw != 0: input and output in raw (unnormalized) units. */
VREACH_API vreach_error vreach_network_evaluate(const vreach_network* net, const double* input,
                                                size_t input_len, double* output,
                                                size_t output_len, int raw);
VREACH_API void vreach_network_free(vreach_network* net);

VREACH_API vreach_error vreach_property_load(const char* path, vreach_property** out);
VREACH_API vreach_error vreach_property_parse(const char* text, size_t length,
                                              vreach_property** out);
VREACH_API size_t vreach_property_input_dim(const vreach_property* prop);
VREACH_API void vreach_property_free(vreach_property* prop);

/* Defaults: epnm, merge size 2, one worker, 86400 s, default tolerances. */
VREACH_API vreach_options* vreach_options_create(void);
VREACH_API void vreach_options_free(vreach_options* opts);
/* "apnm", "epnm" or "papnm" */
VREACH_API vreach_error vreach_options_set_algorithm(vreach_options* opts, const char* name);
VREACH_API vreach_error vreach_options_set_merge_size(vreach_options* opts, size_t d);
/* 0 selects the machine's parallelism. */
VREACH_API vreach_error vreach_options_set_workers(vreach_options* opts, size_t workers);
VREACH_API vreach_error vreach_options_set_timeout(vreach_options* opts, double seconds);
VREACH_API vreach_error vreach_options_set_tolerances(vreach_options* opts, double lp_tol,
                                                      double sign_eps, double dedup_tol);
VREACH_API vreach_error vreach_options_set_branch_limit(vreach_options* opts, size_t limit);
/* "sequential" or "simultaneous" */
VREACH_API vreach_error vreach_options_set_split(vreach_options* opts, const char* name);

VREACH_API vreach_error vreach_verify(const vreach_network* net, const vreach_property* prop,
                                      const vreach_options* opts, vreach_result** out);
VREACH_API vreach_verdict vreach_result_verdict(const vreach_result* result);
VREACH_API double vreach_result_duration(const vreach_result* result);
/* Both strings live as long as the result. */
VREACH_API const char* vreach_result_report_json(const vreach_result* result);
VREACH_API const char* vreach_result_summary(const vreach_result* result);
/* Returns the witness length (0 when there is none) and copies up to
   capacity values into buffer. */
VREACH_API size_t vreach_result_witness(const vreach_result* result, double* buffer,
                                        size_t capacity);
VREACH_API void vreach_result_free(vreach_result* result);

#ifdef __cplusplus
}
#endif

#endif
