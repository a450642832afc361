#ifndef VALUERANK_H
#define VALUERANK_H

/*
 * C interface to the valuerank decision engine.
 *
 * Objects are opaque handles created by *_load functions and released by the
 * matching *_free function. Every fallible call returns a vr_status; on
 * failure vr_last_error() describes the problem (per thread, valid until the
 * next failing call on that thread). Strings returned through char** out
 * parameters are heap allocated and must be released with vr_string_free.
 * Output pointers may be NULL when the caller does not need that output.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vr_status {
    VR_OK = 0,
    VR_ERR_VALIDATION = 1, /* malformed input, out-of-range values, bad options */
    VR_ERR_IO = 2,         /* file could not be opened, read or written */
    VR_ERR_ASSESSOR = 3,   /* remote assessor unreachable or returned bad scores */
    VR_ERR_ARGUMENT = 4,   /* NULL handle or pointer where one is required */
    VR_ERR_INTERNAL = 5
} vr_status;

typedef enum vr_method {
    VR_METHOD_PROMETHEE = 0,
    VR_METHOD_AHP = 1,
    VR_METHOD_MAUT = 2,
    VR_METHOD_TOPSIS = 3
} vr_method;

typedef enum vr_variant {
    VR_VARIANT_FULL = 0,
    VR_VARIANT_ONLY_ACTION = 1,
    VR_VARIANT_NO_PREFERENCE = 2,
    VR_VARIANT_NO_SUBJECTIVE = 3,
    VR_VARIANT_NO_SCENARIO = 4
} vr_variant;

typedef struct vr_options {
    double w;             /* subjective weight, [0,1] */
    double sigmoid_scale; /* preference transform steepness, > 0 */
    vr_method method;
    vr_variant variant;
    int explain;          /* non-zero: include intermediate scores in JSON */
    size_t jobs;          /* worker threads; output order never depends on it */
} vr_options;

typedef struct vr_cases vr_cases;
typedef struct vr_preferences vr_preferences;
typedef struct vr_responses vr_responses;

const char* vr_version(void);
const char* vr_last_error(void);
void vr_string_free(char* s);

/* w = 0.3, sigmoid_scale = 10, PROMETHEE, full pipeline, no explain, 1 job. */
void vr_options_default(vr_options* options);

vr_status vr_method_parse(const char* name, vr_method* out);
vr_status vr_variant_parse(const char* name, vr_variant* out);
const char* vr_method_name(vr_method method);
const char* vr_variant_name(vr_variant variant);

/* ---- inputs ----------------------------------------------------------- */

vr_status vr_cases_load(const char* path, vr_cases** out);
void vr_cases_free(vr_cases* cases);
size_t vr_cases_count(const vr_cases* cases);
size_t vr_cases_dimension_count(const vr_cases* cases);
/* Newline-separated load warnings (for example an empty file); "" if none. */
const char* vr_cases_warnings(const vr_cases* cases);

/* Replaces every objective score with scores from an HTTP assessor. On
 * failure the handle is left unchanged. */
vr_status vr_cases_assess_remote(vr_cases* cases, const char* url, double timeout_seconds,
                                 size_t max_in_flight);

/* `cases` may be NULL to skip the dimension-count check. */
vr_status vr_preferences_load(const char* path, const vr_cases* cases, vr_preferences** out);
void vr_preferences_free(vr_preferences* prefs);
int vr_preferences_has_subject(const vr_preferences* prefs, const char* subject_id);

/* Rankings by subject and scenario, cross-checked against `cases`. Used for
 * human responses and for externally produced model rankings alike. */
vr_status vr_responses_load(const char* path, const vr_cases* cases, vr_responses** out);
void vr_responses_free(vr_responses* responses);
size_t vr_responses_count(const vr_responses* responses);

/* ---- commands ---------------------------------------------------------- */

vr_status vr_rank(const vr_cases* cases, const vr_preferences* prefs, const char* subject_id,
                  const vr_options* options, char** json_out, char** table_out);

vr_status vr_evaluate(const vr_cases* cases, const vr_preferences* prefs,
                      const vr_responses* responses, const vr_options* options, char** json_out,
                      char** csv_out, char** table_out);

vr_status vr_evaluate_predictions(const vr_responses* predictions, const vr_responses* responses,
                                  char** json_out, char** csv_out, char** table_out);

vr_status vr_compare_mcdm(const vr_cases* cases, const vr_preferences* prefs,
                          const vr_responses* responses, const vr_options* options,
                          char** json_out, char** csv_out, char** table_out);

vr_status vr_assess_accuracy(const char* predicted_path, const char* gold_path,
                             const double* thresholds, size_t threshold_count, char** json_out,
                             char** table_out);

/* Paths may be NULL or "". `violations` receives the error count; the call
 * itself only fails on I/O problems. */
vr_status vr_validate_files(const char* cases_path, const char* preferences_path,
                            const char* responses_path, size_t* violations, char** report_out);

vr_status vr_file_sha256(const char* path, char** hex_out);

/* ---- numeric entry points ---------------------------------------------- */

/* Ranks n actions given an n x m row-major score matrix and m weights.
 * order_out receives n action indices, best first; key_out (optional)
 * receives the per-action ranking key in input order. */
vr_status vr_rank_matrix(vr_method method, const double* scores, size_t n, size_t m,
                         const double* weights, size_t* order_out, double* key_out);

/* Rank similarity between two rankings of n string ids. */
vr_status vr_os_sim(const char* const* predicted, const char* const* reference, size_t n,
                    double* out);
vr_status vr_rank_correlation(const char* const* predicted, const char* const* reference, size_t n,
                              double* spearman_out, double* kendall_out);

#ifdef __cplusplus
}
#endif

#endif /* VALUERANK_H */
