/* C interface to the TFIM product-state approximation library.
 *
 * Handles are opaque. Every call returns a tfim_status; on failure the
 * message is available from tfim_last_error() on the same thread. Strings
 * returned through `char** out` are owned by the caller and released with
 * tfim_string_free().
 */
#ifndef TFIM_TFIM_H
#define TFIM_TFIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(TFIM_BUILDING_LIBRARY)
#define TFIM_API __attribute__((visibility("default")))
#else
#define TFIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the CLI exit codes. */
typedef enum tfim_status {
  TFIM_OK = 0,
  TFIM_ERR_USAGE = 1,        /* bad argument, size limit exceeded */
  TFIM_ERR_PARSE = 2,        /* malformed or invalid instance */
  TFIM_ERR_SOLVER = 3,       /* relaxation did not converge */
  TFIM_ERR_VERIFICATION = 4, /* a verification check failed */
  TFIM_ERR_INTERNAL = 5
} tfim_status;

typedef struct tfim_instance tfim_instance;
typedef struct tfim_sdp tfim_sdp;

TFIM_API const char* tfim_last_error(void);
TFIM_API void tfim_string_free(char* s);

/* ---- instances ---- */
TFIM_API tfim_status tfim_instance_parse(const char* json_text, tfim_instance** out);
TFIM_API tfim_status tfim_instance_load(const char* path, tfim_instance** out);
TFIM_API tfim_status tfim_instance_triangle(double field, tfim_instance** out);
TFIM_API void tfim_instance_free(tfim_instance* inst);
TFIM_API int tfim_instance_size(const tfim_instance* inst);
TFIM_API size_t tfim_instance_edge_count(const tfim_instance* inst);
TFIM_API tfim_status tfim_instance_shift_constants(const tfim_instance* inst, double* total_weight,
                                                   double* total_field);
TFIM_API tfim_status tfim_instance_is_frustrated(const tfim_instance* inst, int* frustrated);
TFIM_API tfim_status tfim_instance_to_json(const tfim_instance* inst, char** out);

/* ---- relaxation ---- */
TFIM_API tfim_status tfim_sdp_solve(const tfim_instance* inst, double tol, tfim_sdp** out);
TFIM_API void tfim_sdp_free(tfim_sdp* sdp);
TFIM_API double tfim_sdp_objective(const tfim_sdp* sdp);
TFIM_API double tfim_sdp_edge_value(const tfim_sdp* sdp);
TFIM_API double tfim_sdp_field_value(const tfim_sdp* sdp);
/* Copies n entries of x into `x_out`. */
TFIM_API tfim_status tfim_sdp_x(const tfim_sdp* sdp, double* x_out, size_t n);
TFIM_API tfim_status tfim_sdp_to_json(const tfim_sdp* sdp, char** out);

/* ---- exact oracles ---- */
TFIM_API tfim_status tfim_lambda_max(const tfim_instance* inst, int cap, double* value);
/* Closed-form product-state energy; `bloch` holds 3n doubles (x, y, z per qubit). */
TFIM_API tfim_status tfim_evaluate_product_state(const tfim_instance* inst, const double* bloch,
                                                 size_t n, double* value);

/* ---- reports (JSON / CSV text) ---- */
typedef struct tfim_round_options {
  const char* algo;    /* "A", "B", "C", "warmup", "best"; NULL means "best" */
  double q;            /* AlgC parameter; negative selects q* */
  int trials;
  uint64_t seed;
  double tol;
  int cap;
  int restarts;
} tfim_round_options;

typedef struct tfim_bench_options {
  int instances;
  int n;
  double edge_prob;
  double neg_prob;
  double h_max;
  int trials;
  uint64_t seed;
  double tol;
  int cap;
} tfim_bench_options;

TFIM_API void tfim_round_options_init(tfim_round_options* opts);
TFIM_API void tfim_bench_options_init(tfim_bench_options* opts);

TFIM_API tfim_status tfim_report_round(const tfim_instance* inst, const tfim_round_options* opts,
                                       char** json_out);
TFIM_API tfim_status tfim_report_exact(const tfim_instance* inst, int cap, int restarts,
                                       uint64_t seed, char** json_out);
TFIM_API tfim_status tfim_report_constants(char** json_out);
/* format: "csv" or "json" */
TFIM_API tfim_status tfim_report_curve(int points, const char* format, char** out);
/* Returns TFIM_ERR_VERIFICATION when a check fails; the report is still produced. */
TFIM_API tfim_status tfim_report_triangle(double field, int restarts, int trials, uint64_t seed,
                                          double tol, char** json_out);
TFIM_API tfim_status tfim_report_bench(const tfim_bench_options* opts, const char* format,
                                       char** out);

#ifdef __cplusplus
}
#endif

#endif /* TFIM_TFIM_H */
