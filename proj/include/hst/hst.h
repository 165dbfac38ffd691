/* SPDX-License-Identifier: Apache-2.0 */
#ifndef HST_HST_H
#define HST_HST_H

/* C interface of the half-space thinness library. Every function returns an
 * hst_status; on failure hst_last_error() holds a message for the calling
 * thread. Objects are opaque and released with the matching _free call. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(HST_BUILDING_LIBRARY)
#define HST_API __attribute__((visibility("default")))
#else
#define HST_API
#endif

typedef enum hst_status {
  HST_OK = 0,
  HST_ERR_DOMAIN = 1,
  HST_ERR_PRECONDITION = 2,
  HST_ERR_CONVERGENCE = 3,
  HST_ERR_INVERSION = 4,
  HST_ERR_CONFIG = 5,
  HST_ERR_IO = 6,
  HST_ERR_SIMULATION = 7,
  HST_ERR_NULL_ARGUMENT = 8,
  HST_ERR_INTERNAL = 9
} hst_status;

typedef enum hst_verb { HST_VERB_KERNELS = 0, HST_VERB_THINNESS = 1, HST_VERB_SIMULATE = 2, HST_VERB_VERIFY = 3 } hst_verb;

/* Outcome codes of a run; they double as the tool's exit codes. */
enum { HST_OUTCOME_PASS = 0, HST_OUTCOME_CHECK_FAILED = 2, HST_OUTCOME_INCONCLUSIVE = 3 };

/* Status of a shell-sum criterion. */
enum { HST_CONVERGES = 0, HST_DIVERGES = 1, HST_INCONCLUSIVE = 2 };

typedef struct hst_process hst_process;
typedef struct hst_config hst_config;
typedef struct hst_report hst_report;

typedef struct hst_integral {
  int status;
  double value;
  double error_bound;
  int shells_used;
} hst_integral;

HST_API const char* hst_version(void);
HST_API const char* hst_last_error(void);
HST_API const char* hst_status_name(hst_status status);

/* Processes: phi(lambda) = lambda^{alpha/2} and friends, in dimension d. */
HST_API hst_status hst_process_stable(int d, double alpha, hst_process** out);
HST_API hst_status hst_process_relativistic(int d, double alpha, double m, hst_process** out);
HST_API hst_status hst_process_stable_mix(int d, double alpha, double beta, hst_process** out);
HST_API hst_status hst_process_brownian_plus_stable(int d, double a, double b, double beta, hst_process** out);
HST_API void hst_process_free(hst_process* p);
/* Writes at most `size` bytes including the terminating zero. */
HST_API hst_status hst_process_name(const hst_process* p, char* buffer, int size);

HST_API hst_status hst_phi(const hst_process* p, double lambda, double* out);
HST_API hst_status hst_levy_density(const hst_process* p, double t, double* out);
HST_API hst_status hst_potential_density(const hst_process* p, double t, double* out);
HST_API hst_status hst_green(const hst_process* p, double r, double* out);
HST_API hst_status hst_jump(const hst_process* p, double r, double* out);
HST_API hst_status hst_renewal(const hst_process* p, double t, double* out);

/* Shell criteria for the profile f(r) = c r^beta log(e/r)^{-p}; p = 0 gives
 * the plain power law. max_shells <= 0 selects the default. */
HST_API hst_status hst_burdzy(int d, double c, double beta, double p, int max_shells, hst_integral* out);
HST_API hst_status hst_thorn_brownian(int d, double c, double beta, double p, int max_shells, hst_integral* out);
HST_API hst_status hst_thorn_stable(int d, double alpha, double c, double beta, double p, int max_shells,
                                    hst_integral* out);

/* Estimate of P_A h / h for the graph set {0 < x_d <= c |x_tilde|^beta},
 * started at (0, height). */
HST_API hst_status hst_hitting_estimate(const hst_process* p, double c, double beta, double height,
                                        unsigned long long seed, long long n_paths, int threads, double* estimate,
                                        double* std_error);

/* JSON run configuration with dotted-key overrides (`process.alpha=1.5`). */
HST_API hst_status hst_config_from_file(const char* path, hst_config** out);
HST_API hst_status hst_config_from_string(const char* json, hst_config** out);
HST_API hst_status hst_config_override(hst_config* cfg, const char* assignment);
HST_API void hst_config_free(hst_config* cfg);

/* Runs a verb, writing its CSV files into out_dir. Existing files are only
 * replaced when `force` is non-zero. */
HST_API hst_status hst_run(hst_verb verb, const hst_config* cfg, const char* out_dir, int force, hst_report** out);
HST_API int hst_report_outcome(const hst_report* r);
HST_API const char* hst_report_summary(const hst_report* r);
HST_API void hst_report_free(hst_report* r);

#ifdef __cplusplus
}
#endif

#endif
