#ifndef HENONDIM_HENONDIM_H
#define HENONDIM_HENONDIM_H

/*
 * C interface to the henondim toolkit: periodic-orbit libraries, pressure
 * curves, dimension reports and parameter sweeps for hyperbolic generalized
 * Hénon maps and exactly solvable linear shift models.
 *
 * Every fallible call returns an hd_status. On failure the message of the
 * most recent error on the calling thread is available from
 * hd_last_error_message(). Strings returned through char** out-parameters
 * are owned by the caller and released with hd_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HENONDIM_BUILDING_LIBRARY)
#    define HD_API __declspec(dllexport)
#  else
#    define HD_API __declspec(dllimport)
#  endif
#else
#  define HD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hd_status {
  HD_OK = 0,
  HD_ERR_CONFIG,
  HD_ERR_ESCAPED,
  HD_ERR_ORIENTATION,
  HD_ERR_SEEDING_DIVERGED,
  HD_ERR_NEWTON_DIVERGED,
  HD_ERR_NON_HYPERBOLIC,
  HD_ERR_INCOMPLETE_LIBRARY,
  HD_ERR_DEGENERATE_LAMBDA,
  HD_ERR_NO_BRACKET,
  HD_ERR_NO_INTERIOR_MAX,
  HD_ERR_FINGERPRINT_MISMATCH,
  HD_ERR_CORRUPT_CACHE,
  HD_ERR_BUDGET_EXCEEDED,
  HD_ERR_IO,
  HD_ERR_INVALID_ARGUMENT,
  HD_ERR_INTERNAL
} hd_status;

typedef struct hd_config hd_config;
typedef struct hd_library hd_library;
typedef struct hd_report hd_report;

typedef struct hd_report_summary {
  double t_u;
  double t_s;
  double dim_J;
  double d_g;
  double gap;
  double formula_residual;
  double err_est;
  int n_max; /* INT_MAX for closed-form reports */
  int maximizer_count;
  const char* verdict;
} hd_report_summary;

HD_API const char* hd_version(void);
/* Error tag in its textual form, e.g. "no-bracket". */
HD_API const char* hd_status_tag(hd_status status);
/* Nonzero for statuses that stem from invalid input rather than numerics. */
HD_API int hd_status_is_config(hd_status status);
HD_API const char* hd_last_error_message(void);
HD_API void hd_string_free(char* s);

/* Configuration */
HD_API hd_status hd_config_load_file(const char* path, hd_config** out);
HD_API hd_status hd_config_load_string(const char* yaml, const char* source, hd_config** out);
HD_API void hd_config_free(hd_config* cfg);
HD_API hd_status hd_config_validate(const hd_config* cfg);
HD_API hd_status hd_config_set_n_max(hd_config* cfg, int n_max);
HD_API hd_status hd_config_set_t_min(hd_config* cfg, double t_min);
HD_API hd_status hd_config_set_t_max(hd_config* cfg, double t_max);
HD_API hd_status hd_config_set_t_step(hd_config* cfg, double t_step);
HD_API hd_status hd_config_set_tol(hd_config* cfg, double tol);
HD_API hd_status hd_config_set_cache_dir(hd_config* cfg, const char* dir);
HD_API hd_status hd_config_set_jobs(hd_config* cfg, int jobs);
HD_API int hd_config_n_max(const hd_config* cfg);
HD_API double hd_config_tol(const hd_config* cfg);
HD_API int hd_config_jobs(const hd_config* cfg);
HD_API const char* hd_config_cache_dir(const hd_config* cfg);
HD_API uint64_t hd_config_fingerprint(const hd_config* cfg);

/* Orbit libraries. With a non-empty cache_dir the library is read from or
 * written to cache_dir/orbits-<fingerprint>.csv; refresh forces a rebuild. */
HD_API hd_status hd_library_obtain(const hd_config* cfg, int refresh, hd_library** out);
HD_API hd_status hd_library_load(const char* path, uint64_t fingerprint, hd_library** out);
HD_API hd_status hd_library_store(const hd_library* lib, const char* path);
HD_API void hd_library_free(hd_library* lib);
HD_API int hd_library_n_max(const hd_library* lib);
HD_API hd_status hd_library_period(const hd_library* lib, int period, uint64_t* primitive_orbits,
                                   uint64_t* fixed_points, int* complete);
/* period,primitive_orbits,fixed_points,expected,complete,max_residual */
HD_API hd_status hd_library_summary_csv(const hd_library* lib, char** out);

/* Pressure curve CSV over the configured t grid. */
HD_API hd_status hd_pressure_curve_csv(const hd_config* cfg, const hd_library* lib, char** out);

/* Dimension reports */
HD_API hd_status hd_report_compute(const hd_config* cfg, const hd_library* lib, hd_report** out);
HD_API void hd_report_free(hd_report* report);
HD_API hd_status hd_report_summary_get(const hd_report* report, hd_report_summary* out);
HD_API hd_status hd_report_text(const hd_report* report, char** out);
HD_API hd_status hd_report_maxdim_text(const hd_report* report, char** out);
HD_API hd_status hd_report_csv(const hd_report* report, int with_header, char** out);

/* Parameter families; the configuration must carry a family section. */
HD_API hd_status hd_sweep_csv(const hd_config* cfg, char** out, double* continuity, int* has_continuity);
HD_API hd_status hd_submean_text(const hd_config* cfg, char** out, int* violation);

/* Closed-form equivalence suite; failures receives the number of failed checks. */
HD_API hd_status hd_oracle_selftest(char** out, int* failures);

#ifdef __cplusplus
}
#endif

#endif
