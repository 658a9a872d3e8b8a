#ifndef WAVELAB_H
#define WAVELAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(WL_BUILDING)
#define WL_API __attribute__((visibility("default")))
#else
#define WL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  WL_OK = 0,
  WL_BAD_ARGUMENT = 1,
  WL_GUARD_VIOLATION = 2,
  WL_REGION_EXCEEDS_BOX = 3,
  WL_NOT_SUPPORTED = 4,
  WL_REFUSED = 5,
  WL_IO_FAILURE = 6,
  WL_INTERNAL = 99
} wl_status;

typedef struct wl_config wl_config;
typedef struct wl_report wl_report;
typedef struct wl_field wl_field;

/* Message of the last failing call on this thread. */
WL_API const char* wl_last_error(void);
WL_API const char* wl_status_string(wl_status s);
WL_API void wl_set_jobs(int jobs);

/* Bench configuration: flat key = value, unknown keys rejected. */
WL_API wl_status wl_config_create(wl_config** out);
WL_API wl_status wl_config_load(wl_config* c, const char* path);
WL_API wl_status wl_config_parse(wl_config* c, const char* text);
WL_API wl_status wl_config_set(wl_config* c, const char* key, const char* value);
WL_API wl_status wl_config_get(const wl_config* c, const char* key, char* buf, size_t len);
WL_API void wl_config_destroy(wl_config* c);

/* suite: partition, cm, kernel, trilinear, hardy, lowerbound or all. */
WL_API wl_status wl_run(const wl_config* c, const char* suite, wl_report** out);
WL_API int wl_report_passed(const wl_report* r);
WL_API size_t wl_report_record_count(const wl_report* r);
WL_API wl_status wl_report_record(const wl_report* r, size_t i, const char** name, const char** criterion,
                                  double* measured, double* lo, double* hi, int* pass);
WL_API wl_status wl_report_write(const wl_report* r, const char* out_dir);
/* Writes only the plot tables; *count receives the number of files. */
WL_API wl_status wl_report_write_plots(const wl_report* r, const char* dir, size_t* count);
WL_API void wl_report_destroy(wl_report* r);
/* Empty report, for plumbing checks. */
WL_API wl_status wl_report_create_empty(wl_report** out);

/* Fields on a periodic grid of N^dim points, box side X; values are interleaved re, im. */
WL_API wl_status wl_field_create(int dim, int N, double X, wl_field** out);
WL_API size_t wl_field_size(const wl_field* f);
WL_API wl_status wl_field_set(wl_field* f, const double* re_im, size_t count);
WL_API wl_status wl_field_get(const wl_field* f, double* re_im, size_t count);
/* p <= 0 means the sup norm. */
WL_API wl_status wl_field_lp_norm(const wl_field* f, double p, double* out);
WL_API void wl_field_destroy(wl_field* f);

/* Partition of unity at |xi| = r: kind 0 psi_j, 1 phi, 2 zeta, 3 phi(2^-j .). */
WL_API wl_status wl_partition_eval(double sharpness, int kind, int j, double r, double* out);

/* Cutoff names: psi, bump, phi, phi:c. */
WL_API wl_status wl_kernel_compute(const char* cutoff, int j, int phase_on, wl_field* out);
WL_API wl_status wl_kernel_lp_slope(const char* cutoff, double p, int j_min, int j_max, int phase_on, int dim,
                                    int N, double X, double* slope);
WL_API wl_status wl_half_wave(const char* cutoff, int j, int phase_on, const wl_field* f, wl_field* out);
WL_API wl_status wl_duality_residual(int dim, int N, double X, int j, int trials, uint64_t seed, int violated,
                                     double* residual);
WL_API wl_status wl_lower_bound_lhs(int j, double delta, double delta_prime, double* lhs, double* tail);

#ifdef __cplusplus
}
#endif

#endif
