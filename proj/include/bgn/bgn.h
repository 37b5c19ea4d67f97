#ifndef BGN_BGN_H
#define BGN_BGN_H

/* C interface to the beta generalized normal library. Every function that can
 * fail returns a bgn_status; on failure bgn_last_error() describes the cause
 * for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BGN_API __declspec(dllexport)
#else
#define BGN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bgn_status {
    BGN_OK = 0,
    BGN_E_DOMAIN = 1,
    BGN_E_CONVERGENCE = 2,
    BGN_E_DIVERGENCE = 3,
    BGN_E_QUADRATURE = 4,
    BGN_E_PARSE = 5,
    BGN_E_DIMENSION = 6,
    BGN_E_EMPTY_REGION = 7,
    BGN_E_IO = 8,
    BGN_E_INVALID_ARGUMENT = 9,
    BGN_E_INTERNAL = 100
} bgn_status;

typedef struct bgn_params {
    double alpha;
    double beta;
    double mu;
    double sigma;
    double s;
} bgn_params;

typedef struct bgn_fit_options {
    int max_iter;
    double grad_tol;
    int n_starts;
    uint64_t seed;
    /* Threads over start points; 0 picks the hardware count. */
    int workers;
} bgn_fit_options;

typedef struct bgn_fit_result {
    bgn_params params;
    double loglik;
    int converged;
    int iterations;
    double grad_norm;
    int start_index;
} bgn_fit_result;

typedef struct bgn_rect {
    int x0;
    int y0;
    int width;
    int height;
} bgn_rect;

typedef struct bgn_descriptive {
    double mean;
    double median;
    double sd;
    /* Coefficient of variation in percent. */
    double cv;
} bgn_descriptive;

typedef enum bgn_moment_method { BGN_MOMENT_SERIES = 0, BGN_MOMENT_QUADRATURE = 1 } bgn_moment_method;

typedef struct bgn_mc_config {
    int replications;
    const int* sample_sizes;
    size_t n_sample_sizes;
    /* "s", "beta" or "alpha". */
    const char* scenario;
    /* NULL selects 1, 1.5, ..., 5. */
    const double* sweep;
    size_t n_sweep;
    bgn_params base;
    int grid_points;
    uint64_t seed;
    int workers;
    bgn_fit_options fit;
} bgn_mc_config;

typedef struct bgn_region bgn_region;
typedef struct bgn_report bgn_report;

BGN_API const char* bgn_last_error(void);
BGN_API const char* bgn_status_name(bgn_status status);

BGN_API void bgn_params_default(bgn_params* p);
BGN_API void bgn_fit_options_default(bgn_fit_options* opts);
BGN_API void bgn_mc_config_default(bgn_mc_config* cfg);

BGN_API bgn_status bgn_pdf(const bgn_params* p, double x, double* out);
BGN_API bgn_status bgn_log_pdf(const bgn_params* p, double x, double* out);
BGN_API bgn_status bgn_cdf(const bgn_params* p, double x, double* out);
BGN_API bgn_status bgn_quantile(const bgn_params* p, double prob, double* out);
/* Writes n draws into out, which must hold n values. */
BGN_API bgn_status bgn_sample(const bgn_params* p, size_t n, uint64_t seed, double* out);
/* validated may be NULL; it is set for the series method only. */
BGN_API bgn_status bgn_moment(const bgn_params* p, int order, bgn_moment_method method, double* out,
                              int* validated);
BGN_API bgn_status bgn_loglik(const bgn_params* p, const double* data, size_t n, double* out);
/* opts may be NULL for defaults. */
BGN_API bgn_status bgn_fit(const double* data, size_t n, const bgn_fit_options* opts, bgn_fit_result* out);

/* format is "csv", "pgm16" or "raw_f32le"; rect may be NULL for the whole
 * image; raw_width and raw_height are used by raw_f32le only. */
BGN_API bgn_status bgn_region_load(const char* path, const char* format, const bgn_rect* rect, const char* channel,
                                   int raw_width, int raw_height, bgn_region** out);
BGN_API bgn_status bgn_region_from_values(const double* values, size_t n, const char* source, const char* channel,
                                          bgn_region** out);
BGN_API void bgn_region_free(bgn_region* region);
BGN_API size_t bgn_region_size(const bgn_region* region);
BGN_API const double* bgn_region_values(const bgn_region* region);
BGN_API size_t bgn_region_rejected(const bgn_region* region);
BGN_API bgn_status bgn_region_write_csv(const bgn_region* region, const char* path);
BGN_API bgn_status bgn_describe(const bgn_region* region, bgn_descriptive* out);

/* Reports carry JSON and plain-text renderings. */
BGN_API bgn_status bgn_describe_report(const bgn_region* region, bgn_report** out);
BGN_API bgn_status bgn_compare(const bgn_region* region, const bgn_fit_options* opts, bgn_report** out);
BGN_API bgn_status bgn_mc_study(const bgn_mc_config* cfg, bgn_report** out);
BGN_API bgn_status bgn_rng_check(const bgn_params* p, size_t n, int bins, uint64_t seed, bgn_report** out);
BGN_API const char* bgn_report_json(const bgn_report* report);
BGN_API const char* bgn_report_text(const bgn_report* report);
/* 1 when every fit behind the report converged: all four models for a
 * comparison, every replication for a Monte Carlo table. */
BGN_API int bgn_report_converged(const bgn_report* report);
BGN_API void bgn_report_free(bgn_report* report);

#ifdef __cplusplus
}
#endif

#endif
