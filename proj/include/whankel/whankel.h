#ifndef WHANKEL_H
#define WHANKEL_H

/* C interface to the whankel library. All functions return a wh_status;
   on failure wh_last_error() holds a message for the calling thread. */

#if defined(__GNUC__)
#define WH_API __attribute__((visibility("default")))
#else
#define WH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wh_status {
  WH_OK = 0,
  WH_DOMAIN = 1,
  WH_OVERFLOW = 2,
  WH_NONCONVERGENCE = 3,
  WH_BUDGET = 4,
  WH_DIVERGENT = 5,
  WH_INVALID_ARGUMENT = 6,
  WH_CANCELLATION = 7,
  WH_UNSUPPORTED = 8,
  WH_INTERNAL = 99
} wh_status;

typedef enum wh_tail_policy { WH_TAIL_ACCELERATED = 0, WH_TAIL_DYADIC = 1 } wh_tail_policy;

/* verify outcome; also the CLI exit code */
typedef enum wh_outcome { WH_PASS = 0, WH_FAIL = 1, WH_INCONCLUSIVE = 2 } wh_outcome;

typedef struct wh_params {
  double alpha;
  double nu;
  double mu;
} wh_params;

typedef struct wh_options {
  double rel_tol;
  double abs_tol;
  long max_panels;
  int threads; /* scan workers; 0 = hardware concurrency */
} wh_options;

typedef struct wh_scan_grid {
  double r_min;
  double r_max;
  int r_points;
  int m_k_min; /* M = 2^k */
  int m_k_max;
} wh_scan_grid;

typedef struct wh_function wh_function;
typedef struct wh_report wh_report;

WH_API const char* wh_version(void);
WH_API const char* wh_last_error(void);
WH_API const char* wh_status_name(wh_status s);

WH_API void wh_options_default(wh_options* out);
WH_API void wh_scan_grid_default(wh_scan_grid* out);

/* spec: "name" or "name:key=val,..." naming a gallery entry */
WH_API wh_status wh_function_create(const char* spec, const wh_params* params, wh_function** out);
WH_API void wh_function_destroy(wh_function* f);
WH_API wh_status wh_function_value(const wh_function* f, double t, double* out);

WH_API wh_status wh_bessel_j(double alpha, double z, double* out);
WH_API wh_status wh_kernel(const wh_params* params, double t, double r, double* out);

/* Full transform at r >= 0. */
WH_API wh_status wh_evaluate(const wh_params* params, const wh_function* f, double r, wh_tail_policy policy,
                             const wh_options* opts, double* value, double* abs_error);

/* r^mu int_M^N (rt)^nu f(t) j_alpha(rt) dt; N may be INFINITY. */
WH_API wh_status wh_partial(const wh_params* params, const wh_function* f, double r, double M, double N,
                            const wh_options* opts, double* value, double* abs_error);

/* Reports carry JSON and CSV renderings. Numeric failures such as certified
   divergence are recorded inside the report and still return WH_OK. */
WH_API wh_status wh_report_eval(const wh_params* params, const wh_function* f, double r, wh_tail_policy policy,
                                const wh_options* opts, wh_report** out);
WH_API wh_status wh_report_remainder(const wh_params* params, const wh_function* f, double r, double M, double N,
                                     const wh_options* opts, wh_report** out);
WH_API wh_status wh_report_scan(const wh_params* params, const wh_function* f, const wh_scan_grid* grid,
                                const wh_options* opts, wh_report** out);
WH_API wh_status wh_report_check(const char* theorem, const wh_params* params, const wh_function* f,
                                 const wh_options* opts, wh_report** out);
WH_API wh_status wh_report_verify(const char* theorem, const wh_params* params, const wh_function* f,
                                  const wh_scan_grid* grid, const wh_options* opts, wh_report** out);
WH_API wh_status wh_report_gm(const wh_function* f, double lambda, int k_min, int k_max, wh_report** out);
WH_API wh_status wh_report_gallery(wh_report** out);

WH_API const char* wh_report_json(const wh_report* r);
WH_API const char* wh_report_csv(const wh_report* r);
/* WH_PASS / WH_FAIL / WH_INCONCLUSIVE for verify reports, WH_PASS otherwise */
WH_API wh_outcome wh_report_outcome(const wh_report* r);
WH_API void wh_report_destroy(wh_report* r);

#ifdef __cplusplus
}
#endif

#endif
