/*
 * trapstab.h - C interface to the trapstab stability library.
 *
 * Every function that can fail returns a trapstab_status; on failure the
 * message is available from trapstab_last_error() on the calling thread until
 * the next failing call. Objects behind opaque handles are created by the
 * library and released with the matching *_free function (NULL is accepted).
 * Angles are in degrees.
 */
#ifndef TRAPSTAB_H
#define TRAPSTAB_H

#include <stddef.h>

#if defined(_WIN32)
#define TRAPSTAB_API __declspec(dllexport)
#else
#define TRAPSTAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum trapstab_status {
  TRAPSTAB_OK = 0,
  TRAPSTAB_ERR_DOMAIN = 1,
  TRAPSTAB_ERR_OVERFLOW = 2,
  TRAPSTAB_ERR_EIGENSOLVER = 3,
  TRAPSTAB_ERR_INCONSISTENT = 4,
  TRAPSTAB_ERR_IO = 5,
  TRAPSTAB_ERR_PARSE = 6,
  TRAPSTAB_ERR_NULL_ARG = 7,
  TRAPSTAB_ERR_INTERNAL = 8
} trapstab_status;

/* Cell and point labels. TRAPSTAB_CELL_ERROR marks a sweep cell whose
 * evaluation failed. */
typedef enum trapstab_label {
  TRAPSTAB_CELL_ERROR = -1,
  TRAPSTAB_FULLY_STABLE = 0,
  TRAPSTAB_PARTIALLY_STABLE = 1,
  TRAPSTAB_UNSTABLE = 2,
  TRAPSTAB_MARGINAL = 3
} trapstab_label;

typedef enum trapstab_curve_method {
  TRAPSTAB_CURVE_HILL = 0,
  TRAPSTAB_CURVE_MULTISCALE = 1,
  TRAPSTAB_CURVE_DECOUPLED_MULTISCALE = 2
} trapstab_curve_method;

typedef struct trapstab_params {
  double q;
  double a;
  double alpha;
  double theta_deg;
} trapstab_params;

typedef struct trapstab_grid_spec {
  double q_min;
  double q_max;
  double a_min;
  double a_max;
  int nq;
  int na;
} trapstab_grid_spec;

typedef struct trapstab_hill_options {
  int order;       /* Fourier truncation, indices -order..order */
  double a_lo;     /* root bracket */
  double a_hi;
  int scan_points; /* uniform scan intervals before bisection */
  double tol;      /* bisection tolerance in a */
} trapstab_hill_options;

typedef struct trapstab_grid trapstab_grid;
typedef struct trapstab_curves trapstab_curves;
typedef struct trapstab_trace trapstab_trace;

TRAPSTAB_API const char* trapstab_version(void);
TRAPSTAB_API const char* trapstab_last_error(void);
TRAPSTAB_API const char* trapstab_status_name(trapstab_status status);
TRAPSTAB_API const char* trapstab_label_name(int label);
TRAPSTAB_API const char* trapstab_curve_method_name(int method);

/* Defaults used when a caller passes steps <= 0 or a NULL options pointer. */
TRAPSTAB_API int trapstab_default_steps(void);
TRAPSTAB_API void trapstab_hill_default_options(trapstab_hill_options* opts);

/* ---- point evaluation ------------------------------------------------- */

/* 4x4 mapping at a period, row-major, state order (x, y, x', y'). */
TRAPSTAB_API trapstab_status trapstab_monodromy(const trapstab_params* params, int steps,
                                                double out_row_major[16]);

TRAPSTAB_API trapstab_status trapstab_spectrum(const double m_row_major[16], double re[4],
                                               double im[4], double* residual);

TRAPSTAB_API trapstab_status trapstab_classify(const trapstab_params* params, int steps,
                                               int* label, int* unit_count);

TRAPSTAB_API trapstab_status trapstab_hill_det(int nu, const trapstab_params* params,
                                               int order, double* normalized,
                                               double* pole_free, int* unscaled_rows);

/* ---- stability grids -------------------------------------------------- */

/* threads = 0 uses TRAPSTAB_THREADS or the hardware concurrency. Per-cell
 * failures do not fail the sweep; they are counted by
 * trapstab_grid_error_count. */
TRAPSTAB_API trapstab_status trapstab_sweep(double alpha, double theta_deg,
                                            const trapstab_grid_spec* spec, int steps,
                                            unsigned threads, trapstab_grid** out);
TRAPSTAB_API void trapstab_grid_free(trapstab_grid* grid);
TRAPSTAB_API trapstab_status trapstab_grid_cell(const trapstab_grid* grid, int i, int j,
                                                int* label, int* unit_count);
TRAPSTAB_API size_t trapstab_grid_error_count(const trapstab_grid* grid);
TRAPSTAB_API trapstab_status trapstab_grid_write_csv(const trapstab_grid* grid,
                                                     const char* path);
TRAPSTAB_API trapstab_status trapstab_grid_write_pgm(const trapstab_grid* grid,
                                                     const char* path);

/* ---- boundary curves -------------------------------------------------- */

TRAPSTAB_API trapstab_status trapstab_curves_new(trapstab_curves** out);
TRAPSTAB_API void trapstab_curves_free(trapstab_curves* curves);

/* The generators append to an existing collection. */
TRAPSTAB_API trapstab_status trapstab_multiscale_coupled(trapstab_curves* dst, double alpha,
                                                         double theta_deg, const double* q,
                                                         size_t n);
TRAPSTAB_API trapstab_status trapstab_multiscale_decoupled(trapstab_curves* dst, double alpha,
                                                           const double* q, size_t n);
TRAPSTAB_API trapstab_status trapstab_hill_boundary(trapstab_curves* dst, int nu,
                                                    double alpha, double theta_deg,
                                                    const double* q, size_t n,
                                                    const trapstab_hill_options* opts);

TRAPSTAB_API size_t trapstab_curves_count(const trapstab_curves* curves);
TRAPSTAB_API const char* trapstab_curve_label(const trapstab_curves* curves, size_t k);
TRAPSTAB_API int trapstab_curve_get_method(const trapstab_curves* curves, size_t k);
TRAPSTAB_API size_t trapstab_curve_size(const trapstab_curves* curves, size_t k);
TRAPSTAB_API trapstab_status trapstab_curve_point(const trapstab_curves* curves, size_t k,
                                                  size_t idx, double* q, double* a);
TRAPSTAB_API size_t trapstab_curves_warning_count(const trapstab_curves* curves);
TRAPSTAB_API const char* trapstab_curves_warning(const trapstab_curves* curves, size_t k);
TRAPSTAB_API trapstab_status trapstab_curves_write_csv(const trapstab_curves* curves,
                                                       const char* path);

/* ---- eigenvalue traces ------------------------------------------------ */

TRAPSTAB_API trapstab_status trapstab_trace_eigenvalues(double alpha, double theta_deg,
                                                        double q, double a_lo, double a_hi,
                                                        int samples, int steps,
                                                        trapstab_trace** out);
TRAPSTAB_API void trapstab_trace_free(trapstab_trace* trace);
TRAPSTAB_API size_t trapstab_trace_size(const trapstab_trace* trace);
TRAPSTAB_API trapstab_status trapstab_trace_sample(const trapstab_trace* trace, size_t k,
                                                   double* a, double re[4], double im[4],
                                                   int* unit_count);
TRAPSTAB_API size_t trapstab_trace_collision_count(const trapstab_trace* trace);
TRAPSTAB_API trapstab_status trapstab_trace_collision(const trapstab_trace* trace, size_t k,
                                                      double* a, double* loc_re,
                                                      double* loc_im, int* on_real_axis);
TRAPSTAB_API trapstab_status trapstab_trace_write_csv(const trapstab_trace* trace,
                                                      const char* trace_path,
                                                      const char* collisions_path);

#ifdef __cplusplus
}
#endif

#endif /* TRAPSTAB_H */
