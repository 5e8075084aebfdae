// Glue between the public C interface and the C++ implementation.

#include <Eigen/Core>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "trapstab/errors.hpp"
#include "trapstab/floquet.hpp"
#include "trapstab/hill.hpp"
#include "trapstab/integrator.hpp"
#include "trapstab/io.hpp"
#include "trapstab/multiscale.hpp"
#include "trapstab/sweep.hpp"
#include "trapstab/trapstab.h"

#ifndef TRAPSTAB_VERSION_STRING
#define TRAPSTAB_VERSION_STRING "0.0.0"
#endif

struct trapstab_grid {
  trapstab::StabilityGrid grid;
};

struct trapstab_curves {
  std::vector<trapstab::BoundaryCurve> curves;
  std::vector<std::string> warnings;
};

struct trapstab_trace {
  trapstab::EigenTrace trace;
};

namespace {

thread_local std::string last_error;

trapstab_status status_of(trapstab::ErrorCode code) {
  using trapstab::ErrorCode;
  switch (code) {
    case ErrorCode::Domain: return TRAPSTAB_ERR_DOMAIN;
    case ErrorCode::Overflow: return TRAPSTAB_ERR_OVERFLOW;
    case ErrorCode::Eigensolver: return TRAPSTAB_ERR_EIGENSOLVER;
    case ErrorCode::Inconsistent: return TRAPSTAB_ERR_INCONSISTENT;
    case ErrorCode::Io: return TRAPSTAB_ERR_IO;
    case ErrorCode::Parse: return TRAPSTAB_ERR_PARSE;
  }
  return TRAPSTAB_ERR_INTERNAL;
}

template <typename F>
trapstab_status guarded(F&& body) {
  try {
    body();
    return TRAPSTAB_OK;
  } catch (const trapstab::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TRAPSTAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TRAPSTAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return TRAPSTAB_ERR_INTERNAL;
  }
}

trapstab_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return TRAPSTAB_ERR_NULL_ARG;
}

trapstab::TrapParams to_params(const trapstab_params& p) {
  return {p.q, p.a, p.alpha, p.theta_deg};
}

trapstab::IntegratorConfig to_cfg(int steps) {
  trapstab::IntegratorConfig cfg;
  if (steps > 0) cfg.steps_per_period = steps;
  return cfg;
}

int label_code(const std::optional<trapstab::StabilityClass>& cls) {
  if (!cls) return TRAPSTAB_CELL_ERROR;
  return static_cast<int>(cls->label);
}

template <typename Writer>
void write_to(const char* path, Writer&& writer) {
  std::ostringstream os;
  writer(os);
  trapstab::io::write_file(path, os.str());
}

}  // namespace

extern "C" {

const char* trapstab_version(void) { return TRAPSTAB_VERSION_STRING; }

const char* trapstab_last_error(void) { return last_error.c_str(); }

const char* trapstab_status_name(trapstab_status status) {
  switch (status) {
    case TRAPSTAB_OK: return "ok";
    case TRAPSTAB_ERR_DOMAIN: return "domain";
    case TRAPSTAB_ERR_OVERFLOW: return "overflow";
    case TRAPSTAB_ERR_EIGENSOLVER: return "eigensolver";
    case TRAPSTAB_ERR_INCONSISTENT: return "inconsistent";
    case TRAPSTAB_ERR_IO: return "io";
    case TRAPSTAB_ERR_PARSE: return "parse";
    case TRAPSTAB_ERR_NULL_ARG: return "null-argument";
    case TRAPSTAB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* trapstab_label_name(int label) {
  if (label == TRAPSTAB_CELL_ERROR) return "Error";
  if (label < 0 || label > TRAPSTAB_MARGINAL) return "Unknown";
  return trapstab::to_string(static_cast<trapstab::Stability>(label)).data();
}

const char* trapstab_curve_method_name(int method) {
  if (method < 0 || method > TRAPSTAB_CURVE_DECOUPLED_MULTISCALE) return "Unknown";
  return trapstab::to_string(static_cast<trapstab::CurveMethod>(method)).data();
}

int trapstab_default_steps(void) { return trapstab::IntegratorConfig{}.steps_per_period; }

void trapstab_hill_default_options(trapstab_hill_options* opts) {
  if (!opts) return;
  const trapstab::HillBoundaryOptions d;
  opts->order = d.order;
  opts->a_lo = d.a_lo;
  opts->a_hi = d.a_hi;
  opts->scan_points = d.scan_points;
  opts->tol = d.tol;
}

trapstab_status trapstab_monodromy(const trapstab_params* params, int steps,
                                   double out_row_major[16]) {
  if (!params) return null_arg("params");
  if (!out_row_major) return null_arg("out_row_major");
  return guarded([&] {
    const auto u = trapstab::monodromy(to_params(*params), to_cfg(steps));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out_row_major[4 * r + c] = u.m(r, c);
  });
}

trapstab_status trapstab_spectrum(const double m_row_major[16], double re[4], double im[4],
                                  double* residual) {
  if (!m_row_major) return null_arg("m_row_major");
  if (!re || !im) return null_arg("re/im");
  return guarded([&] {
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = m_row_major[4 * r + c];
    const auto s = trapstab::spectrum(m);
    for (int k = 0; k < 4; ++k) {
      re[k] = s.values[k].real();
      im[k] = s.values[k].imag();
    }
    if (residual) *residual = s.residual;
  });
}

trapstab_status trapstab_classify(const trapstab_params* params, int steps, int* label,
                                  int* unit_count) {
  if (!params) return null_arg("params");
  return guarded([&] {
    const auto cls = trapstab::classify_point(to_params(*params), to_cfg(steps));
    if (label) *label = static_cast<int>(cls.label);
    if (unit_count) *unit_count = cls.unit_count;
  });
}

trapstab_status trapstab_hill_det(int nu, const trapstab_params* params, int order,
                                  double* normalized, double* pole_free, int* unscaled_rows) {
  if (!params) return null_arg("params");
  return guarded([&] {
    const auto d = trapstab::hill_det(nu, to_params(*params), order);
    if (normalized) *normalized = d.normalized;
    if (pole_free) *pole_free = d.pole_free;
    if (unscaled_rows) *unscaled_rows = d.unscaled_rows;
  });
}

trapstab_status trapstab_sweep(double alpha, double theta_deg, const trapstab_grid_spec* spec,
                               int steps, unsigned threads, trapstab_grid** out) {
  if (!spec) return null_arg("spec");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const trapstab::GridSpec gs{spec->q_min, spec->q_max, spec->a_min,
                                spec->a_max, spec->nq,    spec->na};
    auto handle = std::make_unique<trapstab_grid>();
    handle->grid = trapstab::sweep_grid(alpha, theta_deg, gs, to_cfg(steps), {}, threads);
    *out = handle.release();
  });
}

void trapstab_grid_free(trapstab_grid* grid) { delete grid; }

trapstab_status trapstab_grid_cell(const trapstab_grid* grid, int i, int j, int* label,
                                   int* unit_count) {
  if (!grid) return null_arg("grid");
  const auto& g = grid->grid;
  if (i < 0 || j < 0 || i >= g.spec.nq || j >= g.spec.na) {
    last_error = "cell index out of range";
    return TRAPSTAB_ERR_DOMAIN;
  }
  const auto& cell = g.at(i, j);
  if (label) *label = label_code(cell.cls);
  if (unit_count) *unit_count = cell.cls ? cell.cls->unit_count : -1;
  return TRAPSTAB_OK;
}

size_t trapstab_grid_error_count(const trapstab_grid* grid) {
  return grid ? grid->grid.error_count() : 0;
}

trapstab_status trapstab_grid_write_csv(const trapstab_grid* grid, const char* path) {
  if (!grid) return null_arg("grid");
  if (!path) return null_arg("path");
  return guarded([&] {
    write_to(path, [&](std::ostream& os) { trapstab::io::write_grid_csv(os, grid->grid); });
  });
}

trapstab_status trapstab_grid_write_pgm(const trapstab_grid* grid, const char* path) {
  if (!grid) return null_arg("grid");
  if (!path) return null_arg("path");
  return guarded([&] {
    write_to(path, [&](std::ostream& os) { trapstab::io::write_grid_pgm(os, grid->grid); });
  });
}

trapstab_status trapstab_curves_new(trapstab_curves** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new trapstab_curves(); });
}

void trapstab_curves_free(trapstab_curves* curves) { delete curves; }

trapstab_status trapstab_multiscale_coupled(trapstab_curves* dst, double alpha,
                                            double theta_deg, const double* q, size_t n) {
  if (!dst) return null_arg("dst");
  if (!q && n > 0) return null_arg("q");
  return guarded([&] {
    auto curves = trapstab::coupled_boundaries(alpha, theta_deg, std::span<const double>(q, n));
    dst->curves.insert(dst->curves.end(), curves.begin(), curves.end());
  });
}

trapstab_status trapstab_multiscale_decoupled(trapstab_curves* dst, double alpha,
                                              const double* q, size_t n) {
  if (!dst) return null_arg("dst");
  if (!q && n > 0) return null_arg("q");
  return guarded([&] {
    auto curves = trapstab::decoupled_boundaries(alpha, std::span<const double>(q, n));
    dst->curves.insert(dst->curves.end(), curves.begin(), curves.end());
  });
}

trapstab_status trapstab_hill_boundary(trapstab_curves* dst, int nu, double alpha,
                                       double theta_deg, const double* q, size_t n,
                                       const trapstab_hill_options* opts) {
  if (!dst) return null_arg("dst");
  if (!q && n > 0) return null_arg("q");
  return guarded([&] {
    trapstab::HillBoundaryOptions o;
    if (opts) o = {opts->order, opts->a_lo, opts->a_hi, opts->scan_points, opts->tol};
    auto result = trapstab::hill_boundary(nu, alpha, theta_deg, std::span<const double>(q, n), o);
    dst->curves.insert(dst->curves.end(), result.curves.begin(), result.curves.end());
    dst->warnings.insert(dst->warnings.end(), result.warnings.begin(), result.warnings.end());
  });
}

size_t trapstab_curves_count(const trapstab_curves* curves) {
  return curves ? curves->curves.size() : 0;
}

const char* trapstab_curve_label(const trapstab_curves* curves, size_t k) {
  if (!curves || k >= curves->curves.size()) return nullptr;
  return curves->curves[k].label.c_str();
}

int trapstab_curve_get_method(const trapstab_curves* curves, size_t k) {
  if (!curves || k >= curves->curves.size()) return -1;
  return static_cast<int>(curves->curves[k].method);
}

size_t trapstab_curve_size(const trapstab_curves* curves, size_t k) {
  if (!curves || k >= curves->curves.size()) return 0;
  return curves->curves[k].points.size();
}

trapstab_status trapstab_curve_point(const trapstab_curves* curves, size_t k, size_t idx,
                                     double* q, double* a) {
  if (!curves) return null_arg("curves");
  if (k >= curves->curves.size() || idx >= curves->curves[k].points.size()) {
    last_error = "curve or point index out of range";
    return TRAPSTAB_ERR_DOMAIN;
  }
  const auto& p = curves->curves[k].points[idx];
  if (q) *q = p.q;
  if (a) *a = p.a;
  return TRAPSTAB_OK;
}

size_t trapstab_curves_warning_count(const trapstab_curves* curves) {
  return curves ? curves->warnings.size() : 0;
}

const char* trapstab_curves_warning(const trapstab_curves* curves, size_t k) {
  if (!curves || k >= curves->warnings.size()) return nullptr;
  return curves->warnings[k].c_str();
}

trapstab_status trapstab_curves_write_csv(const trapstab_curves* curves, const char* path) {
  if (!curves) return null_arg("curves");
  if (!path) return null_arg("path");
  return guarded([&] {
    write_to(path,
             [&](std::ostream& os) { trapstab::io::write_curves_csv(os, curves->curves); });
  });
}

trapstab_status trapstab_trace_eigenvalues(double alpha, double theta_deg, double q,
                                           double a_lo, double a_hi, int samples, int steps,
                                           trapstab_trace** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<trapstab_trace>();
    handle->trace =
        trapstab::trace_eigenvalues(alpha, theta_deg, q, a_lo, a_hi, samples, to_cfg(steps));
    *out = handle.release();
  });
}

void trapstab_trace_free(trapstab_trace* trace) { delete trace; }

size_t trapstab_trace_size(const trapstab_trace* trace) {
  return trace ? trace->trace.path.size() : 0;
}

trapstab_status trapstab_trace_sample(const trapstab_trace* trace, size_t k, double* a,
                                      double re[4], double im[4], int* unit_count) {
  if (!trace) return null_arg("trace");
  if (k >= trace->trace.path.size()) {
    last_error = "trace index out of range";
    return TRAPSTAB_ERR_DOMAIN;
  }
  const auto& s = trace->trace.path[k];
  if (a) *a = s.params.a;
  for (int i = 0; i < 4; ++i) {
    if (re) re[i] = s.spectrum.values[i].real();
    if (im) im[i] = s.spectrum.values[i].imag();
  }
  if (unit_count) *unit_count = s.cls.unit_count;
  return TRAPSTAB_OK;
}

size_t trapstab_trace_collision_count(const trapstab_trace* trace) {
  return trace ? trace->trace.collisions.size() : 0;
}

trapstab_status trapstab_trace_collision(const trapstab_trace* trace, size_t k, double* a,
                                         double* loc_re, double* loc_im, int* on_real_axis) {
  if (!trace) return null_arg("trace");
  if (k >= trace->trace.collisions.size()) {
    last_error = "collision index out of range";
    return TRAPSTAB_ERR_DOMAIN;
  }
  const auto& c = trace->trace.collisions[k];
  if (a) *a = c.a;
  if (loc_re) *loc_re = c.location.real();
  if (loc_im) *loc_im = c.location.imag();
  if (on_real_axis) *on_real_axis = c.on_real_axis ? 1 : 0;
  return TRAPSTAB_OK;
}

trapstab_status trapstab_trace_write_csv(const trapstab_trace* trace, const char* trace_path,
                                         const char* collisions_path) {
  if (!trace) return null_arg("trace");
  return guarded([&] {
    if (trace_path) {
      write_to(trace_path,
               [&](std::ostream& os) { trapstab::io::write_trace_csv(os, trace->trace); });
    }
    if (collisions_path) {
      write_to(collisions_path,
               [&](std::ostream& os) { trapstab::io::write_collisions_csv(os, trace->trace); });
    }
  });
}

}  // extern "C"
