#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string_view>
#include <vector>

#include "trapstab/core.hpp"
#include "trapstab/integrator.hpp"

namespace trapstab {

using Complex = std::complex<double>;

/// Floquet multipliers of a monodromy matrix. `residual` is
/// max |det(lambda I - U)| / ||U||_F^4 over the four values.
struct EigenSpectrum {
  std::array<Complex, 4> values;
  double residual = 0.0;
};

enum class Stability { FullyStable, PartiallyStable, Unstable, Marginal };

std::string_view to_string(Stability s);
/// Inverse of to_string; throws Error(Parse) on unknown names.
Stability parse_stability(std::string_view name);

struct StabilityClass {
  Stability label = Stability::Unstable;
  int unit_count = 0;

  friend bool operator==(const StabilityClass&, const StabilityClass&) = default;
};

struct ClassifyTolerances {
  double unit = 1e-6;        // ||lambda| - 1| below this counts as unit modulus
  double degenerate = 1e-6;  // pairwise distance below this counts as repeated
};

/// Largest admissible spectrum residual.
inline constexpr double kSpectrumResidualLimit = 1e-8;

EigenSpectrum spectrum(const Eigen::Matrix4d& m);
inline EigenSpectrum spectrum(const MonodromyMatrix& m) { return spectrum(m.m); }

StabilityClass classify(const EigenSpectrum& s, const ClassifyTolerances& tol = {});

/// classify(spectrum(monodromy(params, cfg)))
StabilityClass classify_point(const TrapParams& params,
                              const IntegratorConfig& cfg = {},
                              const ClassifyTolerances& tol = {});

/// Bisects [lo, hi] on a predicate that differs at the two ends until the
/// bracket is no wider than `width`. Returns the final bracket.
struct Bracket {
  double lo;
  double hi;
};
Bracket bisect_change(const std::function<bool(double)>& pred, double lo,
                      double hi, double width);

struct TraceSample {
  TrapParams params;
  EigenSpectrum spectrum;  // reordered to follow continuous branches
  StabilityClass cls;
};

struct Collision {
  double a = 0.0;
  Complex location;        // point on the unit circle where the pair met
  bool on_real_axis = false;
  int unit_count_before = 0;  // on the lower-a side
  int unit_count_after = 0;
};

struct EigenTrace {
  std::vector<TraceSample> path;
  std::vector<Collision> collisions;
};

struct TraceOptions {
  double refine_width = 1e-9;    // bisection bracket for collisions
  double real_axis_tol = 1e-4;   // |Im| below this marks a real-axis collision
  ClassifyTolerances tol;
};

/// Samples the spectrum along the line q = q_fixed, a in [a_lo, a_hi] at
/// `samples` evenly spaced points and records every change of unit_count as
/// a collision, refined by bisection.
EigenTrace trace_eigenvalues(double alpha, double theta_deg, double q_fixed,
                             double a_lo, double a_hi, int samples,
                             const IntegratorConfig& cfg = {},
                             const TraceOptions& opts = {});

/// Smallest pairwise distance between the eigenvalues of `s` that lie on the
/// unit circle (infinity when fewer than two do).
double min_unit_pair_distance(const EigenSpectrum& s, double unit_tol = 1e-6);

}  // namespace trapstab
