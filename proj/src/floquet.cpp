#include "trapstab/floquet.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "trapstab/errors.hpp"

namespace trapstab {

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::FullyStable: return "FullyStable";
    case Stability::PartiallyStable: return "PartiallyStable";
    case Stability::Unstable: return "Unstable";
    case Stability::Marginal: return "Marginal";
  }
  return "Unstable";
}

Stability parse_stability(std::string_view name) {
  for (Stability s : {Stability::FullyStable, Stability::PartiallyStable,
                      Stability::Unstable, Stability::Marginal}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::Parse, "unknown stability label '" + std::string(name) + "'");
}

EigenSpectrum spectrum(const Eigen::Matrix4d& m) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::Eigensolver, "monodromy matrix has non-finite entries");
  }
  Eigen::EigenSolver<Eigen::Matrix4d> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Eigensolver, "eigenvalue iteration did not converge");
  }
  EigenSpectrum out;
  const Eigen::Vector4cd ev = solver.eigenvalues();
  const double scale = std::pow(std::max(1.0, m.norm()), 4);
  const Eigen::Matrix4cd mc = m.cast<Complex>();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    out.values[i] = ev[i];
    const Eigen::Matrix4cd shifted =
        ev[i] * Eigen::Matrix4cd::Identity() - mc;
    const double p = std::abs(shifted.partialPivLu().determinant());
    worst = std::max(worst, p / scale);
  }
  out.residual = worst;
  if (!(worst <= kSpectrumResidualLimit)) {
    std::ostringstream os;
    os << "characteristic polynomial residual " << worst << " exceeds "
       << kSpectrumResidualLimit;
    throw Error(ErrorCode::Eigensolver, os.str());
  }
  return out;
}

namespace {

bool on_unit_circle(const Complex& z, double tol) {
  return std::fabs(std::abs(z) - 1.0) <= tol;
}

double min_pairwise(const std::array<Complex, 4>& v, const std::array<bool, 4>& use) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (use[i] && use[j]) best = std::min(best, std::abs(v[i] - v[j]));
    }
  }
  return best;
}

}  // namespace

double min_unit_pair_distance(const EigenSpectrum& s, double unit_tol) {
  std::array<bool, 4> use{};
  for (int i = 0; i < 4; ++i) use[i] = on_unit_circle(s.values[i], unit_tol);
  return min_pairwise(s.values, use);
}

StabilityClass classify(const EigenSpectrum& s, const ClassifyTolerances& tol) {
  int count = 0;
  for (const Complex& z : s.values) count += on_unit_circle(z, tol.unit) ? 1 : 0;
  if (count % 2 != 0) {
    std::ostringstream os;
    os.precision(17);
    os << "odd number of unit-modulus multipliers (" << count << "):";
    for (const Complex& z : s.values) os << ' ' << z;
    throw Error(ErrorCode::Inconsistent, os.str());
  }
  StabilityClass out;
  out.unit_count = count;
  switch (count) {
    case 4: {
      const std::array<bool, 4> all{true, true, true, true};
      out.label = min_pairwise(s.values, all) <= tol.degenerate
                      ? Stability::Marginal
                      : Stability::FullyStable;
      break;
    }
    case 2: out.label = Stability::PartiallyStable; break;
    default: out.label = Stability::Unstable; break;
  }
  return out;
}

StabilityClass classify_point(const TrapParams& params, const IntegratorConfig& cfg,
                              const ClassifyTolerances& tol) {
  return classify(spectrum(monodromy(params, cfg)), tol);
}

Bracket bisect_change(const std::function<bool(double)>& pred, double lo,
                      double hi, double width) {
  const bool at_lo = pred(lo);
  if (pred(hi) == at_lo) {
    throw Error(ErrorCode::Domain, "bisection bracket does not contain a change");
  }
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

namespace {

// Reorders `next` to follow `prev` by the permutation of least total distance.
std::array<Complex, 4> follow(const std::array<Complex, 4>& prev,
                              const std::array<Complex, 4>& next) {
  std::array<int, 4> perm{0, 1, 2, 3};
  std::array<int, 4> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (int i = 0; i < 4; ++i) cost += std::abs(next[perm[i]] - prev[i]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::array<Complex, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = next[best[i]];
  return out;
}

std::array<Complex, 4> canonical_order(std::array<Complex, 4> v) {
  std::sort(v.begin(), v.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return v;
}

struct LineProbe {
  double alpha;
  double theta;
  double q;
  IntegratorConfig cfg;
  ClassifyTolerances tol;

  TraceSample at(double a) const {
    TraceSample s;
    s.params = TrapParams{q, a, alpha, theta};
    s.spectrum = spectrum(monodromy(s.params, cfg));
    s.cls = classify(s.spectrum, tol);
    return s;
  }
};

// Collisions seen from the side with fewer unit multipliers. The multipliers
// that just left the circle are the ones nearest to it; a real one accounts
// for a pair (lambda, 1/lambda), a complex one for a quadruple.
void record_collisions(const TraceSample& left, const TraceSample& right, double a,
                       const TraceOptions& opts, std::vector<Collision>& out) {
  const bool left_fewer = left.cls.unit_count <= right.cls.unit_count;
  const TraceSample& departed = left_fewer ? left : right;
  const TraceSample& other = left_fewer ? right : left;
  const int needed = other.cls.unit_count - departed.cls.unit_count;

  std::vector<Complex> outside;
  for (const Complex& z : departed.spectrum.values) {
    if (on_unit_circle(z, opts.tol.unit) || std::abs(z) < 1.0 || z.imag() < 0.0) continue;
    outside.push_back(z);
  }
  std::sort(outside.begin(), outside.end(),
            [](const Complex& x, const Complex& y) { return std::abs(x) < std::abs(y); });

  auto emit = [&](Complex loc) {
    Collision c;
    c.a = a;
    c.location = std::abs(loc) > 0.0 ? loc / std::abs(loc) : Complex(1.0, 0.0);
    c.on_real_axis = std::fabs(c.location.imag()) < opts.real_axis_tol;
    c.unit_count_before = left.cls.unit_count;
    c.unit_count_after = right.cls.unit_count;
    out.push_back(c);
  };

  int covered = 0;
  for (const Complex& z : outside) {
    if (covered >= needed) break;
    emit(z);
    covered += z.imag() > 0.0 ? 4 : 2;
  }
  if (covered == 0) {
    // Nothing usable on the departed side: use the closest pair on the other.
    const auto& v = other.spectrum.values;
    double best = std::numeric_limits<double>::infinity();
    Complex loc;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const double d = std::abs(v[i] - v[j]);
        if (d < best) {
          best = d;
          loc = 0.5 * (v[i] + v[j]);
        }
      }
    }
    emit(loc.imag() < 0.0 ? std::conj(loc) : loc);
  }
}

void refine_interval(const LineProbe& probe, double lo, double hi, int count_lo,
                     int count_hi, const TraceOptions& opts,
                     std::vector<Collision>& out, int depth) {
  const Bracket b = bisect_change(
      [&](double a) { return probe.at(a).cls.unit_count == count_lo; }, lo, hi,
      opts.refine_width);
  const TraceSample left = probe.at(b.lo);
  const TraceSample right = probe.at(b.hi);
  record_collisions(left, right, 0.5 * (b.lo + b.hi), opts, out);
  if (right.cls.unit_count != count_hi && depth < 8 && b.hi < hi) {
    refine_interval(probe, b.hi, hi, right.cls.unit_count, count_hi, opts, out,
                    depth + 1);
  }
}

}  // namespace

EigenTrace trace_eigenvalues(double alpha, double theta_deg, double q_fixed,
                             double a_lo, double a_hi, int samples,
                             const IntegratorConfig& cfg, const TraceOptions& opts) {
  if (samples < 2) throw Error(ErrorCode::Domain, "trace needs at least 2 samples");
  if (!(a_lo < a_hi)) throw Error(ErrorCode::Domain, "trace range must satisfy lo < hi");
  cfg.validate();
  const LineProbe probe{alpha, theta_deg, q_fixed, cfg, opts.tol};

  EigenTrace trace;
  trace.path.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double a = a_lo + (a_hi - a_lo) * k / (samples - 1);
    TraceSample s = probe.at(a);
    s.spectrum.values = trace.path.empty()
                            ? canonical_order(s.spectrum.values)
                            : follow(trace.path.back().spectrum.values, s.spectrum.values);
    trace.path.push_back(std::move(s));
  }
  for (int k = 0; k + 1 < samples; ++k) {
    const TraceSample& left = trace.path[k];
    const TraceSample& right = trace.path[k + 1];
    if (left.cls.unit_count != right.cls.unit_count) {
      refine_interval(probe, left.params.a, right.params.a, left.cls.unit_count,
                      right.cls.unit_count, opts, trace.collisions, 0);
    }
  }
  return trace;
}

}  // namespace trapstab
