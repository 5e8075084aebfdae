#include "trapstab/hill.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "trapstab/errors.hpp"

namespace trapstab {

namespace {

// Lower and upper bandwidth of the interleaved (b_n, d_n) ordering.
constexpr int kBand = 3;
// Each row keeps the absolute columns [r - kBand, r + 2 kBand]; partial
// pivoting fills at most kBand extra superdiagonals.
constexpr int kWidth = 3 * kBand + 1;

class BandMatrix {
 public:
  explicit BandMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * kWidth, 0.0) {}

  int size() const { return n_; }
  double& operator()(int r, int c) { return data_[slot(r, c)]; }
  double operator()(int r, int c) const { return data_[slot(r, c)]; }

  void scale_row(int r, double f) {
    for (int k = 0; k < kWidth; ++k) data_[static_cast<std::size_t>(r) * kWidth + k] *= f;
  }

  // Determinant by Gaussian elimination with partial pivoting inside the band.
  double determinant() {
    double det = 1.0;
    for (int k = 0; k < n_; ++k) {
      const int last_row = std::min(n_ - 1, k + kBand);
      const int last_col = std::min(n_ - 1, k + 2 * kBand);
      int pivot = k;
      double best = std::fabs((*this)(k, k));
      for (int r = k + 1; r <= last_row; ++r) {
        const double v = std::fabs((*this)(r, k));
        if (v > best) {
          best = v;
          pivot = r;
        }
      }
      if (best == 0.0) return 0.0;
      if (pivot != k) {
        for (int c = k; c <= last_col; ++c) std::swap((*this)(k, c), (*this)(pivot, c));
        det = -det;
      }
      const double p = (*this)(k, k);
      det *= p;
      for (int r = k + 1; r <= last_row; ++r) {
        const double f = (*this)(r, k) / p;
        if (f == 0.0) continue;
        for (int c = k + 1; c <= last_col; ++c) (*this)(r, c) -= f * (*this)(k, c);
      }
    }
    return det;
  }

 private:
  std::size_t slot(int r, int c) const {
    return static_cast<std::size_t>(r) * kWidth + static_cast<std::size_t>(c - r + kBand);
  }

  int n_;
  std::vector<double> data_;
};

void require_nu_order(int nu, int order) {
  if (nu != 0 && nu != 1) {
    throw Error(ErrorCode::Domain, "nu must be 0 or 1");
  }
  if (order < kMinHillOrder) {
    std::ostringstream os;
    os << "Hill truncation order must be >= " << kMinHillOrder << ", got " << order;
    throw Error(ErrorCode::Domain, os.str());
  }
}

}  // namespace

HillDeterminant hill_det(int nu, const TrapParams& params, int order) {
  require_nu_order(nu, order);
  const TrapParams p = validated(params);
  const AxisMixing mix = axis_mixing(p.theta_deg);
  const double qc = p.q * mix.c;
  const double qs = p.q * mix.s;

  const int modes = 2 * order + 1;
  BandMatrix b(2 * modes);
  for (int k = 0; k < modes; ++k) {
    const int n = k - order;
    const double w = static_cast<double>(nu + 2 * n);
    const int rx = 2 * k;
    const int ry = rx + 1;
    b(rx, rx) = p.a - w * w;
    b(ry, ry) = -p.alpha * p.a - w * w;
    for (int nb : {k - 1, k + 1}) {
      if (nb < 0 || nb >= modes) continue;
      b(rx, 2 * nb) = qc;
      b(rx, 2 * nb + 1) = qs;
      b(ry, 2 * nb) = qs;
      b(ry, 2 * nb + 1) = -qc;
    }
  }

  HillDeterminant out;
  double sign = 1.0;
  for (int r = 0; r < b.size(); ++r) {
    const double d = b(r, r);
    if (std::fabs(d) < kDiagonalEpsilon) {
      ++out.unscaled_rows;
      continue;
    }
    b.scale_row(r, 1.0 / std::fabs(d));
    if (d < 0.0) sign = -sign;
  }
  out.pole_free = b.determinant();
  out.normalized = sign * out.pole_free;
  return out;
}

std::vector<double> hill_roots(int nu, double q, double alpha, double theta_deg,
                               int order, double a_lo, double a_hi, int scan_points,
                               double tol) {
  require_nu_order(nu, order);
  if (!(a_lo < a_hi) || scan_points < 1 || !(tol > 0.0)) {
    throw Error(ErrorCode::Domain, "invalid Hill root bracket or scan settings");
  }
  auto f = [&](double a) {
    return hill_det(nu, TrapParams{q, a, alpha, theta_deg}, order).pole_free;
  };

  std::vector<double> roots;
  double a_prev = a_lo;
  double f_prev = f(a_prev);
  if (f_prev == 0.0) roots.push_back(a_prev);
  for (int k = 1; k <= scan_points; ++k) {
    const double a = a_lo + (a_hi - a_lo) * k / scan_points;
    const double fa = f(a);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if (f_prev != 0.0 && (fa > 0.0) != (f_prev > 0.0)) {
      double lo = a_prev, hi = a;
      const bool lo_positive = f_prev > 0.0;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm > 0.0) == lo_positive) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a_prev = a;
    f_prev = fa;
  }
  return roots;
}

namespace {

struct OpenCurve {
  BoundaryCurve curve;
  bool open = true;

  double predicted() const {
    const auto& pts = curve.points;
    if (pts.size() < 2) return pts.back().a;
    return 2.0 * pts.back().a - pts[pts.size() - 2].a;
  }
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

HillBoundaryResult hill_boundary(int nu, double alpha, double theta_deg,
                                 std::span<const double> q_samples,
                                 const HillBoundaryOptions& opts) {
  require_nu_order(nu, opts.order);
  require_increasing(q_samples);
  validated(TrapParams{0.0, 0.0, alpha, theta_deg});

  const double scan_step = (opts.a_hi - opts.a_lo) / std::max(1, opts.scan_points);
  const double floor_jump = 8.0 * scan_step;
  const double edge_margin = 4.0 * scan_step;

  HillBoundaryResult result;
  std::vector<OpenCurve> curves;
  int next_label = 0;

  auto start_curve = [&](double q, double a) {
    OpenCurve c;
    std::ostringstream label;
    label << "hill_nu" << nu << "_" << next_label++;
    c.curve.label = label.str();
    c.curve.method = CurveMethod::Hill;
    c.curve.points.push_back({q, a});
    curves.push_back(std::move(c));
  };

  auto close_curve = [&](OpenCurve& c) {
    c.open = false;
    const CurvePoint& last = c.curve.points.back();
    const double dist_edge = std::min(last.a - opts.a_lo, opts.a_hi - last.a);
    const double drift = c.curve.points.size() >= 2
                             ? std::fabs(last.a - c.curve.points[c.curve.points.size() - 2].a)
                             : 0.0;
    if (dist_edge <= std::max(edge_margin, 2.0 * drift)) {
      std::ostringstream os;
      os.precision(10);
      os << c.curve.label << " truncated: left the bracket [" << opts.a_lo << ", "
         << opts.a_hi << "] after q=" << last.q << " (a=" << last.a << ")";
      result.warnings.push_back(os.str());
    }
  };

  for (double q : q_samples) {
    const std::vector<double> roots = hill_roots(nu, q, alpha, theta_deg, opts.order,
                                                 opts.a_lo, opts.a_hi, opts.scan_points,
                                                 opts.tol);
    // Greedy assignment by distance to each open curve's extrapolated value.
    struct Candidate {
      double dist;
      std::size_t curve;
      std::size_t root;
    };
    std::vector<Candidate> candidates;
    for (std::size_t c = 0; c < curves.size(); ++c) {
      if (!curves[c].open) continue;
      const double pred = curves[c].predicted();
      for (std::size_t r = 0; r < roots.size(); ++r) {
        candidates.push_back({std::fabs(roots[r] - pred), c, r});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
      if (x.dist != y.dist) return x.dist < y.dist;
      if (x.curve != y.curve) return x.curve < y.curve;
      return x.root < y.root;
    });
    std::vector<char> curve_used(curves.size(), 0), root_used(roots.size(), 0);
    std::vector<Candidate> matches;
    for (const Candidate& cand : candidates) {
      if (curve_used[cand.curve] || root_used[cand.root]) continue;
      curve_used[cand.curve] = 1;
      root_used[cand.root] = 1;
      matches.push_back(cand);
    }
    std::vector<double> dists;
    for (const Candidate& m : matches) dists.push_back(m.dist);
    const double jump = std::max(5.0 * median(dists), floor_jump);

    std::fill(curve_used.begin(), curve_used.end(), 0);
    std::fill(root_used.begin(), root_used.end(), 0);
    for (const Candidate& m : matches) {
      if (m.dist > jump) continue;
      curves[m.curve].curve.points.push_back({q, roots[m.root]});
      curve_used[m.curve] = 1;
      root_used[m.root] = 1;
    }
    for (std::size_t c = 0; c < curves.size(); ++c) {
      if (curves[c].open && !curve_used[c]) close_curve(curves[c]);
    }
    for (std::size_t r = 0; r < roots.size(); ++r) {
      if (!root_used[r]) start_curve(q, roots[r]);
    }
  }

  for (OpenCurve& c : curves) result.curves.push_back(std::move(c.curve));
  return result;
}

}  // namespace trapstab
