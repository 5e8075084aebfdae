#include "trapstab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trapstab/errors.hpp"

namespace trapstab {

std::string_view to_string(CurveMethod m) {
  switch (m) {
    case CurveMethod::Hill: return "Hill";
    case CurveMethod::MultiScale: return "MultiScale";
    case CurveMethod::DecoupledMultiScale: return "DecoupledMultiScale";
  }
  return "MultiScale";
}

CurveMethod parse_curve_method(std::string_view name) {
  for (CurveMethod m : {CurveMethod::Hill, CurveMethod::MultiScale,
                        CurveMethod::DecoupledMultiScale}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::Parse, "unknown curve method '" + std::string(name) + "'");
}

bool interpolate(const BoundaryCurve& curve, double q, double& a_out) {
  const auto& pts = curve.points;
  if (pts.empty() || q < pts.front().q || q > pts.back().q) return false;
  if (pts.size() == 1) {
    a_out = pts.front().a;
    return true;
  }
  auto hi = std::lower_bound(pts.begin(), pts.end(), q,
                             [](const CurvePoint& p, double v) { return p.q < v; });
  if (hi == pts.begin()) {
    a_out = hi->a;
    return true;
  }
  auto lo = hi - 1;
  const double t = (q - lo->q) / (hi->q - lo->q);
  a_out = lo->a + t * (hi->a - lo->a);
  return true;
}

void require_increasing(std::span<const double> q_samples) {
  for (std::size_t k = 0; k < q_samples.size(); ++k) {
    if (!std::isfinite(q_samples[k]) || (k > 0 && !(q_samples[k] > q_samples[k - 1]))) {
      throw Error(ErrorCode::Domain, "q samples must be finite and strictly increasing");
    }
  }
}

}  // namespace trapstab
