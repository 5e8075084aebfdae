#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trapstab {

enum class CurveMethod { Hill, MultiScale, DecoupledMultiScale };

std::string_view to_string(CurveMethod m);
CurveMethod parse_curve_method(std::string_view name);

struct CurvePoint {
  double q = 0.0;
  double a = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Labeled polyline in the (q, a) plane, q strictly increasing.
struct BoundaryCurve {
  std::string label;
  CurveMethod method = CurveMethod::MultiScale;
  std::vector<CurvePoint> points;

  friend bool operator==(const BoundaryCurve&, const BoundaryCurve&) = default;
};

/// Linear interpolation of a at q; nullopt-free variant returns false when q
/// is outside the curve's span.
bool interpolate(const BoundaryCurve& curve, double q, double& a_out);

/// Throws Error(Domain) unless the samples are finite and strictly increasing.
void require_increasing(std::span<const double> q_samples);

}  // namespace trapstab
