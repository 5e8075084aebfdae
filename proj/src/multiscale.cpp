#include "trapstab/multiscale.hpp"

#include <cmath>
#include <sstream>

#include "trapstab/core.hpp"
#include "trapstab/errors.hpp"

namespace trapstab {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << "alpha must be positive, got " << alpha;
    throw Error(ErrorCode::Domain, os.str());
  }
}

BoundaryCurve sample(const char* label, CurveMethod method, const MultiscaleCoeffs& f,
                     std::span<const double> q_samples) {
  BoundaryCurve curve{label, method, {}};
  curve.points.reserve(q_samples.size());
  for (double q : q_samples) {
    if (q >= 0.0) curve.points.push_back({q, f(q)});
  }
  return curve;
}

}  // namespace

double coupling_correction(double alpha, double s) {
  return 2.0 * s * s * (5.0 + alpha) / ((1.0 + alpha) * (9.0 + alpha));
}

MultiscaleCoeffs coupled_a1(double alpha, double theta_deg) {
  require_alpha(alpha);
  // |c| selects the branch bounding the primary region for every theta.
  const AxisMixing mix = axis_mixing(normalize_theta(theta_deg));
  const double c = std::fabs(mix.c);
  return {1.0, -c, -(c * c / 8.0 + coupling_correction(alpha, mix.s))};
}

MultiscaleCoeffs coupled_aneg(double alpha, double theta_deg) {
  require_alpha(alpha);
  const MultiscaleCoeffs mirrored = coupled_a1(1.0 / alpha, theta_deg);
  return {-mirrored.a0 / alpha, -mirrored.a1 / alpha, -mirrored.a2 / alpha};
}

MultiscaleCoeffs a0_lower() { return {0.0, 0.0, -0.5}; }

MultiscaleCoeffs a0_upper(double alpha) {
  require_alpha(alpha);
  return {0.0, 0.0, 1.0 / (2.0 * alpha)};
}

std::vector<BoundaryCurve> coupled_boundaries(double alpha, double theta_deg,
                                              std::span<const double> q_samples) {
  require_alpha(alpha);
  require_increasing(q_samples);
  return {
      sample("a0_lower", CurveMethod::MultiScale, a0_lower(), q_samples),
      sample("a0_upper", CurveMethod::MultiScale, a0_upper(alpha), q_samples),
      sample("a1_coupled", CurveMethod::MultiScale, coupled_a1(alpha, theta_deg), q_samples),
      sample("a_neg_coupled", CurveMethod::MultiScale, coupled_aneg(alpha, theta_deg),
             q_samples),
  };
}

std::vector<BoundaryCurve> decoupled_boundaries(double alpha,
                                                std::span<const double> q_samples) {
  require_alpha(alpha);
  require_increasing(q_samples);
  const MultiscaleCoeffs minus{1.0, -1.0, -0.125};
  const MultiscaleCoeffs plus{1.0, 1.0, -0.125};
  const double k = -1.0 / alpha;
  const MultiscaleCoeffs neg_minus{k * minus.a0, k * minus.a1, k * minus.a2};
  const MultiscaleCoeffs neg_plus{k * plus.a0, k * plus.a1, k * plus.a2};
  constexpr auto m = CurveMethod::DecoupledMultiScale;
  return {
      sample("dec_a1_minus", m, minus, q_samples),
      sample("dec_a1_plus", m, plus, q_samples),
      sample("dec_aneg_minus", m, neg_minus, q_samples),
      sample("dec_aneg_plus", m, neg_plus, q_samples),
  };
}

}  // namespace trapstab
