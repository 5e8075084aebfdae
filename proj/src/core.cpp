#include "trapstab/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "trapstab/errors.hpp"

namespace trapstab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Eigensolver: return "eigensolver";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::Io: return "io";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

double normalize_theta(double theta_deg) {
  double t = std::fmod(theta_deg, 180.0);
  if (t < 0.0) t += 180.0;
  if (t > 90.0) t = 180.0 - t;
  return t;
}

TrapParams validated(const TrapParams& params) {
  if (!std::isfinite(params.q) || !std::isfinite(params.a) ||
      !std::isfinite(params.alpha) || !std::isfinite(params.theta_deg)) {
    std::ostringstream os;
    os << "non-finite parameter (q=" << params.q << ", a=" << params.a
       << ", alpha=" << params.alpha << ", theta=" << params.theta_deg << ")";
    throw Error(ErrorCode::Domain, os.str());
  }
  if (!(params.alpha > 0.0)) {
    std::ostringstream os;
    os << "alpha must be positive, got " << params.alpha;
    throw Error(ErrorCode::Domain, os.str());
  }
  TrapParams out = params;
  out.theta_deg = normalize_theta(params.theta_deg);
  return out;
}

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Folds deg into [0, 360).
double wrap360(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0.0) d += 360.0;
  return d;
}

}  // namespace

double cos_deg(double deg) {
  double d = wrap360(deg);
  if (d > 180.0) d = 360.0 - d;
  double sign = 1.0;
  if (d > 90.0) {
    d = 180.0 - d;
    sign = -1.0;
  }
  if (d == 0.0) return sign;
  if (d == 90.0) return 0.0;
  return sign * std::cos(d * kDegToRad);
}

double sin_deg(double deg) {
  double d = wrap360(deg);
  double sign = 1.0;
  if (d >= 180.0) {
    d -= 180.0;
    sign = -1.0;
  }
  if (d > 90.0) d = 180.0 - d;
  if (d == 0.0) return 0.0;
  if (d == 90.0) return sign;
  return sign * std::sin(d * kDegToRad);
}

AxisMixing axis_mixing(double theta_deg) {
  return {cos_deg(2.0 * theta_deg), sin_deg(2.0 * theta_deg)};
}

CoefficientMatrices build_matrices(const TrapParams& params) {
  const TrapParams p = validated(params);
  const AxisMixing mix = axis_mixing(p.theta_deg);
  CoefficientMatrices m;
  m.A << p.a, 0.0, 0.0, -p.alpha * p.a;
  const double qc = p.q * mix.c;
  const double qs = p.q * mix.s;
  m.Q << qc, qs, qs, -qc;
  return m;
}

Eigen::Matrix4d generator(double tau, const CoefficientMatrices& m) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  g.bottomLeftCorner<2, 2>() = -2.0 * m.Q * std::cos(2.0 * tau) - m.A;
  return g;
}

StateVector rhs(double tau, const StateVector& u, const CoefficientMatrices& m) {
  StateVector du;
  du.head<2>() = u.tail<2>();
  const Eigen::Matrix2d k = 2.0 * m.Q * std::cos(2.0 * tau) + m.A;
  du.tail<2>() = -k * u.head<2>();
  return du;
}

}  // namespace trapstab
