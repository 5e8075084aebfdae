#pragma once

// Parametrization of the coupled two-variable Mathieu system
//
//   x'' + a x       + 2q (c x + s y) cos 2t = 0
//   y'' - alpha a y + 2q (s x - c y) cos 2t = 0
//
// with c = cos 2theta, s = sin 2theta. Coordinates are the DC principal axes;
// theta is the angle between the DC and RF principal axes.

#include <Eigen/Core>

namespace trapstab {

/// Dimensionless operating point. Angles are in degrees at every public
/// boundary of the library.
struct TrapParams {
  double q = 0.0;
  double a = 0.0;
  double alpha = 1.0;
  double theta_deg = 0.0;
};

/// Folds an arbitrary angle into [0, 90] using theta -> theta mod 180 and
/// theta -> 180 - theta. The second fold flips the sign of sin 2theta, which is
/// the reflection y -> -y and leaves every stability property unchanged.
double normalize_theta(double theta_deg);

/// Checks finiteness and alpha > 0 and returns the params with theta folded.
/// Throws Error(Domain) otherwise.
TrapParams validated(const TrapParams& params);

/// cos and sin of an angle given in degrees, exact at multiples of 90.
double cos_deg(double deg);
double sin_deg(double deg);

/// c = cos 2theta and s = sin 2theta.
struct AxisMixing {
  double c = 1.0;
  double s = 0.0;
};
AxisMixing axis_mixing(double theta_deg);

struct CoefficientMatrices {
  Eigen::Matrix2d A;  // DC, diag(a, -alpha a)
  Eigen::Matrix2d Q;  // RF, traceless
};

CoefficientMatrices build_matrices(const TrapParams& params);

using StateVector = Eigen::Vector4d;

/// du/dt = G(t) u with G = [[0, I], [-2Q cos 2t - A, 0]].
StateVector rhs(double tau, const StateVector& u, const CoefficientMatrices& m);

/// The 4x4 generator G(t) itself.
Eigen::Matrix4d generator(double tau, const CoefficientMatrices& m);

}  // namespace trapstab
