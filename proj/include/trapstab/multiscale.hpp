#pragma once

// Closed-form second-order boundaries of the primary stability region from the
// two-time-scale expansion a = a0 + a1 q + a2 q^2.

#include <span>
#include <vector>

#include "trapstab/curves.hpp"

namespace trapstab {

struct MultiscaleCoeffs {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;

  double operator()(double q) const { return a0 + (a1 + a2 * q) * q; }
};

/// Coupled second-order coefficient 2 s^2 (5 + alpha) / ((1 + alpha)(9 + alpha)).
double coupling_correction(double alpha, double s);

/// Curve from a = 1 bounding the primary region from above:
/// a = 1 - |c| q - (c^2/8 + 2 s^2 (5+alpha)/((1+alpha)(9+alpha))) q^2.
MultiscaleCoeffs coupled_a1(double alpha, double theta_deg);

/// Mirror curve from a = -1/alpha obtained by exchanging the roles of x and y
/// (a -> -alpha a, alpha -> 1/alpha).
MultiscaleCoeffs coupled_aneg(double alpha, double theta_deg);

/// a = -q^2/2 and a = q^2/(2 alpha); independent of theta.
MultiscaleCoeffs a0_lower();
MultiscaleCoeffs a0_upper(double alpha);

/// Four curves labeled a0_lower, a0_upper, a1_coupled, a_neg_coupled.
/// Negative q samples are skipped.
std::vector<BoundaryCurve> coupled_boundaries(double alpha, double theta_deg,
                                              std::span<const double> q_samples);

/// Single-variable curves a = 1 +- q - q^2/8 and a = -(1/alpha)(1 +- q - q^2/8),
/// labeled dec_a1_minus, dec_a1_plus, dec_aneg_minus, dec_aneg_plus.
std::vector<BoundaryCurve> decoupled_boundaries(double alpha,
                                                std::span<const double> q_samples);

}  // namespace trapstab
