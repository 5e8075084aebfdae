#pragma once

// Truncated infinite-determinant method for the coupled system.
//
// Substituting x = e^{i nu t} sum b_n e^{2int}, y = e^{i nu t} sum d_n e^{2int}
// gives, for every Fourier index n, the block row
//
//   diag(a - (nu+2n)^2, -alpha a - (nu+2n)^2) [b_n d_n]^T
//     + q [[c, s], [s, -c]] ([b_{n-1} d_{n-1}]^T + [b_{n+1} d_{n+1}]^T) = 0.
//
// nu = 0 and nu = 1 (growth factor e^{i nu pi} = +-1) give the natural
// resonance boundaries.

#include <span>
#include <string>
#include <vector>

#include "trapstab/core.hpp"
#include "trapstab/curves.hpp"

namespace trapstab {

struct HillDeterminant {
  /// det(B) / prod(diagonal), the row-normalized determinant.
  double normalized = 0.0;
  /// det(B) / prod(|diagonal|): same zeros as det(B) but no sign flips at the
  /// poles of the normalized form. Root finding uses this one.
  double pole_free = 0.0;
  /// Rows whose diagonal was within kDiagonalEpsilon of zero and were left
  /// unscaled.
  int unscaled_rows = 0;
};

inline constexpr double kDiagonalEpsilon = 1e-12;
inline constexpr int kMinHillOrder = 3;

/// Block-tridiagonal truncation with Fourier indices -order..order, eliminated
/// as a banded matrix with partial pivoting in O(order) work.
HillDeterminant hill_det(int nu, const TrapParams& params, int order = 20);

/// All sign changes of a -> hill_det(...).pole_free on [a_lo, a_hi], located on
/// a uniform scan of `scan_points` intervals and bisected to `tol`.
std::vector<double> hill_roots(int nu, double q, double alpha, double theta_deg,
                               int order, double a_lo, double a_hi,
                               int scan_points = 2000, double tol = 1e-8);

struct HillBoundaryOptions {
  int order = 20;
  double a_lo = -3.0;
  double a_hi = 2.0;
  int scan_points = 2000;
  double tol = 1e-8;
};

struct HillBoundaryResult {
  std::vector<BoundaryCurve> curves;
  std::vector<std::string> warnings;  // curves that left the bracket
};

/// Roots for every q sample strung into curves by predicted nearest-neighbor
/// continuation.
HillBoundaryResult hill_boundary(int nu, double alpha, double theta_deg,
                                 std::span<const double> q_samples,
                                 const HillBoundaryOptions& opts = {});

}  // namespace trapstab
