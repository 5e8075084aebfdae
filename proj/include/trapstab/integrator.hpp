#pragma once

#include <Eigen/Core>

#include "trapstab/core.hpp"

namespace trapstab {

enum class IntegrationMethod { RK4 };

struct IntegratorConfig {
  int steps_per_period = 2048;
  IntegrationMethod method = IntegrationMethod::RK4;

  static constexpr int kMinSteps = 16;

  /// Throws Error(Domain) when steps_per_period < kMinSteps.
  void validate() const;
};

/// Mapping at a period U(pi) together with the parameters that produced it.
struct MonodromyMatrix {
  Eigen::Matrix4d m;
  TrapParams params;
};

/// Integrates dU/dt = G(t) U over one forcing period with U(0) = I using
/// classical fixed-step RK4. Columns are the fundamental solutions started
/// from the unit vectors in (x, y, x', y') order.
MonodromyMatrix monodromy(const TrapParams& params,
                          const IntegratorConfig& cfg = {});

/// Monodromy of the single-variable equation x'' + (a + 2q cos 2t) x = 0.
Eigen::Matrix2d monodromy_2x2(double a_eff, double q_eff,
                              const IntegratorConfig& cfg = {});

/// J = [[0, -I], [I, 0]].
Eigen::Matrix4d symplectic_form();

/// max |U^T J U - J| over all entries.
double symplectic_residual(const Eigen::Matrix4d& u);

}  // namespace trapstab
