#include "trapstab/integrator.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "trapstab/errors.hpp"

namespace trapstab {

void IntegratorConfig::validate() const {
  if (steps_per_period < kMinSteps) {
    std::ostringstream os;
    os << "steps_per_period must be >= " << kMinSteps << ", got "
       << steps_per_period;
    throw Error(ErrorCode::Domain, os.str());
  }
}

namespace {

// cos 2t sampled at every RK4 stage time t = k h / 2, k = 0..2n, h = pi / n.
const std::vector<double>& phase_table(int steps) {
  thread_local int cached_steps = 0;
  thread_local std::vector<double> table;
  if (cached_steps != steps) {
    table.resize(2 * static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= 2 * steps; ++k) {
      table[k] = std::cos(std::numbers::pi * k / steps);
    }
    cached_steps = steps;
  }
  return table;
}

// Symmetric stiffness K(t) = A + 2 Q cos 2t for D degrees of freedom, stored
// as constant and oscillating parts.
template <int D>
struct Stiffness {
  std::array<double, D * D> dc{};
  std::array<double, D * D> rf{};  // already multiplied by 2
};

// Propagates the D x 2D position block X and velocity block V of the
// fundamental matrix. Stage derivatives: X' = V, V' = -K(t) X.
template <int D>
void propagate(const Stiffness<D>& stiff, int steps,
               std::array<double, D * 2 * D>& x,
               std::array<double, D * 2 * D>& v) {
  constexpr int N = 2 * D;
  constexpr int S = D * N;
  const std::vector<double>& phase = phase_table(steps);
  const double h = std::numbers::pi / steps;
  const double h2 = 0.5 * h;
  const double h6 = h / 6.0;

  std::array<double, D * D> k{};
  auto stiffness_at = [&](double cos2t) {
    for (int i = 0; i < D * D; ++i) k[i] = stiff.dc[i] + stiff.rf[i] * cos2t;
  };
  // out = -K * pos, column by column
  auto force = [&](const std::array<double, S>& pos, std::array<double, S>& out) {
    for (int col = 0; col < N; ++col) {
      for (int r = 0; r < D; ++r) {
        double acc = 0.0;
        for (int c = 0; c < D; ++c) acc += k[r * D + c] * pos[c * N + col];
        out[r * N + col] = -acc;
      }
    }
  };

  std::array<double, S> k1v, k2v, k3v, k4v, xs, vs, k2x, k3x;
  for (int step = 0; step < steps; ++step) {
    stiffness_at(phase[2 * step]);
    force(x, k1v);
    for (int i = 0; i < S; ++i) {
      xs[i] = x[i] + h2 * v[i];
      vs[i] = v[i] + h2 * k1v[i];
    }
    k2x = vs;
    stiffness_at(phase[2 * step + 1]);
    force(xs, k2v);
    for (int i = 0; i < S; ++i) {
      xs[i] = x[i] + h2 * k2x[i];
      vs[i] = v[i] + h2 * k2v[i];
    }
    k3x = vs;
    force(xs, k3v);
    for (int i = 0; i < S; ++i) {
      xs[i] = x[i] + h * k3x[i];
      vs[i] = v[i] + h * k3v[i];
    }
    stiffness_at(phase[2 * step + 2]);
    force(xs, k4v);
    for (int i = 0; i < S; ++i) {
      x[i] += h6 * (v[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + vs[i]);
      v[i] += h6 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
  }
}

[[noreturn]] void throw_overflow(const TrapParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite monodromy at q=" << p.q << ", a=" << p.a
     << ", alpha=" << p.alpha << ", theta=" << p.theta_deg;
  throw Error(ErrorCode::Overflow, os.str());
}

}  // namespace

MonodromyMatrix monodromy(const TrapParams& params, const IntegratorConfig& cfg) {
  cfg.validate();
  const TrapParams p = validated(params);
  const CoefficientMatrices m = build_matrices(p);

  Stiffness<2> stiff;
  stiff.dc = {m.A(0, 0), m.A(0, 1), m.A(1, 0), m.A(1, 1)};
  stiff.rf = {2.0 * m.Q(0, 0), 2.0 * m.Q(0, 1), 2.0 * m.Q(1, 0), 2.0 * m.Q(1, 1)};

  // X = [I 0], V = [0 I] as 2x4 row-major blocks
  std::array<double, 8> x{1, 0, 0, 0, 0, 1, 0, 0};
  std::array<double, 8> v{0, 0, 1, 0, 0, 0, 0, 1};
  propagate<2>(stiff, cfg.steps_per_period, x, v);

  MonodromyMatrix out;
  out.params = p;
  for (int col = 0; col < 4; ++col) {
    out.m(0, col) = x[col];
    out.m(1, col) = x[4 + col];
    out.m(2, col) = v[col];
    out.m(3, col) = v[4 + col];
  }
  if (!out.m.allFinite()) throw_overflow(p);
  return out;
}

Eigen::Matrix2d monodromy_2x2(double a_eff, double q_eff,
                              const IntegratorConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a_eff) || !std::isfinite(q_eff)) {
    throw Error(ErrorCode::Domain, "non-finite single-variable parameters");
  }
  Stiffness<1> stiff;
  stiff.dc = {a_eff};
  stiff.rf = {2.0 * q_eff};
  std::array<double, 2> x{1, 0};
  std::array<double, 2> v{0, 1};
  propagate<1>(stiff, cfg.steps_per_period, x, v);

  Eigen::Matrix2d u;
  u << x[0], x[1], v[0], v[1];
  if (!u.allFinite()) throw_overflow(TrapParams{q_eff, a_eff, 1.0, 0.0});
  return u;
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j.topRightCorner<2, 2>() = -Eigen::Matrix2d::Identity();
  j.bottomLeftCorner<2, 2>() = Eigen::Matrix2d::Identity();
  return j;
}

double symplectic_residual(const Eigen::Matrix4d& u) {
  const Eigen::Matrix4d j = symplectic_form();
  return (u.transpose() * j * u - j).cwiseAbs().maxCoeff();
}

}  // namespace trapstab
