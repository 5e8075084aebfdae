#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "trapstab/errors.hpp"
#include "trapstab/integrator.hpp"

using namespace trapstab;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("free motion at q = a = 0") {
  const auto u = monodromy({0.0, 0.0, 0.5, 0.0}).m;
  Eigen::Matrix4d expect = Eigen::Matrix4d::Identity();
  expect(0, 2) = std::numbers::pi;
  expect(1, 3) = std::numbers::pi;
  CHECK(max_abs(u - expect) < 1e-12);
}

TEST_CASE("q = 0 closed form is block diagonal") {
  const double a = 0.25, alpha = 0.5;
  const auto u = monodromy({0.0, a, alpha, 0.0}).m;
  const double w = std::sqrt(a);
  const double k = std::sqrt(alpha * a);
  const double pi = std::numbers::pi;
  CHECK(u(0, 0) == doctest::Approx(std::cos(w * pi)).epsilon(1e-10));
  CHECK(u(0, 2) == doctest::Approx(std::sin(w * pi) / w).epsilon(1e-10));
  CHECK(u(2, 0) == doctest::Approx(-w * std::sin(w * pi)).epsilon(1e-10));
  CHECK(u(1, 1) == doctest::Approx(std::cosh(k * pi)).epsilon(1e-10));
  CHECK(u(1, 3) == doctest::Approx(std::sinh(k * pi) / k).epsilon(1e-10));
  CHECK(u(3, 1) == doctest::Approx(k * std::sinh(k * pi)).epsilon(1e-10));
  CHECK(std::fabs(u(0, 1)) < 1e-14);
  CHECK(std::fabs(u(1, 0)) < 1e-14);
}

TEST_CASE("monodromy_2x2 harmonic cases") {
  const auto half = monodromy_2x2(1.0, 0.0);
  CHECK(max_abs(half + Eigen::Matrix2d::Identity()) < 1e-10);
  const auto full = monodromy_2x2(4.0, 0.0);
  CHECK(max_abs(full - Eigen::Matrix2d::Identity()) < 1e-9);
}

TEST_CASE("monodromy_2x2 trace at q = 0.2, a = 0") {
  // Frozen from the Richardson-extrapolated test oracle (20000/40000 steps).
  constexpr double kTrace = 1.802770611906584;
  CHECK(oracle::trace2(0.0, 0.2) == doctest::Approx(kTrace).epsilon(1e-12));
  const auto u = monodromy_2x2(0.0, 0.2);
  CHECK(std::fabs(u.trace() - kTrace) < 1e-9);
  CHECK(std::fabs(u.trace()) < 2.0);  // a = 0 lies above a0(0.2) ~ -0.02: stable
  CHECK(u.determinant() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("library monodromy agrees with the oracle") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> q(0.0, 2.0), a(-1.5, 1.5), th(0.0, 90.0);
  for (int k = 0; k < 20; ++k) {
    const double qq = q(rng), aa = a(rng), tt = th(rng);
    const auto lib = monodromy({qq, aa, 0.5, tt}, {4096}).m;
    const auto ref = oracle::to_eigen(oracle::monodromy4(qq, aa, 0.5, tt, 4096));
    CHECK(max_abs(lib - ref) <= 1e-9 * std::max(1.0, max_abs(ref)));
  }
}

TEST_CASE("symplectic and unimodular over |q|, |a| <= 5") {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> u(-5.0, 5.0), th(0.0, 90.0);
  std::uniform_int_distribution<int> pick(0, 2);
  const double alphas[] = {0.5, 1.0, 2.0};
  for (int k = 0; k < 60; ++k) {
    const TrapParams p{u(rng), u(rng), alphas[pick(rng)], th(rng)};
    const auto m = monodromy(p, {4096}).m;
    // Relative to the size of U: large-|a| anti-confined cases grow to ~1e6.
    const double scale = std::max(1.0, max_abs(m) * max_abs(m));
    CHECK(symplectic_residual(m) <= 1e-9 * scale);
    CHECK(std::fabs(m.determinant() - 1.0) <= 1e-9 * scale);
  }
}

TEST_CASE("symplectic form") {
  const auto j = symplectic_form();
  CHECK(j(0, 2) == -1.0);
  CHECK(j(2, 0) == 1.0);
  CHECK(j(1, 3) == -1.0);
  CHECK(j(3, 1) == 1.0);
  CHECK(symplectic_residual(Eigen::Matrix4d::Identity()) == 0.0);
}

TEST_CASE("fourth-order convergence") {
  const TrapParams p{0.7, 0.1, 0.5, 6.4};
  const auto ref = monodromy(p, {1024}).m;
  const double e1 = max_abs(monodromy(p, {64}).m - ref);
  const double e2 = max_abs(monodromy(p, {128}).m - ref);
  const double ratio = e1 / e2;
  CHECK(ratio > 13.0);
  CHECK(ratio < 19.0);
}

TEST_CASE("theta = 0 blocks match the single-variable maps") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> q(0.0, 2.0), a(-1.0, 1.5);
  for (int k = 0; k < 20; ++k) {
    const double qq = q(rng), aa = a(rng), alpha = 0.5;
    const auto u = monodromy({qq, aa, alpha, 0.0}).m;
    const auto ux = monodromy_2x2(aa, qq);
    const auto uy = monodromy_2x2(-alpha * aa, -qq);
    const double tol = 1e-10 * std::max({1.0, max_abs(ux), max_abs(uy)});
    CHECK(std::fabs(u(0, 0) - ux(0, 0)) < tol);
    CHECK(std::fabs(u(0, 2) - ux(0, 1)) < tol);
    CHECK(std::fabs(u(2, 0) - ux(1, 0)) < tol);
    CHECK(std::fabs(u(2, 2) - ux(1, 1)) < tol);
    CHECK(std::fabs(u(1, 1) - uy(0, 0)) < tol);
    CHECK(std::fabs(u(1, 3) - uy(0, 1)) < tol);
    CHECK(std::fabs(u(3, 1) - uy(1, 0)) < tol);
    CHECK(std::fabs(u(3, 3) - uy(1, 1)) < tol);
    CHECK(std::fabs(u(0, 1)) < tol);
    CHECK(std::fabs(u(1, 0)) < tol);
  }
}

TEST_CASE("integrator configuration and overflow errors") {
  CHECK_THROWS_AS(monodromy({0.1, 0.1, 1.0, 0.0}, {8}), Error);
  try {
    (void)monodromy({0.1, 0.1, 1.0, 0.0}, {15});
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Domain);
  }
  try {
    (void)monodromy({1.0, 1e300, 1.0, 0.0}, {16});
    FAIL("expected an overflow error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
    CHECK(std::string(e.what()).find("a=") != std::string::npos);
  }
  const auto m = monodromy({0.3, 0.2, 0.5, 10.0});
  CHECK(m.params.q == 0.3);
  CHECK(m.params.theta_deg == 10.0);
}
