#include <cmath>
#include <random>

#include "doctest.h"
#include "trapstab/curves.hpp"
#include "trapstab/errors.hpp"
#include "trapstab/multiscale.hpp"

using namespace trapstab;

namespace {

const BoundaryCurve& by_label(const std::vector<BoundaryCurve>& cs, const std::string& l) {
  for (const BoundaryCurve& c : cs) {
    if (c.label == l) return c;
  }
  FAIL("missing curve " << l);
  return cs.front();
}

}  // namespace

TEST_CASE("a = 0 pair") {
  CHECK(a0_lower()(0.4) == doctest::Approx(-0.08));
  CHECK(a0_upper(0.5)(0.4) == doctest::Approx(0.16));
  CHECK(a0_upper(2.0)(0.4) == doctest::Approx(0.04));
}

TEST_CASE("coupled a1 curve at theta = 0 is the classical lower branch") {
  for (double alpha : {0.3, 0.5, 1.0, 3.0}) {
    const auto c = coupled_a1(alpha, 0.0);
    CHECK(c.a0 == 1.0);
    CHECK(c.a1 == -1.0);
    CHECK(c.a2 == doctest::Approx(-0.125));
  }
}

TEST_CASE("coupled a1 curve at theta = 45, alpha = 0.5") {
  const auto c = coupled_a1(0.5, 45.0);
  CHECK(std::fabs(c.a1) < 1e-15);
  CHECK(c.a2 == doctest::Approx(-11.0 / 14.25).epsilon(1e-14));
  CHECK(c(1.0) == doctest::Approx(1.0 - 0.77193).epsilon(1e-5));
}

TEST_CASE("negative-a curve") {
  // theta = 0: -(1/alpha)(1 - q - q^2/8).
  const auto c = coupled_aneg(0.5, 0.0);
  CHECK(c(0.4) == doctest::Approx(-2.0 * (1.0 - 0.4 - 0.02)));
  CHECK(c(0.0) == doctest::Approx(-2.0));
  // theta = 45: correction evaluated at 1/alpha.
  const auto d = coupled_aneg(0.5, 45.0);
  const double corr = 2.0 * (5.0 + 2.0) / ((1.0 + 2.0) * (9.0 + 2.0));
  CHECK(d(0.3) == doctest::Approx(-2.0 * (1.0 - corr * 0.09)).epsilon(1e-14));
}

TEST_CASE("coupled boundaries: four labelled curves") {
  const double qs[] = {0.0, 0.1, 0.5, 1.0};
  const auto cs = coupled_boundaries(0.5, 0.0, qs);
  REQUIRE(cs.size() == 4);
  for (const BoundaryCurve& c : cs) {
    CHECK(c.method == CurveMethod::MultiScale);
    CHECK(c.points.size() == 4);
  }
  CHECK(by_label(cs, "a0_lower").points[2].a == doctest::Approx(-0.125));
  CHECK(by_label(cs, "a0_upper").points[2].a == doctest::Approx(0.25));
  CHECK(by_label(cs, "a1_coupled").points[0].a == 1.0);
  CHECK(by_label(cs, "a_neg_coupled").points[0].a == -2.0);
}

TEST_CASE("coupled curves at theta = 0 coincide with the decoupled lower branches") {
  std::vector<double> qs;
  for (int k = 0; k <= 20; ++k) qs.push_back(0.1 * k);
  for (double alpha : {0.5, 2.0}) {
    const auto cs = coupled_boundaries(alpha, 0.0, qs);
    const auto ds = decoupled_boundaries(alpha, qs);
    const auto& a1 = by_label(cs, "a1_coupled");
    const auto& an = by_label(cs, "a_neg_coupled");
    const auto& d1 = by_label(ds, "dec_a1_minus");
    const auto& dn = by_label(ds, "dec_aneg_minus");
    for (std::size_t k = 0; k < qs.size(); ++k) {
      CHECK(a1.points[k].a == doctest::Approx(d1.points[k].a).epsilon(1e-14));
      CHECK(an.points[k].a == doctest::Approx(dn.points[k].a).epsilon(1e-14));
    }
  }
}

TEST_CASE("coupled curves are invariant under theta -> 90 - theta") {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> th(0.0, 90.0), al(0.1, 5.0);
  const double qs[] = {0.0, 0.3, 0.9, 1.7};
  for (int k = 0; k < 50; ++k) {
    const double t = th(rng), alpha = al(rng);
    const auto c1 = coupled_boundaries(alpha, t, qs);
    const auto c2 = coupled_boundaries(alpha, 90.0 - t, qs);
    for (std::size_t i = 0; i < c1.size(); ++i) {
      for (std::size_t j = 0; j < c1[i].points.size(); ++j) {
        CHECK(c1[i].points[j].a == doctest::Approx(c2[i].points[j].a).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("decoupled boundaries") {
  const double q0[] = {0.0};
  const auto d0 = decoupled_boundaries(1.0, q0);
  REQUIRE(d0.size() == 4);
  CHECK(by_label(d0, "dec_a1_minus").points[0].a == 1.0);
  CHECK(by_label(d0, "dec_a1_plus").points[0].a == 1.0);
  CHECK(by_label(d0, "dec_aneg_minus").points[0].a == -1.0);
  CHECK(by_label(d0, "dec_aneg_plus").points[0].a == -1.0);

  const double q4[] = {0.4};
  const auto d4 = decoupled_boundaries(0.5, q4);
  CHECK(by_label(d4, "dec_a1_minus").points[0].a == doctest::Approx(0.58));
  CHECK(by_label(d4, "dec_a1_plus").points[0].a == doctest::Approx(1.38));
  CHECK(by_label(d4, "dec_aneg_minus").points[0].a == doctest::Approx(-1.16));
  CHECK(by_label(d4, "dec_aneg_plus").points[0].a == doctest::Approx(-2.76));
  for (const BoundaryCurve& c : d4) CHECK(c.method == CurveMethod::DecoupledMultiScale);
}

TEST_CASE("negative q samples are skipped; order and alpha are checked") {
  const double qs[] = {-0.2, -0.1, 0.0, 0.1};
  const auto cs = coupled_boundaries(0.5, 10.0, qs);
  for (const BoundaryCurve& c : cs) {
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0].q == 0.0);
  }
  const double bad[] = {0.1, 0.1};
  CHECK_THROWS_AS((void)coupled_boundaries(0.5, 10.0, bad), Error);
  CHECK_THROWS_AS((void)coupled_boundaries(0.0, 10.0, qs), Error);
  CHECK_THROWS_AS((void)decoupled_boundaries(-1.0, qs), Error);
}

TEST_CASE("interpolate along a curve") {
  BoundaryCurve c{"x", CurveMethod::Hill, {{0.0, 0.0}, {1.0, 2.0}, {2.0, 0.0}}};
  double a = 0.0;
  CHECK(interpolate(c, 0.5, a));
  CHECK(a == doctest::Approx(1.0));
  CHECK(interpolate(c, 1.5, a));
  CHECK(a == doctest::Approx(1.0));
  CHECK_FALSE(interpolate(c, 2.5, a));
  CHECK(parse_curve_method(to_string(CurveMethod::DecoupledMultiScale)) ==
        CurveMethod::DecoupledMultiScale);
}
