#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "trapstab/errors.hpp"
#include "trapstab/integrator.hpp"
#include "trapstab/parallel.hpp"
#include "trapstab/sweep.hpp"

using namespace trapstab;

namespace {

bool same_cells(const StabilityGrid& x, const StabilityGrid& y) {
  if (x.cells.size() != y.cells.size()) return false;
  for (std::size_t k = 0; k < x.cells.size(); ++k) {
    if (x.cells[k].cls != y.cells[k].cls) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("grid spec geometry") {
  const GridSpec s{0.0, 2.0, -1.0, 1.5, 4, 5};
  CHECK(s.dq() == doctest::Approx(0.5));
  CHECK(s.da() == doctest::Approx(0.5));
  CHECK(s.q_center(0) == doctest::Approx(0.25));
  CHECK(s.q_center(3) == doctest::Approx(1.75));
  CHECK(s.a_center(0) == doctest::Approx(-0.75));
  CHECK(s.a_center(4) == doctest::Approx(1.25));
  CHECK_THROWS_AS((GridSpec{0.0, 2.0, -1.0, 1.5, 1, 5}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{2.0, 2.0, -1.0, 1.5, 2, 5}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{0.0, 2.0, 1.0, -1.0, 2, 2}.validate()), Error);
}

TEST_CASE("cells hold the point classification at cell centers") {
  const GridSpec s{0.1, 1.9, -0.9, 1.3, 7, 6};
  const auto g = sweep_grid(0.5, 6.4, s);
  REQUIRE(g.cells.size() == 42);
  CHECK(g.error_count() == 0);
  for (int j = 0; j < s.na; ++j) {
    for (int i = 0; i < s.nq; ++i) {
      REQUIRE(g.at(i, j).cls.has_value());
      CHECK(*g.at(i, j).cls == classify_point({s.q_center(i), s.a_center(j), 0.5, 6.4}));
    }
  }
}

TEST_CASE("sweep is deterministic across thread counts") {
  const GridSpec s{0.0, 2.0, -1.0, 1.5, 24, 20};
  const auto g1 = sweep_grid(0.5, 12.0, s, {}, {}, 1);
  const auto g2 = sweep_grid(0.5, 12.0, s, {}, {}, 3);
  const auto g3 = sweep_grid(0.5, 12.0, s, {}, {}, 1);
  CHECK(same_cells(g1, g2));
  CHECK(same_cells(g1, g3));
}

TEST_CASE("grid-level theta symmetry") {
  const GridSpec s{0.0, 2.0, -1.0, 1.5, 20, 20};
  CHECK(same_cells(sweep_grid(0.5, 30.0, s), sweep_grid(0.5, 60.0, s)));
  CHECK(same_cells(sweep_grid(0.5, 10.0, s), sweep_grid(0.5, 80.0, s)));
}

TEST_CASE("refinement agrees on shared cell centers") {
  // With cell-centered sampling, a 3x refinement puts a fine cell center on
  // every coarse one: coarse i <-> fine 3i + 1.
  const GridSpec coarse{0.0, 2.0, -1.0, 1.5, 10, 10};
  GridSpec fine = coarse;
  fine.nq = 30;
  fine.na = 30;
  const auto gc = sweep_grid(0.5, 22.5, coarse);
  const auto gf = sweep_grid(0.5, 22.5, fine);
  for (int j = 0; j < coarse.na; ++j) {
    for (int i = 0; i < coarse.nq; ++i) {
      CHECK(coarse.q_center(i) == doctest::Approx(fine.q_center(3 * i + 1)).epsilon(1e-14));
      CHECK(gc.at(i, j).cls == gf.at(3 * i + 1, 3 * j + 1).cls);
    }
  }
}

TEST_CASE("a = 0 strip near small q is fully stable") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double theta : {0.0, 20.0, 45.0}) {
      for (double q : {0.1, 0.2, 0.3}) {
        const double lo = -q * q / 2.0, hi = q * q / (2.0 * alpha);
        for (double f : {0.2, 0.45, 0.8}) {
          const double a = lo + f * (hi - lo);
          CHECK(classify_point({q, a, alpha, theta}).label == Stability::FullyStable);
        }
      }
    }
  }
  // alpha = 1, a = 0: x and y see q and -q, so the multipliers repeat.
  CHECK(classify_point({0.2, 0.0, 1.0, 0.0}).label == Stability::Marginal);
}

TEST_CASE("failing cells are marked, not fatal") {
  // a of order 1e300 overflows the integrator in every cell of the top row.
  const GridSpec s{0.1, 0.3, 0.0, 2e300, 2, 2};
  const auto g = sweep_grid(1.0, 0.0, s);
  CHECK(g.error_count() == 4);
  for (const GridCell& c : g.cells) {
    CHECK_FALSE(c.cls.has_value());
    CHECK(c.error.find("overflow") != std::string::npos);
  }
  CHECK(g.count(Stability::Unstable) == 0);
}

TEST_CASE("grid counts") {
  const GridSpec s{0.0, 1.0, -0.5, 0.5, 10, 10};
  const auto g = sweep_grid(0.5, 0.0, s);
  std::size_t total = 0;
  for (Stability l : {Stability::FullyStable, Stability::PartiallyStable, Stability::Unstable,
                      Stability::Marginal}) {
    total += g.count(l);
  }
  CHECK(total == 100);
  CHECK(g.count(Stability::FullyStable) > 0);
  CHECK(g.is(0, 0, Stability::PartiallyStable) == (g.at(0, 0).cls->label ==
                                                   Stability::PartiallyStable));
}

TEST_CASE("parallel_for covers every index once and propagates exceptions") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t k) { hits[k] += 1; }, 4);
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(
                      10, [](std::size_t k) { if (k == 7) throw std::runtime_error("x"); }, 2),
                  std::runtime_error);
  CHECK(default_thread_count() >= 1);
}
