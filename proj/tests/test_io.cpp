#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "trapstab/errors.hpp"
#include "trapstab/io.hpp"
#include "trapstab/multiscale.hpp"

using namespace trapstab;

TEST_CASE("grid CSV round-trips exactly") {
  const GridSpec s{0.013, 1.97, -0.91, 1.43, 9, 7};
  const auto g = sweep_grid(0.5, 6.4, s);
  std::stringstream ss;
  io::write_grid_csv(ss, g);
  const auto rows = io::read_grid_csv(ss);
  REQUIRE(rows.size() == 63);
  for (int j = 0; j < s.na; ++j) {
    for (int i = 0; i < s.nq; ++i) {
      const auto& r = rows[static_cast<std::size_t>(j * s.nq + i)];
      CHECK(r.q == s.q_center(i));
      CHECK(r.a == s.a_center(j));
      CHECK(r.cls == g.at(i, j).cls);
    }
  }
}

TEST_CASE("curves CSV round-trips exactly") {
  std::vector<double> qs;
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> step(1e-3, 0.1);
  double q = 0.0;
  for (int k = 0; k < 30; ++k) qs.push_back(q += step(rng));
  auto curves = coupled_boundaries(0.7, 23.0, qs);
  for (auto& c : decoupled_boundaries(0.7, qs)) curves.push_back(c);
  curves.push_back({"hill_nu1_0", CurveMethod::Hill, {{0.1, 1.0 / 3.0}, {0.2, -1e-300}}});
  std::stringstream ss;
  io::write_curves_csv(ss, curves);
  CHECK(io::read_curves_csv(ss) == curves);
}

TEST_CASE("error cells in the CSV and PGM") {
  const GridSpec s{0.1, 0.3, 0.0, 2e300, 2, 2};
  const auto g = sweep_grid(1.0, 0.0, s);
  std::stringstream csv;
  io::write_grid_csv(csv, g);
  CHECK(csv.str().find(",Error,-1\n") != std::string::npos);
  const auto rows = io::read_grid_csv(csv);
  for (const auto& r : rows) CHECK_FALSE(r.cls.has_value());
  std::stringstream pgm;
  io::write_grid_pgm(pgm, g);
  CHECK(pgm.str() == "P2\n2 2\n255\n64 64\n64 64\n");
}

TEST_CASE("PGM layout and palette") {
  const GridSpec s{0.0, 2.0, -1.0, 1.5, 3, 2};
  StabilityGrid g;
  g.spec = s;
  g.cells.resize(6);
  g.cells[0].cls = StabilityClass{Stability::FullyStable, 4};
  g.cells[1].cls = StabilityClass{Stability::PartiallyStable, 2};
  g.cells[2].cls = StabilityClass{Stability::Marginal, 4};
  g.cells[3].cls = StabilityClass{Stability::Unstable, 0};
  g.cells[4].cls = StabilityClass{Stability::Unstable, 0};
  // cells[5] left as an error cell
  std::stringstream pgm;
  io::write_grid_pgm(pgm, g);
  // First image row is the top of the a range (j = 1).
  CHECK(pgm.str() == "P2\n3 2\n255\n255 255 64\n0 128 192\n");
}

TEST_CASE("trace and collision CSV headers") {
  const auto t = trace_eigenvalues(0.5, 0.0, 0.5, -0.5, 0.5, 5);
  std::stringstream tr, co;
  io::write_trace_csv(tr, t);
  io::write_collisions_csv(co, t);
  std::string header;
  std::getline(tr, header);
  CHECK(header == "a,re1,im1,re2,im2,re3,im3,re4,im4,unit_count");
  std::getline(co, header);
  CHECK(header == "a,loc_re,loc_im,on_real_axis");
  int lines = 0;
  for (std::string l; std::getline(tr, l);) ++lines;
  CHECK(lines == 5);
  for (std::string l; std::getline(co, l);) {
    CHECK((l.ends_with(",true") || l.ends_with(",false")));
  }
}

TEST_CASE("malformed CSV is a parse error") {
  auto code_of = [](const std::string& text, bool grid) {
    std::istringstream is(text);
    try {
      if (grid) {
        (void)io::read_grid_csv(is);
      } else {
        (void)io::read_curves_csv(is);
      }
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code_of("q,a,cls\n", true) == ErrorCode::Parse);
  CHECK(code_of("q,a,class,unit_count\n0.1,x,Unstable,0\n", true) == ErrorCode::Parse);
  CHECK(code_of("q,a,class,unit_count\n0.1,0.2,Bogus,0\n", true) == ErrorCode::Parse);
  CHECK(code_of("q,a,class,unit_count\n0.1,0.2,Unstable\n", true) == ErrorCode::Parse);
  CHECK(code_of("label,method,q,a\nx,Hill,0.1\n", false) == ErrorCode::Parse);
  CHECK(code_of("label,method,q,a\nx,Spline,0.1,0.2\n", false) == ErrorCode::Parse);
}

TEST_CASE("format_real keeps 17 significant digits") {
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(std::strtod(io::format_real(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
}

TEST_CASE("write_file reports unwritable paths") {
  try {
    io::write_file("/nonexistent-dir/x.csv", "x");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}
