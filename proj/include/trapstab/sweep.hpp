#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trapstab/floquet.hpp"
#include "trapstab/integrator.hpp"

namespace trapstab {

/// Axis-aligned (q, a) window split into nq x na cells.
struct GridSpec {
  double q_min = 0.0;
  double q_max = 2.0;
  double a_min = -1.0;
  double a_max = 1.5;
  int nq = 400;
  int na = 400;

  void validate() const;
  double dq() const { return (q_max - q_min) / nq; }
  double da() const { return (a_max - a_min) / na; }
  double q_center(int i) const { return q_min + (i + 0.5) * dq(); }
  double a_center(int j) const { return a_min + (j + 0.5) * da(); }
};

/// One raster cell; an empty `cls` is the error mark.
struct GridCell {
  std::optional<StabilityClass> cls;
  std::string error;
};

/// Cells are stored row by row: index = j * nq + i, where j indexes a
/// (ascending) and i indexes q (ascending).
struct StabilityGrid {
  GridSpec spec;
  double alpha = 1.0;
  double theta_deg = 0.0;
  IntegratorConfig cfg;
  std::vector<GridCell> cells;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * spec.nq + i;
  }
  const GridCell& at(int i, int j) const { return cells[index(i, j)]; }
  std::size_t error_count() const;
  std::size_t count(Stability label) const;
  bool is(int i, int j, Stability label) const {
    const auto& c = at(i, j).cls;
    return c && c->label == label;
  }
};

StabilityGrid sweep_grid(double alpha, double theta_deg, const GridSpec& spec,
                         const IntegratorConfig& cfg = {},
                         const ClassifyTolerances& tol = {}, unsigned threads = 0);

}  // namespace trapstab
