#include "trapstab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trapstab/errors.hpp"
#include "trapstab/parallel.hpp"

namespace trapstab {

void GridSpec::validate() const {
  const bool finite = std::isfinite(q_min) && std::isfinite(q_max) &&
                      std::isfinite(a_min) && std::isfinite(a_max);
  if (!finite || !(q_min < q_max) || !(a_min < a_max) || nq < 2 || na < 2) {
    std::ostringstream os;
    os << "invalid grid: q [" << q_min << ", " << q_max << "] x a [" << a_min
       << ", " << a_max << "], " << nq << " x " << na << " cells";
    throw Error(ErrorCode::Domain, os.str());
  }
}

std::size_t StabilityGrid::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      cells.begin(), cells.end(), [](const GridCell& c) { return !c.cls; }));
}

std::size_t StabilityGrid::count(Stability label) const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [label](const GridCell& c) {
        return c.cls && c.cls->label == label;
      }));
}

StabilityGrid sweep_grid(double alpha, double theta_deg, const GridSpec& spec,
                         const IntegratorConfig& cfg, const ClassifyTolerances& tol,
                         unsigned threads) {
  spec.validate();
  cfg.validate();
  validated(TrapParams{0.0, 0.0, alpha, theta_deg});

  StabilityGrid grid;
  grid.spec = spec;
  grid.alpha = alpha;
  grid.theta_deg = theta_deg;
  grid.cfg = cfg;
  grid.cells.resize(static_cast<std::size_t>(spec.nq) * spec.na);

  parallel_for(
      grid.cells.size(),
      [&](std::size_t idx) {
        const int i = static_cast<int>(idx % spec.nq);
        const int j = static_cast<int>(idx / spec.nq);
        GridCell& cell = grid.cells[idx];
        try {
          cell.cls = classify_point(
              TrapParams{spec.q_center(i), spec.a_center(j), alpha, theta_deg}, cfg, tol);
        } catch (const Error& e) {
          cell.cls.reset();
          cell.error = std::string(to_string(e.code())) + ": " + e.what();
        }
      },
      threads);
  return grid;
}

}  // namespace trapstab
