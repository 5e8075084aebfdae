#pragma once

// Text formats consumed by external plotting tools. CSV files have a header
// row and LF line endings; reals are printed with 17 significant digits so
// that parsing recovers the exact double.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trapstab/curves.hpp"
#include "trapstab/floquet.hpp"
#include "trapstab/sweep.hpp"

namespace trapstab::io {

/// Gray levels of the P2 raster.
inline constexpr int kGrayFullyStable = 0;
inline constexpr int kGrayPartiallyStable = 128;
inline constexpr int kGrayMarginal = 192;
inline constexpr int kGrayUnstable = 255;
inline constexpr int kGrayError = 64;

int gray_level(const GridCell& cell);

std::string format_real(double v);

/// `q,a,class,unit_count`, one line per cell in storage order. Error cells
/// carry class `Error` and unit_count -1.
void write_grid_csv(std::ostream& os, const StabilityGrid& grid);

/// Plain PGM; the top image row is the largest a.
void write_grid_pgm(std::ostream& os, const StabilityGrid& grid);

/// `label,method,q,a`
void write_curves_csv(std::ostream& os, const std::vector<BoundaryCurve>& curves);

/// `a,re1,im1,re2,im2,re3,im3,re4,im4,unit_count`
void write_trace_csv(std::ostream& os, const EigenTrace& trace);

/// `a,loc_re,loc_im,on_real_axis`
void write_collisions_csv(std::ostream& os, const EigenTrace& trace);

struct GridRow {
  double q = 0.0;
  double a = 0.0;
  std::optional<StabilityClass> cls;
};

std::vector<GridRow> read_grid_csv(std::istream& is);
std::vector<BoundaryCurve> read_curves_csv(std::istream& is);

/// Writes via a temporary string and throws Error(Io) if the path cannot be
/// opened or written.
void write_file(const std::string& path, const std::string& contents);

}  // namespace trapstab::io
