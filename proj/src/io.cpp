#include "trapstab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "trapstab/errors.hpp"

namespace trapstab::io {

int gray_level(const GridCell& cell) {
  if (!cell.cls) return kGrayError;
  switch (cell.cls->label) {
    case Stability::FullyStable: return kGrayFullyStable;
    case Stability::PartiallyStable: return kGrayPartiallyStable;
    case Stability::Marginal: return kGrayMarginal;
    case Stability::Unstable: return kGrayUnstable;
  }
  return kGrayError;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_grid_csv(std::ostream& os, const StabilityGrid& grid) {
  os << "q,a,class,unit_count\n";
  for (int j = 0; j < grid.spec.na; ++j) {
    for (int i = 0; i < grid.spec.nq; ++i) {
      const GridCell& cell = grid.at(i, j);
      os << format_real(grid.spec.q_center(i)) << ',' << format_real(grid.spec.a_center(j))
         << ',';
      if (cell.cls) {
        os << to_string(cell.cls->label) << ',' << cell.cls->unit_count;
      } else {
        os << "Error,-1";
      }
      os << '\n';
    }
  }
}

void write_grid_pgm(std::ostream& os, const StabilityGrid& grid) {
  os << "P2\n" << grid.spec.nq << ' ' << grid.spec.na << "\n255\n";
  for (int j = grid.spec.na - 1; j >= 0; --j) {
    for (int i = 0; i < grid.spec.nq; ++i) {
      if (i > 0) os << ' ';
      os << gray_level(grid.at(i, j));
    }
    os << '\n';
  }
}

void write_curves_csv(std::ostream& os, const std::vector<BoundaryCurve>& curves) {
  os << "label,method,q,a\n";
  for (const BoundaryCurve& c : curves) {
    for (const CurvePoint& p : c.points) {
      os << c.label << ',' << to_string(c.method) << ',' << format_real(p.q) << ','
         << format_real(p.a) << '\n';
    }
  }
}

void write_trace_csv(std::ostream& os, const EigenTrace& trace) {
  os << "a,re1,im1,re2,im2,re3,im3,re4,im4,unit_count\n";
  for (const TraceSample& s : trace.path) {
    os << format_real(s.params.a);
    for (const Complex& z : s.spectrum.values) {
      os << ',' << format_real(z.real()) << ',' << format_real(z.imag());
    }
    os << ',' << s.cls.unit_count << '\n';
  }
}

void write_collisions_csv(std::ostream& os, const EigenTrace& trace) {
  os << "a,loc_re,loc_im,on_real_axis\n";
  for (const Collision& c : trace.collisions) {
    os << format_real(c.a) << ',' << format_real(c.location.real()) << ','
       << format_real(c.location.imag()) << ',' << (c.on_real_axis ? "true" : "false")
       << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
  return static_cast<int>(v);
}

void expect_header(std::istream& is, std::string_view header) {
  std::string line;
  if (!std::getline(is, line) || line != header) {
    throw Error(ErrorCode::Parse, "expected header '" + std::string(header) + "'");
  }
}

}  // namespace

std::vector<GridRow> read_grid_csv(std::istream& is) {
  expect_header(is, "q,a,class,unit_count");
  std::vector<GridRow> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 4) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 4 fields");
    }
    GridRow row;
    row.q = parse_real(f[0], line_no);
    row.a = parse_real(f[1], line_no);
    if (f[2] != "Error") {
      row.cls = StabilityClass{parse_stability(f[2]), parse_int(f[3], line_no)};
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<BoundaryCurve> read_curves_csv(std::istream& is) {
  expect_header(is, "label,method,q,a");
  std::vector<BoundaryCurve> curves;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 4) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 4 fields");
    }
    const CurveMethod method = parse_curve_method(f[1]);
    if (curves.empty() || curves.back().label != f[0] || curves.back().method != method) {
      curves.push_back(BoundaryCurve{f[0], method, {}});
    }
    curves.back().points.push_back({parse_real(f[2], line_no), parse_real(f[3], line_no)});
  }
  return curves;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace trapstab::io
