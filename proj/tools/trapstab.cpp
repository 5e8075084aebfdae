// trapstab command-line front end. Talks to the library only through the C
// interface in trapstab.h.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trapstab/trapstab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;

struct Fatal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(trapstab_status st, const char* what) {
  if (st != TRAPSTAB_OK) {
    throw Fatal(std::string(what) + ": " + trapstab_status_name(st) + ": " +
                trapstab_last_error());
  }
}

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

Range parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) {
    throw Fatal(std::string(flag) + " expects lo:hi, got '" + text + "'");
  }
  auto num = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw Fatal(std::string(flag) + ": bad number '" + s + "'");
    }
    return v;
  };
  Range r{num(text.substr(0, colon)), num(text.substr(colon + 1))};
  if (!(r.lo < r.hi)) throw Fatal(std::string(flag) + " needs lo < hi");
  return r;
}

std::string range_text(const Range& r) { return real(r.lo) + ":" + real(r.hi); }

std::vector<double> linspace(const Range& r, int n) {
  if (n < 1) throw Fatal("--samples must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = n == 1 ? r.lo : r.lo + (r.hi - r.lo) * k / (n - 1);
  }
  return out;
}

// Everything that ends up in PREFIX.manifest. `args` is the canonical,
// fully resolved command line; replaying it reproduces the outputs.
struct Manifest {
  std::string command;
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  std::size_t cell_errors = 0;
  double wall_seconds = 0.0;

  void param(const std::string& k, const std::string& v) {
    params.emplace_back(k, v);
  }

  void write(const std::string& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Fatal("cannot write manifest '" + path + "'");
    os << "command=" << command << '\n';
    os << "version=" << trapstab_version() << '\n';
    for (const auto& [k, v] : params) os << "param." << k << '=' << v << '\n';
    os << "wall_time_s=" << real(wall_seconds) << '\n';
    os << "cell_errors=" << cell_errors << '\n';
    os << "output_count=" << outputs.size() << '\n';
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      os << "output." << i << '=' << outputs[i] << '\n';
    }
    os << "warning_count=" << warnings.size() << '\n';
    for (std::size_t i = 0; i < warnings.size(); ++i) {
      os << "warning." << i << '=' << warnings[i] << '\n';
    }
    os << "arg_count=" << args.size() << '\n';
    for (std::size_t i = 0; i < args.size(); ++i) {
      os << "arg." << i << '=' << args[i] << '\n';
    }
    if (!os.flush()) throw Fatal("failed writing manifest '" + path + "'");
  }
};

struct GridDeleter {
  void operator()(trapstab_grid* g) const { trapstab_grid_free(g); }
};
struct CurvesDeleter {
  void operator()(trapstab_curves* c) const { trapstab_curves_free(c); }
};
struct TraceDeleter {
  void operator()(trapstab_trace* t) const { trapstab_trace_free(t); }
};

// ---- option sets ----------------------------------------------------------

struct Common {
  double alpha = 0.5;
  double theta = 0.0;
  int steps = 0;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--alpha", c.alpha, "DC anisotropy ratio (> 0)")->capture_default_str();
  cmd->add_option("--theta", c.theta, "RF/DC axis angle in degrees")->capture_default_str();
  cmd->add_option("--out", c.out, "output prefix (default: command name)");
}

struct SweepOpts {
  Common common;
  std::string q = "0:2";
  std::string a = "-1:1.5";
  int nq = 400;
  int na = 400;
  unsigned threads = 0;
};

struct BoundaryOpts {
  Common common;
  std::string q = "0:2";
  int samples = 201;
  bool decoupled = false;
};

struct HillOpts {
  Common common;
  std::string q = "0:2";
  int samples = 201;
  int nu = 1;
  int order = 20;
  std::string bracket = "-3:2";
  int scan = 2000;
  double tol = 1e-8;
};

struct TraceOpts {
  Common common;
  double q = 1.5;
  std::string a = "-1:1.5";
  int samples = 401;
};

int resolved_steps(int steps) { return steps > 0 ? steps : trapstab_default_steps(); }

// ---- commands -------------------------------------------------------------

int run_sweep(SweepOpts& o, Manifest& m) {
  const Range q = parse_range(o.q, "--q");
  const Range a = parse_range(o.a, "--a");
  const int steps = resolved_steps(o.common.steps);
  m.args = {"sweep",   "--alpha", real(o.common.alpha), "--theta", real(o.common.theta),
            "--q",     range_text(q), "--a", range_text(a), "--nq", std::to_string(o.nq),
            "--na",    std::to_string(o.na), "--steps", std::to_string(steps)};
  m.param("alpha", real(o.common.alpha));
  m.param("theta_deg", real(o.common.theta));
  m.param("q", range_text(q));
  m.param("a", range_text(a));
  m.param("nq", std::to_string(o.nq));
  m.param("na", std::to_string(o.na));
  m.param("steps", std::to_string(steps));

  const trapstab_grid_spec spec{q.lo, q.hi, a.lo, a.hi, o.nq, o.na};
  trapstab_grid* raw = nullptr;
  check(trapstab_sweep(o.common.alpha, o.common.theta, &spec, steps, o.threads, &raw),
        "sweep");
  std::unique_ptr<trapstab_grid, GridDeleter> grid(raw);

  const std::string csv = o.common.out + ".csv";
  const std::string pgm = o.common.out + ".pgm";
  check(trapstab_grid_write_csv(grid.get(), csv.c_str()), "write csv");
  check(trapstab_grid_write_pgm(grid.get(), pgm.c_str()), "write pgm");
  m.outputs = {csv, pgm};
  m.cell_errors = trapstab_grid_error_count(grid.get());
  if (m.cell_errors > 0) {
    std::cerr << "warning: " << m.cell_errors << " cell(s) failed to evaluate\n";
    return kExitPartial;
  }
  return kExitOk;
}

int run_boundaries(BoundaryOpts& o, Manifest& m) {
  const Range q = parse_range(o.q, "--q");
  const std::vector<double> qs = linspace(q, o.samples);
  m.args = {"boundaries", "--alpha", real(o.common.alpha), "--theta", real(o.common.theta),
            "--q", range_text(q), "--samples", std::to_string(o.samples)};
  if (o.decoupled) m.args.push_back("--decoupled");
  m.param("alpha", real(o.common.alpha));
  m.param("theta_deg", real(o.common.theta));
  m.param("q", range_text(q));
  m.param("samples", std::to_string(o.samples));
  m.param("decoupled", o.decoupled ? "true" : "false");

  trapstab_curves* raw = nullptr;
  check(trapstab_curves_new(&raw), "curves");
  std::unique_ptr<trapstab_curves, CurvesDeleter> curves(raw);
  check(trapstab_multiscale_coupled(curves.get(), o.common.alpha, o.common.theta, qs.data(),
                                    qs.size()),
        "multiscale");
  if (o.decoupled) {
    check(trapstab_multiscale_decoupled(curves.get(), o.common.alpha, qs.data(), qs.size()),
          "decoupled multiscale");
  }
  const std::string csv = o.common.out + ".csv";
  check(trapstab_curves_write_csv(curves.get(), csv.c_str()), "write csv");
  m.outputs = {csv};
  return kExitOk;
}

int run_hill(HillOpts& o, Manifest& m) {
  const Range q = parse_range(o.q, "--q");
  const Range br = parse_range(o.bracket, "--bracket");
  const std::vector<double> qs = linspace(q, o.samples);
  m.args = {"hill",    "--alpha",          real(o.common.alpha),
            "--theta", real(o.common.theta), "--q",
            range_text(q), "--samples",    std::to_string(o.samples),
            "--nu",    std::to_string(o.nu), "--order",
            std::to_string(o.order), "--bracket", range_text(br),
            "--scan",  std::to_string(o.scan), "--tol",
            real(o.tol)};
  m.param("alpha", real(o.common.alpha));
  m.param("theta_deg", real(o.common.theta));
  m.param("q", range_text(q));
  m.param("samples", std::to_string(o.samples));
  m.param("nu", std::to_string(o.nu));
  m.param("order", std::to_string(o.order));
  m.param("bracket", range_text(br));
  m.param("scan", std::to_string(o.scan));
  m.param("tol", real(o.tol));

  trapstab_curves* raw = nullptr;
  check(trapstab_curves_new(&raw), "curves");
  std::unique_ptr<trapstab_curves, CurvesDeleter> curves(raw);
  const trapstab_hill_options opts{o.order, br.lo, br.hi, o.scan, o.tol};
  check(trapstab_hill_boundary(curves.get(), o.nu, o.common.alpha, o.common.theta, qs.data(),
                               qs.size(), &opts),
        "hill");
  const std::string csv = o.common.out + ".csv";
  check(trapstab_curves_write_csv(curves.get(), csv.c_str()), "write csv");
  m.outputs = {csv};
  for (std::size_t k = 0; k < trapstab_curves_warning_count(curves.get()); ++k) {
    m.warnings.emplace_back(trapstab_curves_warning(curves.get(), k));
    std::cerr << "warning: " << m.warnings.back() << '\n';
  }
  return m.warnings.empty() ? kExitOk : kExitPartial;
}

int run_trace(TraceOpts& o, Manifest& m) {
  const Range a = parse_range(o.a, "--a");
  const int steps = resolved_steps(o.common.steps);
  m.args = {"trace",  "--alpha", real(o.common.alpha), "--theta", real(o.common.theta),
            "--q",    real(o.q), "--a", range_text(a), "--samples", std::to_string(o.samples),
            "--steps", std::to_string(steps)};
  m.param("alpha", real(o.common.alpha));
  m.param("theta_deg", real(o.common.theta));
  m.param("q", real(o.q));
  m.param("a", range_text(a));
  m.param("samples", std::to_string(o.samples));
  m.param("steps", std::to_string(steps));

  trapstab_trace* raw = nullptr;
  check(trapstab_trace_eigenvalues(o.common.alpha, o.common.theta, o.q, a.lo, a.hi,
                                   o.samples, steps, &raw),
        "trace");
  std::unique_ptr<trapstab_trace, TraceDeleter> trace(raw);
  const std::string path = o.common.out + "_trace.csv";
  const std::string coll = o.common.out + "_collisions.csv";
  check(trapstab_trace_write_csv(trace.get(), path.c_str(), coll.c_str()), "write csv");
  m.outputs = {path, coll};
  return kExitOk;
}

std::map<std::string, std::string> read_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Fatal("cannot read manifest '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

int dispatch(int argc, const char* const* argv);

int run_replay(const std::string& manifest, const std::string& out) {
  const auto kv = read_manifest(manifest);
  const auto count_it = kv.find("arg_count");
  if (count_it == kv.end()) throw Fatal("manifest has no arg_count");
  const int count = std::stoi(count_it->second);
  std::vector<std::string> args{"trapstab"};
  for (int i = 0; i < count; ++i) {
    const auto it = kv.find("arg." + std::to_string(i));
    if (it == kv.end()) throw Fatal("manifest is missing arg." + std::to_string(i));
    args.push_back(it->second);
  }
  if (args.size() < 2 || args[1] == "replay") throw Fatal("manifest does not name a command");
  args.push_back("--out");
  args.push_back(out);
  std::vector<const char*> ptrs;
  for (const std::string& s : args) ptrs.push_back(s.c_str());
  return dispatch(static_cast<int>(ptrs.size()), ptrs.data());
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Stability diagrams for the coupled two-variable Mathieu system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(trapstab_version()));

  SweepOpts sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "classify a (q, a) grid");
  add_common(sweep_cmd, sweep.common);
  sweep_cmd->add_option("--q", sweep.q, "q range lo:hi")->capture_default_str();
  sweep_cmd->add_option("--a", sweep.a, "a range lo:hi")->capture_default_str();
  sweep_cmd->add_option("--nq", sweep.nq, "cells along q")->capture_default_str();
  sweep_cmd->add_option("--na", sweep.na, "cells along a")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.common.steps, "RK4 steps per period (0 = default)");
  sweep_cmd->add_option("--threads", sweep.threads,
                        "worker threads (0 = TRAPSTAB_THREADS or all cores)");

  BoundaryOpts bnd;
  auto* bnd_cmd = app.add_subcommand("boundaries", "closed-form boundary curves");
  add_common(bnd_cmd, bnd.common);
  bnd_cmd->add_option("--q", bnd.q, "q range lo:hi")->capture_default_str();
  bnd_cmd->add_option("--samples", bnd.samples, "q samples")->capture_default_str();
  bnd_cmd->add_flag("--decoupled", bnd.decoupled, "also emit the decoupled +/- curves");

  HillOpts hill;
  auto* hill_cmd = app.add_subcommand("hill", "natural-resonance curves from the Hill determinant");
  add_common(hill_cmd, hill.common);
  hill_cmd->add_option("--q", hill.q, "q range lo:hi")->capture_default_str();
  hill_cmd->add_option("--samples", hill.samples, "q samples")->capture_default_str();
  hill_cmd->add_option("--nu", hill.nu, "0 or 1")->capture_default_str();
  hill_cmd->add_option("--order", hill.order, "Fourier truncation order")->capture_default_str();
  hill_cmd->add_option("--bracket", hill.bracket, "a search bracket lo:hi")
      ->capture_default_str();
  hill_cmd->add_option("--scan", hill.scan, "scan intervals per q")->capture_default_str();
  hill_cmd->add_option("--tol", hill.tol, "root tolerance in a")->capture_default_str();

  TraceOpts trace;
  auto* trace_cmd = app.add_subcommand("trace", "multiplier trajectories along a line of fixed q");
  add_common(trace_cmd, trace.common);
  trace_cmd->add_option("--q", trace.q, "fixed q")->capture_default_str();
  trace_cmd->add_option("--a", trace.a, "a range lo:hi")->capture_default_str();
  trace_cmd->add_option("--samples", trace.samples, "samples along a")->capture_default_str();
  trace_cmd->add_option("--steps", trace.common.steps, "RK4 steps per period (0 = default)");

  std::string replay_manifest, replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  replay_cmd->add_option("manifest", replay_manifest, "PREFIX.manifest")->required();
  replay_cmd->add_option("--out", replay_out, "output prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFatal;
  }

  if (replay_cmd->parsed()) return run_replay(replay_manifest, replay_out);

  Manifest m;
  int rc = kExitOk;
  const auto t0 = std::chrono::steady_clock::now();
  auto prefix = [](Common& c, const char* name) {
    if (c.out.empty()) c.out = name;
  };
  std::string out;
  if (sweep_cmd->parsed()) {
    m.command = "sweep";
    prefix(sweep.common, "sweep");
    rc = run_sweep(sweep, m);
    out = sweep.common.out;
  } else if (bnd_cmd->parsed()) {
    m.command = "boundaries";
    prefix(bnd.common, "boundaries");
    rc = run_boundaries(bnd, m);
    out = bnd.common.out;
  } else if (hill_cmd->parsed()) {
    m.command = "hill";
    prefix(hill.common, "hill");
    rc = run_hill(hill, m);
    out = hill.common.out;
  } else {
    m.command = "trace";
    prefix(trace.common, "trace");
    rc = run_trace(trace, m);
    out = trace.common.out;
  }
  m.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  m.write(out + ".manifest");
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "trapstab: " << e.what() << '\n';
    return kExitFatal;
  }
}
