// Command-line driver: runs the shipped scenarios and writes frames plus a
// manifest of every resolved parameter. Exit codes: 0 success, 1 usage
// error, 2 numerical failure.

#include "congest/io.hpp"
#include "congest/riemann.hpp"
#include "congest/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

namespace fs = std::filesystem;
using namespace congest;

namespace {

struct Options {
  std::string scheme = "zq";
  int order = 1;
  int space_order = 0;  // 0: same as --order, or the scenario default
  double eps = 1e-2;
  double alpha = 2.0;
  double gamma = 2.0;
  int nx = 0;
  int ny = 0;
  double dt_factor = 0.1;
  double t_end = 0.0;
  std::string out = "congest_out";
  std::string format = "csv";
  int sl_r = 1;
  double beta = 0.1;
  std::uint64_t seed = 1;
  double frame_interval = 0.0;
  int collide_case = 1;
  std::string profile = "constant";
  double rho_star = 1.0;
  int reference_nx = 10000;
  std::vector<int> resolutions{250, 500, 1000};
  std::vector<double> left{0.7, 8.0 / 7.0, 7.0 / 12.0};
  std::vector<double> right{0.7, -8.0 / 7.0, 0.7};
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--scheme", o.scheme, "zq or sl")->check(CLI::IsMember({"zq", "sl"}));
  sub->add_option("--order", o.order, "time (and default space) order")->check(CLI::IsMember({1, 2}));
  sub->add_option("--space-order", o.space_order, "space order when it differs from --order")
      ->check(CLI::IsMember({0, 1, 2}));
  sub->add_option("--eps", o.eps, "singular pressure stiffness")->check(CLI::PositiveNumber);
  sub->add_option("--alpha", o.alpha, "singularity exponent")->check(CLI::PositiveNumber);
  sub->add_option("--gamma", o.gamma, "background exponent")->check(CLI::Range(1.0 + 1e-12, 1e6));
  sub->add_option("--nx", o.nx, "cells along x")->check(CLI::PositiveNumber);
  sub->add_option("--ny", o.ny, "cells along y")->check(CLI::PositiveNumber);
  sub->add_option("--dt-factor", o.dt_factor, "dt = factor * dx")->check(CLI::PositiveNumber);
  sub->add_option("--t-end", o.t_end, "final time")->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--format", o.format, "csv or vtk")->check(CLI::IsMember({"csv", "vtk"}));
  sub->add_option("--sl-r", o.sl_r, "semi-Lagrangian half-width")->check(CLI::IsMember({0, 1}));
  sub->add_option("--frame-interval", o.frame_interval, "time between written frames");
}

Scenario scenario_from(const CLI::App& sub, const Options& o, ScenarioKind kind) {
  Scenario s = default_scenario(kind);
  s.scheme = parse_scheme_kind(o.scheme);
  if (sub.count("--order")) {
    s.config.time_order = o.order;
    s.config.space_order = o.order;
  }
  if (o.space_order) s.config.space_order = o.space_order;
  s.config.law = PressureLawd(o.eps, o.alpha, o.gamma);
  s.config.cfl_factor = o.dt_factor;
  s.semilag.r = o.sl_r;
  s.semilag.time_order = s.config.time_order;
  if (o.nx) s.nx = o.nx;
  if (o.ny) s.ny = o.ny;
  if (o.t_end > 0) s.t_end = o.t_end;
  s.frame_interval = o.frame_interval;
  s.collide_case = o.collide_case;
  s.profile = parse_evacuation_profile(o.profile);
  s.rho_star_constant = o.rho_star;
  s.beta = o.beta;
  s.seed = o.seed;
  s.validate();
  return s;
}

std::string extension(const std::string& format) { return format == "vtk" ? ".vtk" : ".csv"; }

// The [<subcommand>] section holds the effective parameters and can be fed
// back through --config to repeat the run.
std::string scenario_section(const std::string& sub, const Scenario& s, const std::string& format,
                             const std::string& out) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  const PressureLawd& law = s.config.law;
  os << '[' << sub << "]\nscheme=" << to_string(s.scheme) << "\norder=" << s.config.time_order
     << "\nspace-order=" << s.config.space_order << "\neps=" << law.epsilon << "\nalpha=" << law.alpha
     << "\ngamma=" << law.gamma << "\nnx=" << s.nx;
  if (s.kind == ScenarioKind::Collide2d || s.kind == ScenarioKind::Evacuate2d) os << "\nny=" << s.ny;
  os << "\ndt-factor=" << s.config.cfl_factor << "\nt-end=" << s.t_end << "\nout=\"" << out
     << "\"\nformat=" << format << "\nsl-r=" << s.semilag.r << "\nframe-interval=" << s.frame_interval
     << '\n';
  if (s.kind == ScenarioKind::Collide2d) os << "case=" << s.collide_case << '\n';
  if (s.kind == ScenarioKind::Evacuate2d) {
    os << "beta=" << s.beta << "\nseed=" << s.seed << "\nprofile=" << to_string(s.profile)
       << "\nrho-star=" << s.rho_star_constant << '\n';
  }
  return os.str();
}

void write_manifest(const fs::path& dir, const std::string& body) {
  std::ofstream m(dir / "manifest.ini");
  m << body;
  if (!m) throw IoError("cannot write " + (dir / "manifest.ini").string());
}

std::string result_summary(const ScenarioResult& r) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "\n[result]\nsteps=" << r.steps << "\nfinal_time=" << r.final_state.time
     << "\nfinal_mass=" << r.mass.back() << "\nmax_fraction=" << r.max_fraction
     << "\nmax_newton_iterations=" << r.max_newton_iterations
     << "\nimplicit_switches=" << r.implicit_switches << "\ndensity_clamps=" << r.density_clamps
     << "\n";
  return os.str();
}

int run_and_write(const std::string& sub, const Options& o, const Scenario& s) {
  const fs::path dir(o.out);
  const std::string params = scenario_section(sub, s, o.format, o.out);
  fs::create_directories(dir);
  const FrameFormat fmt = parse_frame_format(o.format);
  try {
    const ScenarioResult r = run_scenario(s);
    for (std::size_t k = 0; k < r.frames.size(); ++k) {
      char name[64];
      std::snprintf(name, sizeof name, "frame_%04zu", k);
      write_frame(r.frames[k].state, r.grid, (dir / (name + extension(o.format))).string(), fmt);
    }
    write_manifest(dir, params + result_summary(r));
    std::cout << "steps " << r.steps << ", final mass " << std::setprecision(12) << r.mass.back()
              << ", max Z " << r.max_fraction << ", frames " << r.frames.size() << " in " << dir.string()
              << "\n";
    return 0;
  } catch (const ScenarioError& e) {
    write_manifest(dir, params + "\n[failure]\nstep=" + std::to_string(e.step) + "\nmessage=\"" + e.what() +
                            "\"\n");
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

int exact_riemann(const Options& o) {
  if (o.left.size() != 3 || o.right.size() != 3) throw CLI::ValidationError("states need rho,v,Z");
  const PrimState L{o.left[0], o.left[1], o.left[2]};
  const PrimState R{o.right[0], o.right[1], o.right[2]};
  const PressureLawd law(o.eps, o.alpha, o.gamma);
  const int nx = o.nx ? o.nx : 1000;
  const double t = o.t_end > 0 ? o.t_end : 0.1;
  const fs::path dir(o.out);
  fs::create_directories(dir);
  try {
    const RiemannFan fan = solve_riemann(L, R, law);
    std::cout << std::setprecision(10) << "wave1 " << to_string(fan.wave1.kind) << " [" << fan.wave1.lo
              << ", " << fan.wave1.hi << "]\n"
              << "contact " << fan.v_mid << "\n"
              << "wave3 " << to_string(fan.wave3.kind) << " [" << fan.wave3.lo << ", " << fan.wave3.hi
              << "]\n"
              << "v_m " << fan.v_mid << " Z_m " << fan.Z_mid << " rho_m,l " << fan.rho_mid_left
              << " rho_m,r " << fan.rho_mid_right << "\n";
    const Grid g = Grid::line(nx);
    GridState s = GridState::zeros(g);
    s.time = t;
    for (int i = 0; i < nx; ++i) {
      const PrimState p = sample_solution(fan, (g.x_center(i) - 0.5) / t);
      s.rho[i] = p.rho;
      s.q[0][i] = p.q();
      s.Z[i] = p.Z;
      s.rho_star[i] = p.rho_star();
    }
    write_frame(s, g, (dir / ("exact" + extension(o.format))).string(), parse_frame_format(o.format));
    std::ostringstream m;
    m << std::setprecision(std::numeric_limits<double>::max_digits10) << "[exact-riemann]\neps=" << o.eps
      << "\nalpha=" << o.alpha << "\ngamma=" << o.gamma << "\nnx=" << nx << "\nt-end=" << t << "\nout=\""
      << o.out << "\"\nformat=" << o.format << "\nleft=[" << L.rho << ',' << L.v << ',' << L.Z
      << "]\nright=[" << R.rho << ',' << R.v << ',' << R.Z << "]\n\n[result]\nv_mid=" << fan.v_mid
      << "\nZ_mid=" << fan.Z_mid << "\nrho_mid_left=" << fan.rho_mid_left
      << "\nrho_mid_right=" << fan.rho_mid_right << '\n';
    write_manifest(dir, m.str());
    return 0;
  } catch (const RiemannError& e) {
    std::cerr << "riemann solver: " << e.what() << "\n";
    return 2;
  }
}

int convergence(const CLI::App& sub, const Options& o) {
  Scenario base = scenario_from(sub, o, ScenarioKind::Smooth1d);
  if (base.config.time_order == 1) base.fixed_dt = 5e-6;
  const fs::path dir(o.out);
  fs::create_directories(dir);
  try {
    const ScenarioResult ref = smooth_reference(base, o.reference_nx);
    const ConvergenceReport rep = run_convergence_study(base, o.resolutions, ref);
    std::ofstream csv(dir / "convergence.csv");
    csv << std::setprecision(std::numeric_limits<double>::max_digits10) << "dx,rho,q,Z,rho_star\n";
    std::cout << std::setprecision(4) << std::scientific;
    for (std::size_t k = 0; k < rep.dx.size(); ++k) {
      csv << rep.dx[k];
      std::cout << "dx " << rep.dx[k];
      for (int v = 0; v < 4; ++v) {
        csv << ',' << rep.errors[v][k];
        std::cout << "  " << ConvergenceReport::kNames[v] << ' ' << rep.errors[v][k];
      }
      csv << '\n';
      std::cout << '\n';
    }
    std::cout << std::fixed << std::setprecision(3) << "slopes";
    std::ostringstream slopes;
    slopes << "\n[slopes]\n";
    for (int v = 0; v < 4; ++v) {
      std::cout << "  " << ConvergenceReport::kNames[v] << ' ' << rep.slopes[v];
      slopes << ConvergenceReport::kNames[v] << '=' << rep.slopes[v] << '\n';
    }
    std::cout << '\n';
    std::ostringstream params;
    params << scenario_section("convergence", base, o.format, o.out) << "reference-nx=" << o.reference_nx
           << "\nresolutions=[";
    for (std::size_t k = 0; k < o.resolutions.size(); ++k) params << (k ? "," : "") << o.resolutions[k];
    params << "]\n";
    write_manifest(dir, params.str() + slopes.str());
    return 0;
  } catch (const ScenarioError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic-preserving solvers for Euler flows with variable congestion"};
  app.set_config("--config", "", "INI file with option values (flags override it)");
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  Options o;

  auto* riemann = app.add_subcommand("riemann", "1D Riemann problem with the selected scheme");
  add_common(riemann, o);
  auto* exact = app.add_subcommand("exact-riemann", "exact solution of a 1D Riemann problem");
  exact->add_option("--eps", o.eps)->check(CLI::PositiveNumber);
  exact->add_option("--alpha", o.alpha)->check(CLI::PositiveNumber);
  exact->add_option("--gamma", o.gamma);
  exact->add_option("--nx", o.nx, "sample points")->check(CLI::PositiveNumber);
  exact->add_option("--t-end", o.t_end, "sampling time")->check(CLI::PositiveNumber);
  exact->add_option("--out", o.out);
  exact->add_option("--format", o.format)->check(CLI::IsMember({"csv", "vtk"}));
  exact->add_option("--left", o.left, "rho v Z")->expected(3);
  exact->add_option("--right", o.right, "rho v Z")->expected(3);
  auto* conv = app.add_subcommand("convergence", "grid refinement study on smooth periodic data");
  add_common(conv, o);
  conv->add_option("--reference-nx", o.reference_nx, "cells of the reference run")->check(CLI::PositiveNumber);
  conv->add_option("--resolutions", o.resolutions, "cell counts of the studied runs")->expected(3, 16);
  auto* collide = app.add_subcommand("collide2d", "collision of four groups");
  add_common(collide, o);
  collide->add_option("--case", o.collide_case, "congestion density profile")->check(CLI::IsMember({1, 2, 3}));
  auto* evac = app.add_subcommand("evacuate", "room evacuation through an exit");
  add_common(evac, o);
  evac->add_option("--beta", o.beta, "relaxation time")->check(CLI::PositiveNumber);
  evac->add_option("--seed", o.seed, "seed of the random profile");
  evac->add_option("--profile", o.profile, "constant, linear, step or random")
      ->check(CLI::IsMember({"constant", "linear", "step", "random"}));
  evac->add_option("--rho-star", o.rho_star, "value of the constant profile")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (riemann->parsed()) return run_and_write("riemann", o, scenario_from(*riemann, o, ScenarioKind::Riemann1d));
    if (exact->parsed()) return exact_riemann(o);
    if (conv->parsed()) return convergence(*conv, o);
    if (collide->parsed()) {
      Options co = o;
      if (!collide->count("--eps")) co.eps = 1e-4;
      return run_and_write("collide2d", co, scenario_from(*collide, co, ScenarioKind::Collide2d));
    }
    if (evac->parsed()) {
      Options eo = o;
      if (eo.scheme == "zq" && !evac->count("--scheme")) eo.scheme = "sl";
      if (!evac->count("--eps")) eo.eps = 1e-4;
      return run_and_write("evacuate", eo, scenario_from(*evac, eo, ScenarioKind::Evacuate2d));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
