#include "congest/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace congest {

namespace {

template <typename E>
struct Named {
  E value;
  const char* name;
};

constexpr Named<ScenarioKind> kKinds[] = {{ScenarioKind::Riemann1d, "riemann1d"},
                                          {ScenarioKind::Smooth1d, "smooth1d"},
                                          {ScenarioKind::Collide2d, "collide2d"},
                                          {ScenarioKind::Evacuate2d, "evacuate2d"}};
constexpr Named<SchemeKind> kSchemes[] = {{SchemeKind::Zq, "zq"}, {SchemeKind::Sl, "sl"}};
constexpr Named<EvacuationProfile> kProfiles[] = {{EvacuationProfile::Constant, "constant"},
                                                  {EvacuationProfile::Linear, "linear"},
                                                  {EvacuationProfile::Step, "step"},
                                                  {EvacuationProfile::Random, "random"}};

template <typename E, std::size_t N>
std::string name_of(const Named<E> (&table)[N], E v) {
  for (const auto& n : table)
    if (n.value == v) return n.name;
  return "unknown";
}

template <typename E, std::size_t N>
E parse_named(const Named<E> (&table)[N], const std::string& s, const char* what) {
  for (const auto& n : table)
    if (s == n.name) return n.value;
  throw std::invalid_argument(std::string("unknown ") + what + ": " + s);
}

// Riemann data: rho, q, rho_star on each side of x = 0.5.
constexpr double kRiemannRho = 0.7;
constexpr double kRiemannQ = 0.8;
constexpr double kRiemannRhoStarLeft = 1.2;
constexpr double kRiemannRhoStarRight = 1.0;

double gaussian_bump(double x) { return std::exp(-(x - 0.5) * (x - 0.5) / 0.01); }

struct Square {
  double xc, yc;
  double qx, qy;
  double rho_star_case2;
};

// Centres, inward momentum direction and the second-case congestion density.
constexpr Square kSquares[] = {{0.2, 0.5, 1.0, 0.0, 0.8},
                               {0.5, 0.2, 0.0, 1.0, 1.2},
                               {0.8, 0.5, -1.0, 0.0, 0.8},
                               {0.5, 0.8, 0.0, -1.0, 1.2}};
constexpr double kSquareSide = 0.2;

bool inside(const Square& s, double x, double y) {
  return std::abs(x - s.xc) < 0.5 * kSquareSide && std::abs(y - s.yc) < 0.5 * kSquareSide;
}

}  // namespace

std::string to_string(ScenarioKind k) { return name_of(kKinds, k); }
std::string to_string(SchemeKind k) { return name_of(kSchemes, k); }
std::string to_string(EvacuationProfile p) { return name_of(kProfiles, p); }
ScenarioKind parse_scenario_kind(const std::string& s) { return parse_named(kKinds, s, "scenario"); }
SchemeKind parse_scheme_kind(const std::string& s) { return parse_named(kSchemes, s, "scheme"); }
EvacuationProfile parse_evacuation_profile(const std::string& s) {
  return parse_named(kProfiles, s, "evacuation profile");
}

void Scenario::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
  };
  if (nx < 4) throw std::invalid_argument("nx must be at least 4");
  const bool two_d = kind == ScenarioKind::Collide2d || kind == ScenarioKind::Evacuate2d;
  if (two_d && ny < 4) throw std::invalid_argument("ny must be at least 4");
  positive(t_end, "t_end");
  positive(config.cfl_factor, "cfl factor");
  if (fixed_dt < 0.0) throw std::invalid_argument("fixed dt must be non-negative");
  if (frame_interval < 0.0) throw std::invalid_argument("frame interval must be non-negative");
  if (config.space_order != 1 && config.space_order != 2)
    throw std::invalid_argument("space order must be 1 or 2");
  if (config.time_order != 1 && config.time_order != 2)
    throw std::invalid_argument("time order must be 1 or 2");
  if (semilag.r != 0 && semilag.r != 1) throw std::invalid_argument("semi-Lagrangian r must be 0 or 1");
  if (collide_case < 1 || collide_case > 3) throw std::invalid_argument("collision case must be 1, 2 or 3");
  positive(square_density, "square density");
  positive(background_density, "background density");
  positive(rho_star_constant, "rho_star constant");
  positive(initial_density, "initial density");
  positive(beta, "beta");
  if (!(exit_lo < exit_hi)) throw std::invalid_argument("exit interval is empty");
  PressureLawd check(config.law.epsilon, config.law.alpha, config.law.gamma);
  (void)check;
}

Scenario default_scenario(ScenarioKind kind) {
  Scenario s;
  s.kind = kind;
  switch (kind) {
    case ScenarioKind::Riemann1d:
      s.nx = 1000;
      s.t_end = 0.1;
      s.config.space_order = 2;
      break;
    case ScenarioKind::Smooth1d:
      s.nx = 1000;
      s.t_end = 0.05;
      break;
    case ScenarioKind::Collide2d:
      s.nx = s.ny = 128;
      s.t_end = 0.15;
      s.config.law = PressureLawd(1e-4, 2.0, 2.0);
      s.scheme = SchemeKind::Zq;
      break;
    case ScenarioKind::Evacuate2d:
      s.nx = s.ny = 128;
      s.t_end = 1.0;
      s.config.law = PressureLawd(1e-4, 2.0, 2.0);
      s.scheme = SchemeKind::Sl;
      break;
  }
  return s;
}

Grid make_grid(const Scenario& s) {
  switch (s.kind) {
    case ScenarioKind::Riemann1d: {
      ExteriorState left{kRiemannRho, kRiemannQ, 0.0, kRiemannRho / kRiemannRhoStarLeft};
      ExteriorState right{kRiemannRho, -kRiemannQ, 0.0, kRiemannRho / kRiemannRhoStarRight};
      return Grid::line(s.nx, BoundarySide::dirichlet(left), BoundarySide::dirichlet(right));
    }
    case ScenarioKind::Smooth1d:
      return Grid::line(s.nx);
    case ScenarioKind::Collide2d:
      return Grid::square(s.nx, s.ny, {BoundarySide::periodic(), BoundarySide::periodic(),
                                       BoundarySide::periodic(), BoundarySide::periodic()});
    case ScenarioKind::Evacuate2d:
      return Grid::square(s.nx, s.ny, {BoundarySide::wall(), BoundarySide::wall(),
                                       BoundarySide::outflow_window(s.exit_lo, s.exit_hi),
                                       BoundarySide::wall()});
  }
  throw std::invalid_argument("make_grid: unknown scenario");
}

GridState build_initial_state(const Scenario& s, const Grid& grid) {
  GridState st = GridState::zeros(grid);
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> preference(0.9, 1.1);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int c = grid.index(i, j);
      const double x = grid.x_center(i);
      const double y = grid.y_center(j);
      switch (s.kind) {
        case ScenarioKind::Riemann1d: {
          const bool left = x <= 0.5;
          st.rho[c] = kRiemannRho;
          st.q[0][c] = left ? kRiemannQ : -kRiemannQ;
          st.rho_star[c] = left ? kRiemannRhoStarLeft : kRiemannRhoStarRight;
          break;
        }
        case ScenarioKind::Smooth1d:
          st.rho[c] = 0.6 + 0.2 * gaussian_bump(x);
          st.q[0][c] = gaussian_bump(x);
          st.rho_star[c] = 1.2 + 0.2 * (1.0 - std::cos(8.0 * std::numbers::pi * (x - 0.5)));
          break;
        case ScenarioKind::Collide2d: {
          st.rho[c] = s.background_density;
          st.rho_star[c] = 1.0;
          for (const Square& sq : kSquares) {
            if (!inside(sq, x, y)) continue;
            st.rho[c] = s.square_density;
            st.q[0][c] = s.square_momentum * sq.qx;
            st.q[1][c] = s.square_momentum * sq.qy;
            if (s.collide_case == 2) st.rho_star[c] = sq.rho_star_case2;
          }
          if (s.collide_case == 3) {
            const double pi = std::numbers::pi;
            st.rho_star[c] = 1.0 + 0.05 * (std::cos(10 * pi * x) + std::cos(24 * pi * x)) *
                                       (std::cos(6 * pi * y) + std::cos(34 * pi * y));
          }
          break;
        }
        case ScenarioKind::Evacuate2d:
          st.rho[c] = s.initial_density;
          switch (s.profile) {
            case EvacuationProfile::Constant: st.rho_star[c] = s.rho_star_constant; break;
            case EvacuationProfile::Linear: st.rho_star[c] = 1.1 - 0.2 * y; break;
            case EvacuationProfile::Step: st.rho_star[c] = x > 0.5 ? 1.1 : 0.9; break;
            case EvacuationProfile::Random: st.rho_star[c] = preference(rng); break;
          }
          break;
      }
    }
  }
  st.refresh_fraction();
  if ((st.Z >= 1.0).any()) throw std::invalid_argument("initial density exceeds rho_star");
  return st;
}

GridState advance(const Scenario& s, const GridState& state, const Grid& grid, double dt,
                  StepDiagnostics* diag) {
  if (s.scheme == SchemeKind::Zq) return step_zq(state, grid, s.config, dt, diag);
  if (s.kind == ScenarioKind::Evacuate2d) {
    const RelaxationConfig rc = RelaxationConfig::toward(0.5 * (s.exit_lo + s.exit_hi), 0.0, s.beta);
    return step_sl(state, grid, s.config, s.semilag, dt, diag, &rc);
  }
  return step_sl(state, grid, s.config, s.semilag, dt, diag);
}

ScenarioResult run_scenario(const Scenario& s, const StepObserver& observer) {
  s.validate();
  ScenarioResult res;
  res.grid = make_grid(s);
  const Grid& grid = res.grid;
  GridState state = build_initial_state(s, grid);

  res.times.push_back(state.time);
  res.mass.push_back(total_mass(state, grid));
  res.max_speed.push_back(max_background_speed(state, grid, s.config.law));
  res.max_fraction = state.Z.maxCoeff();
  res.frames.push_back({0, state});
  if (observer) observer(state, grid, 0);
  double next_frame = s.frame_interval > 0.0 ? s.frame_interval : s.t_end;

  const double eps_t = 1e-12 * s.t_end;
  int step = 0;
  while (state.time < s.t_end - eps_t) {
    double dt = s.fixed_dt > 0.0 ? s.fixed_dt : choose_time_step(state, grid, s.config);
    if (state.time + dt > s.t_end - 1e-9 * dt) dt = s.t_end - state.time;
    ++step;
    StepDiagnostics diag;
    const double mass_before = res.mass.back();
    try {
      const double t0 = state.time;
      state = advance(s, state, grid, dt, &diag);
      state.time = t0 + dt;
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("step ") + std::to_string(step) + ": " + e.what(), step);
    }
    if (!state.rho.allFinite() || !state.q[0].allFinite() || !state.Z.allFinite()) {
      throw ScenarioError("step " + std::to_string(step) + ": non-finite values", step);
    }
    res.steps = step;
    res.times.push_back(state.time);
    res.mass.push_back(total_mass(state, grid));
    res.max_speed.push_back(diag.max_speed);
    res.newton_iterations.push_back(diag.newton_iterations);
    res.max_newton_iterations = std::max(res.max_newton_iterations, diag.max_newton_iterations);
    res.implicit_switches += diag.switched_to_implicit ? 1 : 0;
    res.density_clamps += diag.density_clamps;
    res.max_fraction = std::max(res.max_fraction, state.Z.maxCoeff());
    res.max_mass_drift =
        std::max(res.max_mass_drift, std::abs(res.mass.back() - mass_before) / mass_before);
    if (observer) observer(state, grid, step);
    const bool last = state.time >= s.t_end - eps_t;
    if (state.time >= next_frame - eps_t || last) {
      res.frames.push_back({step, state});
      while (next_frame <= state.time + eps_t) next_frame += s.frame_interval > 0 ? s.frame_interval : s.t_end;
    }
  }
  if (res.frames.back().step != step) res.frames.push_back({step, state});
  res.final_state = std::move(state);
  return res;
}

Field sample_periodic(const Field& fine, const Grid& fine_grid, const Grid& coarse) {
  const int nf = fine_grid.nx;
  Field out(coarse.nx);
  for (int i = 0; i < coarse.nx; ++i) {
    const double xi = coarse.x_center(i) / fine_grid.dx - 0.5;
    const double base = std::floor(xi);
    const double s = xi - base;
    const int k = ((static_cast<int>(base) % nf) + nf) % nf;
    out[i] = (1.0 - s) * fine[k] + s * fine[(k + 1) % nf];
  }
  return out;
}

double fitted_slope(const std::vector<double>& dx, const std::vector<double>& err) {
  if (dx.size() != err.size() || dx.size() < 2) throw std::invalid_argument("fitted_slope: need >= 2 points");
  const double n = static_cast<double>(dx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < dx.size(); ++k) {
    const double lx = std::log(dx[k]), ly = std::log(err[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScenarioResult smooth_reference(const Scenario& base, int n) {
  Scenario ref = base;
  ref.kind = ScenarioKind::Smooth1d;
  ref.scheme = SchemeKind::Zq;
  ref.config.space_order = 2;
  ref.config.time_order = 2;
  ref.nx = n;
  ref.fixed_dt = 0.0;
  ref.config.adaptive_dt = false;
  ref.config.cfl_factor = 0.1;
  ref.frame_interval = 0.0;
  return run_scenario(ref);
}

ConvergenceReport run_convergence_study(const Scenario& base, const std::vector<int>& resolutions,
                                        const ScenarioResult& reference) {
  if (resolutions.size() < 3) throw std::invalid_argument("convergence study needs >= 3 resolutions");
  ConvergenceReport rep;
  const GridState& ref = reference.final_state;
  for (int n : resolutions) {
    Scenario s = base;
    s.nx = n;
    const ScenarioResult r = run_scenario(s);
    const Grid& g = r.grid;
    rep.dx.push_back(g.dx);
    const std::array<const Field*, 4> mine{&r.final_state.rho, &r.final_state.q[0], &r.final_state.Z,
                                           &r.final_state.rho_star};
    const std::array<const Field*, 4> theirs{&ref.rho, &ref.q[0], &ref.Z, &ref.rho_star};
    for (int v = 0; v < 4; ++v) {
      rep.errors[v].push_back(l1_error(*mine[v], sample_periodic(*theirs[v], reference.grid, g), g));
    }
  }
  for (int v = 0; v < 4; ++v) rep.slopes[v] = fitted_slope(rep.dx, rep.errors[v]);
  return rep;
}

}  // namespace congest
