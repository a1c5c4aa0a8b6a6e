#include "congest/scheme_sl.hpp"

#include "imex_stage.hpp"

#include <algorithm>
#include <cmath>

namespace congest {

namespace {

void record(StepDiagnostics* diag, const detail::StageResult& r) {
  if (!diag) return;
  diag->newton_iterations += r.report.iterations;
  diag->max_newton_iterations = std::max(diag->max_newton_iterations, r.report.iterations);
  diag->max_speed = std::max(diag->max_speed, r.max_speed);
}

std::array<Field, 2> velocity_of(const GridState& s, const Grid& grid) {
  std::array<Field, 2> v;
  for (int a = 0; a < grid.dim; ++a) v[a] = s.q[a] / s.rho;
  return v;
}

GridState with_congestion_density(const GridState& s, const Field& rho_star) {
  GridState out = s;
  out.rho_star = rho_star;
  out.refresh_fraction();
  return out;
}

GridState finish(GridState s, const Grid& grid, const Field& rho_star_old,
                 const SemiLagConfig& slcfg, double advect_dt, StepDiagnostics* diag,
                 const RelaxationConfig* relax, double dt) {
  if (diag) diag->density_clamps += apply_density_floor(s);
  if (relax) s.q = relaxation_update(s.q, s.rho, grid, *relax, dt);
  s.rho_star = semilag_advect(rho_star_old, velocity_of(s, grid), advect_dt, grid, slcfg);
  s.refresh_fraction();
  return s;
}

}  // namespace

RelaxationConfig RelaxationConfig::toward(double x0, double y0, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("relaxation time beta must be positive");
  RelaxationConfig rc;
  rc.beta = beta;
  rc.desired = [x0, y0](double x, double y) -> std::array<double, 2> {
    const double dx = x0 - x, dy = y0 - y;
    const double norm = std::hypot(dx, dy);
    if (norm == 0.0) return {0.0, 0.0};
    return {dx / norm, dy / norm};
  };
  return rc;
}

std::array<Field, 2> relaxation_update(const std::array<Field, 2>& q_star, const Field& rho_next,
                                       const Grid& grid, const RelaxationConfig& rc, double dt) {
  const double k = dt / rc.beta;
  std::array<Field, 2> out = q_star;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int c = grid.index(i, j);
      const auto w = rc.desired(grid.x_center(i), grid.dim == 2 ? grid.y_center(j) : 0.0);
      for (int a = 0; a < grid.dim; ++a) {
        out[a][c] = (q_star[a][c] + k * rho_next[c] * w[a]) / (1.0 + k);
      }
    }
  }
  return out;
}

GridState step_sl_first_order(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                              const SemiLagConfig& slcfg, double dt, StepDiagnostics* diag,
                              const RelaxationConfig* relax) {
  const GridState base = with_congestion_density(state, state.rho_star);
  const auto r = detail::sl_stage(grid, cfg, base, base, base.rho_star, {dt, 1.0, 1.0});
  record(diag, r);
  return finish(r.state, grid, base.rho_star, slcfg, dt, diag, relax, dt);
}

GridState step_sl_second_order(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                               const SemiLagConfig& slcfg, double dt, StepDiagnostics* diag,
                               const RelaxationConfig* relax) {
  const Field rho_star_half = semilag_advect(state.rho_star, velocity_of(state, grid), 0.5 * dt, grid, slcfg);
  const GridState base = with_congestion_density(state, rho_star_half);

  const auto half = detail::sl_stage(grid, cfg, base, base, rho_star_half, {0.5 * dt, 1.0, 1.0});
  record(diag, half);

  // The explicit half of the Crank-Nicolson pressure needs rho^n / rho_star < 1.
  const bool explicit_defined = (base.Z < 1.0 - kSingularGuard).all();
  const double theta = explicit_defined ? 0.5 : 1.0;
  auto full = detail::sl_stage(grid, cfg, base, half.state, rho_star_half, {dt, 0.5, theta});
  record(diag, full);
  bool switched = !explicit_defined;
  if (explicit_defined && cfg.pressure_switch && full.report.negative_request) {
    full = detail::sl_stage(grid, cfg, base, half.state, rho_star_half, {dt, 0.5, 1.0});
    record(diag, full);
    switched = true;
  }
  if (diag && switched) diag->switched_to_implicit = true;
  return finish(full.state, grid, rho_star_half, slcfg, 0.5 * dt, diag, relax, dt);
}

GridState step_sl(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                  const SemiLagConfig& slcfg, double dt, StepDiagnostics* diag,
                  const RelaxationConfig* relax) {
  return cfg.time_order == 2 ? step_sl_second_order(state, grid, cfg, slcfg, dt, diag, relax)
                             : step_sl_first_order(state, grid, cfg, slcfg, dt, diag, relax);
}

}  // namespace congest
