#include "congest/scheme_zq.hpp"

#include "imex_stage.hpp"

#include <algorithm>

namespace congest {

namespace {

void record(StepDiagnostics* diag, const detail::StageResult& r) {
  if (!diag) return;
  diag->newton_iterations += r.report.iterations;
  diag->max_newton_iterations = std::max(diag->max_newton_iterations, r.report.iterations);
  diag->max_speed = std::max(diag->max_speed, r.max_speed);
}

GridState finish(GridState s, StepDiagnostics* diag) {
  const std::size_t clamped = apply_density_floor(s);
  if (clamped) s.refresh_congestion_density();
  if (diag) diag->density_clamps += clamped;
  return s;
}

}  // namespace

double max_background_speed(const GridState& state, const Grid& grid, const PressureLawd& law) {
  double c = 0.0;
  for (Eigen::Index k = 0; k < state.rho.size(); ++k) {
    for (int a = 0; a < grid.dim; ++a) {
      const auto lam = eigenvalues(state.rho[k], state.q[a][k], std::max(state.Z[k], 0.0), law, false);
      c = std::max({c, std::abs(lam[0]), std::abs(lam[2])});
    }
  }
  return c;
}

double choose_time_step(const GridState& state, const Grid& grid, const SchemeConfig& cfg) {
  const double h = grid.dim == 2 ? std::min(grid.dx, grid.dy) : grid.dx;
  if (!cfg.adaptive_dt) return cfg.cfl_factor * h;
  const double c = max_background_speed(state, grid, cfg.law);
  return c > 0.0 ? cfg.cfl_factor * h / c : cfg.cfl_factor * h;
}

GridState step_first_order(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                           double dt, StepDiagnostics* diag) {
  const auto r = detail::zq_stage(grid, cfg, state, state, state, {dt, 1.0, 1.0});
  record(diag, r);
  return finish(r.state, diag);
}

GridState step_second_order(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                            double dt, StepDiagnostics* diag) {
  const auto half = detail::zq_stage(grid, cfg, state, state, state, {0.5 * dt, 1.0, 1.0});
  record(diag, half);
  const GridState& mid = half.state;
  auto full = detail::zq_stage(grid, cfg, state, mid, mid, {dt, 0.5, 0.5});
  record(diag, full);
  if (cfg.pressure_switch && full.report.negative_request) {
    full = detail::zq_stage(grid, cfg, state, mid, mid, {dt, 0.5, 1.0});
    record(diag, full);
    if (diag) diag->switched_to_implicit = true;
  }
  return finish(full.state, diag);
}

GridState step_zq(const GridState& state, const Grid& grid, const SchemeConfig& cfg, double dt,
                  StepDiagnostics* diag) {
  return cfg.time_order == 2 ? step_second_order(state, grid, cfg, dt, diag)
                             : step_first_order(state, grid, cfg, dt, diag);
}

}  // namespace congest
