#pragma once

// Conservative IMEX scheme on (rho, q, Z): explicit Rusanov transport,
// implicit congestion pressure obtained from an elliptic solve in pi.

#include "congest/elliptic.hpp"
#include "congest/eos.hpp"
#include "congest/grid.hpp"

#include <cstddef>

namespace congest {

struct SchemeConfig {
  /// 1: piecewise constant; 2: MUSCL with minmod slopes for explicit terms.
  int space_order = 1;
  /// 1: implicit Euler for the pressure; 2: RK2 / Crank-Nicolson.
  int time_order = 1;
  /// dt = cfl_factor * dx unless adaptive_dt is set.
  double cfl_factor = 0.1;
  /// dt = cfl_factor * min(dx) / max |lambda^0| instead.
  bool adaptive_dt = false;
  PressureLawd law{};
  /// Second order in time: redo a step with a fully implicit pressure when
  /// the Crank-Nicolson solve asks for a negative pressure.
  bool pressure_switch = true;
  NewtonOptions newton{};
};

struct StepDiagnostics {
  int newton_iterations = 0;  // summed over the elliptic solves of the step
  int max_newton_iterations = 0;
  bool switched_to_implicit = false;
  std::size_t density_clamps = 0;
  double max_speed = 0.0;  // largest face speed of the explicit fluxes
};

/// Time step from the configuration: fixed cfl_factor * dx, or the adaptive
/// bound computed from the background wave speeds of `state`.
double choose_time_step(const GridState& state, const Grid& grid, const SchemeConfig& cfg);

/// Largest |lambda^0| over all cells.
double max_background_speed(const GridState& state, const Grid& grid, const PressureLawd& law);

GridState step_first_order(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                           double dt, StepDiagnostics* diag = nullptr);

GridState step_second_order(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                            double dt, StepDiagnostics* diag = nullptr);

/// Dispatches on cfg.time_order.
GridState step_zq(const GridState& state, const Grid& grid, const SchemeConfig& cfg, double dt,
                  StepDiagnostics* diag = nullptr);

}  // namespace congest
