#pragma once

// Non-conservative variant: (rho, q) advanced by the finite-volume IMEX
// stage, rho_star transported by a semi-Lagrangian scheme.

#include "congest/scheme_zq.hpp"
#include "congest/semilag.hpp"

#include <array>
#include <functional>

namespace congest {

/// Implicit relaxation of the momentum toward rho * w.
struct RelaxationConfig {
  double beta = 0.1;
  /// Desired velocity at (x, y).
  std::function<std::array<double, 2>(double, double)> desired;

  /// Unit field pointing at (x0, y0); zero at that point.
  static RelaxationConfig toward(double x0, double y0, double beta);
};

/// One step of the first-order scheme: pressure implicit, rho_star advected
/// with the updated velocity. Z is refreshed as rho / rho_star and may exceed
/// one transiently, since rho_star is not advected conservatively.
GridState step_sl_first_order(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                              const SemiLagConfig& slcfg, double dt,
                              StepDiagnostics* diag = nullptr,
                              const RelaxationConfig* relax = nullptr);

/// Strang splitting: half advection of rho_star with v^n, RK2/Crank-Nicolson
/// on (rho, q), half advection with v^{n+1}.
GridState step_sl_second_order(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                               const SemiLagConfig& slcfg, double dt,
                               StepDiagnostics* diag = nullptr,
                               const RelaxationConfig* relax = nullptr);

/// Dispatches on cfg.time_order.
GridState step_sl(const GridState& state, const Grid& grid, const SchemeConfig& cfg,
                  const SemiLagConfig& slcfg, double dt, StepDiagnostics* diag = nullptr,
                  const RelaxationConfig* relax = nullptr);

/// q = (q_star + (dt / beta) rho w) / (1 + dt / beta) cell by cell.
std::array<Field, 2> relaxation_update(const std::array<Field, 2>& q_star, const Field& rho_next,
                                       const Grid& grid, const RelaxationConfig& rc, double dt);

}  // namespace congest
