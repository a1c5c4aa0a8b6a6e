#pragma once

// One implicit-explicit stage shared by the first- and second-order schemes.
//
//   q_new = q_tilde - h theta grad pi_new
//   q_tilde = q_base - h [div G(explicit) + (1 - theta) grad pi_base]
//   mass flux m = mu q_new + (1 - mu) q_base
//
// (mu, theta) = (1, 1) is implicit Euler, (1/2, 1/2) the Crank-Nicolson step.

#include "congest/elliptic.hpp"
#include "congest/fluxes.hpp"
#include "congest/scheme_zq.hpp"

namespace congest::detail {

struct StageSpec {
  double h = 0.0;
  double mu = 1.0;
  double theta = 1.0;
};

struct StageResult {
  GridState state;
  NewtonReport report;
  double max_speed = 0.0;
};

/// Conservative stage: elliptic solve in pi with the stride-2 operator,
/// then q and rho. `weight` supplies the Z / rho coefficients.
StageResult zq_stage(const Grid& grid, const SchemeConfig& cfg, const GridState& base,
                     const GridState& explicit_state, const GridState& weight, StageSpec spec);

/// (rho, q) stage with rho_star frozen: elliptic solve in pi with the
/// compact Laplacian, rho from conservative face fluxes. The Z fields of
/// `base` and `explicit_state` must equal rho / rho_star.
StageResult sl_stage(const Grid& grid, const SchemeConfig& cfg, const GridState& base,
                     const GridState& explicit_state, const Field& rho_star, StageSpec spec);

/// pi_eps(Z) with Z capped below the singularity, as a Newton starting point.
Field pressure_guess(const Field& z, const PressureLawd& law);

}  // namespace congest::detail
