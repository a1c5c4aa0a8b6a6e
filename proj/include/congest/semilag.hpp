#pragma once

// Semi-Lagrangian transport of a cell-centred scalar: backtrack the
// characteristic foot, then interpolate with a 2r+2 point Lagrange stencil.

#include "congest/grid.hpp"

#include <array>

namespace congest {

struct SemiLagConfig {
  /// Stencil half-width: 0 is linear (2 points), 1 is cubic (4 points).
  int r = 1;
  /// 1: foot x - v dt. 2: adds (dt^2 / 2) (v . grad) v with upwind differences.
  int time_order = 1;
};

/// Lagrange weights for nodes at offsets -r..r+1 from the base node, at
/// fractional position s in [0, 1).
std::array<double, 4> lagrange_weights(double s, int r);

/// Interpolates cell-centred `values` at position x (1D) or (x, y) (2D).
/// Positions outside the domain wrap on periodic axes and are clamped to the
/// boundary otherwise; ghost nodes follow the rho_star boundary rule.
double lagrange_interpolate(const Field& values, double x, const Grid& grid, int r);
double lagrange_interpolate(const Field& values, double x, double y, const Grid& grid, int r);

/// Feet of the characteristics through every cell centre, one array per axis
/// (second empty in 1D).
std::array<Field, 2> backtrack_feet(const std::array<Field, 2>& velocity, double dt,
                                    const Grid& grid, int time_order);

Field semilag_advect(const Field& rho_star, const std::array<Field, 2>& velocity, double dt,
                     const Grid& grid, const SemiLagConfig& cfg);

}  // namespace congest
