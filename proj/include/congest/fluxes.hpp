#pragma once

// Explicit finite-volume ingredients shared by both schemes: MUSCL/minmod
// reconstruction, local Lax-Friedrichs (Rusanov) diffusion and the centred
// momentum flux. Implicit pieces (mass flux, fraction flux, pressure
// gradient) are assembled by the schemes themselves.

#include "congest/eos.hpp"
#include "congest/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace congest {

template <typename Scalar>
Scalar minmod(Scalar a, Scalar b) {
  using std::abs;
  const Scalar sa = (a > Scalar(0)) - (a < Scalar(0));
  const Scalar sb = (b > Scalar(0)) - (b < Scalar(0));
  return Scalar(0.5) * (sa + sb) * std::min(abs(a), abs(b));
}

/// Diffusive part of the Rusanov flux for one conserved variable.
template <typename Scalar>
Scalar rusanov_diffusion(Scalar w_left, Scalar w_right, Scalar c) {
  return Scalar(0.5) * c * (w_right - w_left);
}

/// Conserved values of one cell, with the momentum split into the component
/// normal to a face and the tangential one.
struct FaceSideState {
  double rho = 1.0;
  double q_normal = 0.0;
  double q_tangent = 0.0;
  double Z = 0.0;
};

/// Largest |lambda_k| over both sides, using the background pressure only.
double max_char_speed(const FaceSideState& left, const FaceSideState& right,
                      const PressureLawd& law);

/// Values at the two faces of each cell along `axis`: w_i +/- slope_i / 2.
/// Filled for cells -1..n along the axis (interior transverse range).
struct MusclValues {
  PaddedField at_right_face;
  PaddedField at_left_face;
};

/// space_order 1 gives zero slopes. Needs ghost width >= 2.
MusclValues muscl_reconstruct(const PaddedField& w, const Grid& grid, int axis, int space_order);

/// Face-centred quantities along one axis. Face f (0..n) separates cells f-1
/// and f; storage index is t * (n + 1) + f for transverse index t.
struct AxisFluxes {
  int axis = 0;
  int faces = 0;
  /// Momentum flux (centred average of the physical flux minus D_q) for the
  /// two momentum components; G[1] is empty in 1D.
  std::array<Field, 2> G;
  Field D_rho;
  Field D_Z;
  Field speed;

  Eigen::Index at(int f, int t) const { return static_cast<Eigen::Index>(t) * faces + f; }
};

struct ExplicitFluxes {
  std::array<AxisFluxes, 2> axes;
  double max_speed = 0.0;
};

/// Evaluates the explicit fluxes from a ghost-filled state (width >= 2).
/// The pressure inside G is the background pressure of the state's Z.
ExplicitFluxes explicit_fluxes(const PaddedState& state, const Grid& grid, const PressureLawd& law,
                               int space_order);

/// Cell divergence sum_axis (F(i+1) - F(i)) / dx_axis of a face quantity
/// selected by `pick` on every axis.
template <typename Pick>
Field face_divergence(const ExplicitFluxes& fluxes, const Grid& grid, Pick pick) {
  Field out = Field::Zero(grid.cells());
  for (int axis = 0; axis < grid.dim; ++axis) {
    const AxisFluxes& a = fluxes.axes[axis];
    const Field& f = pick(a);
    const double inv = 1.0 / grid.spacing(axis);
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const int k = axis == 0 ? i : j;
        const int t = axis == 0 ? j : i;
        out[grid.index(i, j)] += (f[a.at(k + 1, t)] - f[a.at(k, t)]) * inv;
      }
    }
  }
  return out;
}

/// Centred difference (u(i+1) - u(i-1)) / (2 dx_axis) of a padded field.
Field centred_gradient(const PaddedField& u, const Grid& grid, int axis);

/// Centred divergence sum_axis (u_a(i+1) - u_a(i-1)) / (2 dx_a) of a padded vector.
Field centred_divergence(const std::array<PaddedField, 2>& u, const Grid& grid);

}  // namespace congest
