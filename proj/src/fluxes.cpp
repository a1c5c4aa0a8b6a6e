#include "congest/fluxes.hpp"

namespace congest {

double max_char_speed(const FaceSideState& left, const FaceSideState& right,
                      const PressureLawd& law) {
  double c = 0.0;
  for (const FaceSideState* s : {&left, &right}) {
    const auto lam = eigenvalues(s->rho, s->q_normal, std::max(s->Z, 0.0), law, false);
    c = std::max({c, std::abs(lam[0]), std::abs(lam[2])});
  }
  return c;
}

MusclValues muscl_reconstruct(const PaddedField& w, const Grid& grid, int axis, int space_order) {
  if (space_order == 2 && w.width() < 2) {
    throw std::invalid_argument("muscl_reconstruct: ghost width must be at least 2");
  }
  MusclValues out{PaddedField(grid, w.width()), PaddedField(grid, w.width())};
  const int n = grid.extent(axis);
  const int nt = grid.dim == 2 ? grid.extent(1 - axis) : 1;
  for (int t = 0; t < nt; ++t) {
    for (int k = -1; k <= n; ++k) {
      const int i = axis == 0 ? k : t;
      const int j = axis == 0 ? t : k;
      const double c = w(i, j);
      double half_slope = 0.0;
      if (space_order == 2) {
        const double lo = axis == 0 ? w(i - 1, j) : w(i, j - 1);
        const double hi = axis == 0 ? w(i + 1, j) : w(i, j + 1);
        half_slope = 0.5 * minmod(c - lo, hi - c);
      }
      out.at_right_face(i, j) = c + half_slope;
      out.at_left_face(i, j) = c - half_slope;
    }
  }
  return out;
}

ExplicitFluxes explicit_fluxes(const PaddedState& state, const Grid& grid, const PressureLawd& law,
                               int space_order) {
  ExplicitFluxes out;
  for (int axis = 0; axis < grid.dim; ++axis) {
    const int n = grid.extent(axis);
    const int nt = grid.dim == 2 ? grid.extent(1 - axis) : 1;
    const int tangent = 1 - axis;
    const MusclValues rho = muscl_reconstruct(state.rho, grid, axis, space_order);
    const MusclValues qn = muscl_reconstruct(state.q[axis], grid, axis, space_order);
    const MusclValues z = muscl_reconstruct(state.Z, grid, axis, space_order);
    MusclValues qt;
    if (grid.dim == 2) qt = muscl_reconstruct(state.q[tangent], grid, axis, space_order);

    AxisFluxes& a = out.axes[axis];
    a.axis = axis;
    a.faces = n + 1;
    const Eigen::Index count = static_cast<Eigen::Index>(a.faces) * nt;
    a.G[0].resize(count);
    if (grid.dim == 2) a.G[1].resize(count);
    a.D_rho.resize(count);
    a.D_Z.resize(count);
    a.speed.resize(count);

    for (int t = 0; t < nt; ++t) {
      for (int f = 0; f <= n; ++f) {
        // Left cell f-1, right cell f.
        const int li = axis == 0 ? f - 1 : t, lj = axis == 0 ? t : f - 1;
        const int ri = axis == 0 ? f : t, rj = axis == 0 ? t : f;
        FaceSideState L{rho.at_right_face(li, lj), qn.at_right_face(li, lj), 0.0,
                        z.at_right_face(li, lj)};
        FaceSideState R{rho.at_left_face(ri, rj), qn.at_left_face(ri, rj), 0.0,
                        z.at_left_face(ri, rj)};
        if (grid.dim == 2) {
          L.q_tangent = qt.at_right_face(li, lj);
          R.q_tangent = qt.at_left_face(ri, rj);
        }
        const double c = max_char_speed(L, R, law);
        const Eigen::Index idx = a.at(f, t);
        a.speed[idx] = c;
        a.D_rho[idx] = rusanov_diffusion(L.rho, R.rho, c);
        a.D_Z[idx] = rusanov_diffusion(L.Z, R.Z, c);
        const double pl = background_pressure(std::max(L.Z, 0.0), law);
        const double pr = background_pressure(std::max(R.Z, 0.0), law);
        const double normal = 0.5 * (L.q_normal * L.q_normal / L.rho + pl +
                                     R.q_normal * R.q_normal / R.rho + pr) -
                              rusanov_diffusion(L.q_normal, R.q_normal, c);
        a.G[axis][idx] = normal;
        if (grid.dim == 2) {
          a.G[tangent][idx] = 0.5 * (L.q_normal * L.q_tangent / L.rho +
                                     R.q_normal * R.q_tangent / R.rho) -
                              rusanov_diffusion(L.q_tangent, R.q_tangent, c);
        }
        out.max_speed = std::max(out.max_speed, c);
      }
    }
  }
  return out;
}

Field centred_gradient(const PaddedField& u, const Grid& grid, int axis) {
  Field out(grid.cells());
  const double inv = 0.5 / grid.spacing(axis);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double hi = axis == 0 ? u(i + 1, j) : u(i, j + 1);
      const double lo = axis == 0 ? u(i - 1, j) : u(i, j - 1);
      out[grid.index(i, j)] = (hi - lo) * inv;
    }
  }
  return out;
}

Field centred_divergence(const std::array<PaddedField, 2>& u, const Grid& grid) {
  Field out = centred_gradient(u[0], grid, 0);
  if (grid.dim == 2) out += centred_gradient(u[1], grid, 1);
  return out;
}

}  // namespace congest
