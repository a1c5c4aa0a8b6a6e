#include "congest/semilag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace congest {

namespace {

void require_half_width(int r) {
  if (r != 0 && r != 1) throw std::invalid_argument("semi-Lagrangian half-width must be 0 or 1");
}

// Position in index space (cell centres at integers), wrapped or clamped.
double index_coordinate(double x, const Grid& grid, int axis) {
  if (grid.periodic(axis)) {
    x -= std::floor(x);
  } else {
    x = std::clamp(x, 0.0, 1.0);
  }
  return x / grid.spacing(axis) - 0.5;
}

struct Stencil {
  int base = 0;
  std::array<double, 4> w{};
};

Stencil stencil_at(double x, const Grid& grid, int axis, int r) {
  const double xi = index_coordinate(x, grid, axis);
  Stencil s;
  s.base = static_cast<int>(std::floor(xi));
  s.w = lagrange_weights(xi - s.base, r);
  return s;
}

double interpolate_padded(const PaddedField& p, double x, double y, const Grid& grid, int r) {
  const Stencil sx = stencil_at(x, grid, 0, r);
  const int points = 2 * r + 2;
  if (grid.dim == 1) {
    double v = 0.0;
    for (int k = 0; k < points; ++k) v += sx.w[k] * p(sx.base - r + k);
    return v;
  }
  const Stencil sy = stencil_at(y, grid, 1, r);
  double v = 0.0;
  for (int l = 0; l < points; ++l) {
    double row = 0.0;
    for (int k = 0; k < points; ++k) row += sx.w[k] * p(sx.base - r + k, sy.base - r + l);
    v += sy.w[l] * row;
  }
  return v;
}

PaddedField pad_for_interpolation(const Field& values, const Grid& grid, int r) {
  return fill_ghosts(values, grid, r + 1, ghost_rule(grid, Quantity::CongestionDensity));
}

}  // namespace

std::array<double, 4> lagrange_weights(double s, int r) {
  require_half_width(r);
  std::array<double, 4> w{};
  const int points = 2 * r + 2;
  for (int k = 0; k < points; ++k) {
    const double ok = k - r;
    double num = 1.0, den = 1.0;
    for (int m = 0; m < points; ++m) {
      if (m == k) continue;
      const double om = m - r;
      num *= s - om;
      den *= ok - om;
    }
    w[k] = num / den;
  }
  return w;
}

double lagrange_interpolate(const Field& values, double x, const Grid& grid, int r) {
  require_half_width(r);
  if (grid.dim != 1) throw std::invalid_argument("lagrange_interpolate: 1D overload on a 2D grid");
  return interpolate_padded(pad_for_interpolation(values, grid, r), x, 0.0, grid, r);
}

double lagrange_interpolate(const Field& values, double x, double y, const Grid& grid, int r) {
  require_half_width(r);
  if (grid.dim != 2) throw std::invalid_argument("lagrange_interpolate: 2D overload on a 1D grid");
  return interpolate_padded(pad_for_interpolation(values, grid, r), x, y, grid, r);
}

std::array<Field, 2> backtrack_feet(const std::array<Field, 2>& velocity, double dt,
                                    const Grid& grid, int time_order) {
  std::array<PaddedField, 2> v;
  for (int a = 0; a < grid.dim; ++a) {
    v[a] = fill_ghosts(velocity[a], grid, 1,
                       ghost_rule(grid, [a](const ExteriorState& e) {
                         return (a == 0 ? e.q1 : e.q2) / e.rho;
                       }, a));
  }
  std::array<Field, 2> feet;
  for (int a = 0; a < grid.dim; ++a) feet[a].resize(grid.cells());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int c = grid.index(i, j);
      const std::array<double, 2> x{grid.x_center(i), grid.y_center(j)};
      for (int a = 0; a < grid.dim; ++a) {
        double foot = x[a] - v[a](i, j) * dt;
        if (time_order == 2) {
          double accel = 0.0;
          for (int b = 0; b < grid.dim; ++b) {
            const double vb = v[b](i, j);
            const double here = v[a](i, j);
            double d;
            if (vb > 0.0) d = here - (b == 0 ? v[a](i - 1, j) : v[a](i, j - 1));
            else d = (b == 0 ? v[a](i + 1, j) : v[a](i, j + 1)) - here;
            accel += vb * d / grid.spacing(b);
          }
          foot += 0.5 * dt * dt * accel;
        }
        feet[a][c] = foot;
      }
    }
  }
  return feet;
}

Field semilag_advect(const Field& rho_star, const std::array<Field, 2>& velocity, double dt,
                     const Grid& grid, const SemiLagConfig& cfg) {
  require_half_width(cfg.r);
  const PaddedField p = pad_for_interpolation(rho_star, grid, cfg.r);
  const std::array<Field, 2> feet = backtrack_feet(velocity, dt, grid, cfg.time_order);
  Field out(grid.cells());
  for (Eigen::Index c = 0; c < out.size(); ++c) {
    out[c] = interpolate_padded(p, feet[0][c], grid.dim == 2 ? feet[1][c] : 0.0, grid, cfg.r);
  }
  return out;
}

}  // namespace congest
