#include "congest/grid.hpp"

#include <string>

namespace congest {

Grid Grid::line(int nx, BoundarySide lo, BoundarySide hi) {
  Grid g;
  g.dim = 1;
  g.nx = nx;
  g.ny = 1;
  g.dx = 1.0 / nx;
  g.dy = 1.0;
  g.sides = {lo, hi, BoundarySide::periodic(), BoundarySide::periodic()};
  g.validate();
  return g;
}

Grid Grid::square(int nx, int ny, const std::array<BoundarySide, 4>& sides) {
  Grid g;
  g.dim = 2;
  g.nx = nx;
  g.ny = ny;
  g.dx = 1.0 / nx;
  g.dy = 1.0 / ny;
  g.sides = sides;
  g.validate();
  return g;
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid needs at least one cell per axis");
  if (dim == 1 && ny != 1) throw std::invalid_argument("1D grid must have ny == 1");
  for (int axis = 0; axis < dim; ++axis) {
    const bool lo = sides[2 * axis].kind == BoundaryKind::Periodic;
    const bool hi = sides[2 * axis + 1].kind == BoundaryKind::Periodic;
    if (lo != hi) throw std::invalid_argument("periodic sides must come in matched pairs");
  }
}

GridState GridState::zeros(const Grid& grid) {
  GridState s;
  const int n = grid.cells();
  s.rho = Field::Zero(n);
  s.q[0] = Field::Zero(n);
  if (grid.dim == 2) s.q[1] = Field::Zero(n);
  s.Z = Field::Zero(n);
  s.rho_star = Field::Zero(n);
  return s;
}

PaddedField::PaddedField(const Grid& grid, int width)
    : nx_(grid.nx),
      ny_(grid.ny),
      width_(width),
      width_y_(grid.dim == 2 ? width : 0),
      stride_(grid.nx + 2 * width),
      data_(Field::Zero(static_cast<Eigen::Index>(grid.nx + 2 * width) *
                        (grid.ny + 2 * (grid.dim == 2 ? width : 0)))) {}

Field PaddedField::interior() const {
  Field out(static_cast<Eigen::Index>(nx_) * ny_);
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) out[j * nx_ + i] = (*this)(i, j);
  return out;
}

GhostRule ghost_rule(const Grid& grid, const std::function<double(const ExteriorState&)>& exterior,
                     int flip_axis) {
  GhostRule rule;
  rule.flip_axis = flip_axis;
  for (int s = 0; s < 4; ++s) {
    if (grid.sides[s].kind == BoundaryKind::Dirichlet) rule.dirichlet[s] = exterior(grid.sides[s].exterior);
  }
  return rule;
}

GhostRule ghost_rule(const Grid& grid, Quantity quantity) {
  switch (quantity) {
    case Quantity::Density:
      return ghost_rule(grid, [](const ExteriorState& e) { return e.rho; });
    case Quantity::MomentumX:
      return ghost_rule(grid, [](const ExteriorState& e) { return e.q1; }, 0);
    case Quantity::MomentumY:
      return ghost_rule(grid, [](const ExteriorState& e) { return e.q2; }, 1);
    case Quantity::Fraction:
      return ghost_rule(grid, [](const ExteriorState& e) { return e.Z; });
    case Quantity::CongestionDensity:
      return ghost_rule(grid, [](const ExteriorState& e) { return e.rho_star(); });
  }
  return {};
}

GhostSource ghost_source(const Grid& grid, int axis, int k, int t) {
  const int n = grid.extent(axis);
  const bool hi = k >= n;
  const int depth = hi ? k - n + 1 : -k;  // 1 for the first ghost layer
  const int side_index = 2 * axis + (hi ? 1 : 0);
  const BoundarySide& side = grid.sides[side_index];
  BoundaryKind kind = side.kind;
  if (kind == BoundaryKind::OutflowWindow) {
    const double tc = axis == 0 ? grid.y_center(t) : grid.x_center(t);
    const bool inside = tc >= side.window_lo && tc <= side.window_hi;
    kind = inside ? BoundaryKind::OutflowWindow : BoundaryKind::Wall;
  }
  GhostSource src;
  src.side = side_index;
  switch (kind) {
    case BoundaryKind::Periodic:
      src.source = ((k % n) + n) % n;
      break;
    case BoundaryKind::Dirichlet:
      src.dirichlet = true;
      break;
    case BoundaryKind::Wall:
      src.source = hi ? n - depth : depth - 1;
      src.mirrored = true;
      break;
    case BoundaryKind::OutflowWindow:
      src.source = hi ? n - 1 : 0;
      break;
  }
  return src;
}

namespace {

// Fills ghosts along one axis for every transverse index in [t_lo, t_hi).
void fill_axis(PaddedField& p, const Grid& grid, int axis, int width, const GhostRule& rule,
               int t_lo, int t_hi) {
  const int n = grid.extent(axis);
  auto at = [&](int k, int t) -> double& { return axis == 0 ? p(k, t) : p(t, k); };
  for (int t = t_lo; t < t_hi; ++t) {
    for (int depth = 1; depth <= width; ++depth) {
      for (int ghost : {-depth, n - 1 + depth}) {
        const GhostSource src = ghost_source(grid, axis, ghost, t);
        double value;
        if (src.dirichlet) {
          value = rule.dirichlet[src.side];
        } else {
          value = at(src.source, t);
          if (src.mirrored && rule.flip_axis == axis) value = -value;
        }
        at(ghost, t) = value;
      }
    }
  }
}

}  // namespace

PaddedField fill_ghosts(const Field& field, const Grid& grid, int width, const GhostRule& rule) {
  if (field.size() != grid.cells()) throw std::invalid_argument("fill_ghosts: field/grid size mismatch");
  if (width < 0 || width > grid.nx || (grid.dim == 2 && width > grid.ny)) {
    throw std::invalid_argument("fill_ghosts: ghost width " + std::to_string(width) +
                                " exceeds the number of cells");
  }
  PaddedField p(grid, width);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) p(i, j) = field[grid.index(i, j)];
  fill_axis(p, grid, 0, width, rule, 0, grid.ny);
  if (grid.dim == 2) fill_axis(p, grid, 1, width, rule, -width, grid.nx + width);
  return p;
}

PaddedState fill_ghosts(const GridState& state, const Grid& grid, int width) {
  PaddedState p;
  p.rho = fill_ghosts(state.rho, grid, width, ghost_rule(grid, Quantity::Density));
  p.q[0] = fill_ghosts(state.q[0], grid, width, ghost_rule(grid, Quantity::MomentumX));
  if (grid.dim == 2) p.q[1] = fill_ghosts(state.q[1], grid, width, ghost_rule(grid, Quantity::MomentumY));
  p.Z = fill_ghosts(state.Z, grid, width, ghost_rule(grid, Quantity::Fraction));
  p.rho_star = fill_ghosts(state.rho_star, grid, width, ghost_rule(grid, Quantity::CongestionDensity));
  return p;
}

double total_mass(const GridState& state, const Grid& grid) {
  return state.rho.sum() * grid.cell_volume();
}

double l1_error(const Field& a, const Field& b, const Grid& grid) {
  if (a.size() != b.size() || a.size() != grid.cells()) {
    throw std::invalid_argument("l1_error: shape mismatch");
  }
  return (a - b).abs().sum() * grid.cell_volume();
}

std::size_t apply_density_floor(GridState& state) {
  std::size_t clamped = 0;
  for (Eigen::Index k = 0; k < state.rho.size(); ++k) {
    if (!(state.rho[k] >= kDensityFloor)) {
      state.rho[k] = kDensityFloor;
      ++clamped;
    }
  }
  return clamped;
}

}  // namespace congest
