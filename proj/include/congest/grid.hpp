#pragma once

// Uniform 1D/2D cell-centred grids on [0,1] or [0,1]^2, the state stored on
// them, and ghost-layer handling for the boundary rules used by the schemes.

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace congest {

/// Cell-centred scalar field, flat and row-major: (i, j) -> j * nx + i.
using Field = Eigen::ArrayXd;

/// Densities below this value are clamped after every step.
inline constexpr double kDensityFloor = 1e-10;

enum class BoundaryKind { Periodic, Dirichlet, Wall, OutflowWindow };

enum class Side : int { XLow = 0, XHigh = 1, YLow = 2, YHigh = 3 };

/// Conserved variables imposed outside a Dirichlet side.
struct ExteriorState {
  double rho = 1.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double Z = 0.5;

  double rho_star() const { return rho / Z; }
};

struct BoundarySide {
  BoundaryKind kind = BoundaryKind::Periodic;
  ExteriorState exterior{};
  /// Tangential interval on which an OutflowWindow side is zero-gradient;
  /// the rest of the side is a wall.
  double window_lo = 0.0;
  double window_hi = 0.0;

  static BoundarySide periodic() { return {}; }
  static BoundarySide wall() { return {BoundaryKind::Wall, {}, 0.0, 0.0}; }
  static BoundarySide dirichlet(const ExteriorState& s) { return {BoundaryKind::Dirichlet, s, 0.0, 0.0}; }
  static BoundarySide outflow_window(double lo, double hi) {
    return {BoundaryKind::OutflowWindow, {}, lo, hi};
  }
};

struct Grid {
  int dim = 1;
  int nx = 1;
  int ny = 1;
  double dx = 1.0;
  double dy = 1.0;
  std::array<BoundarySide, 4> sides{};

  /// [0,1] split into nx cells.
  static Grid line(int nx, BoundarySide lo = BoundarySide::periodic(),
                   BoundarySide hi = BoundarySide::periodic());
  /// [0,1]^2 split into nx * ny cells; sides ordered XLow, XHigh, YLow, YHigh.
  static Grid square(int nx, int ny, const std::array<BoundarySide, 4>& sides);

  int cells() const { return nx * ny; }
  int extent(int axis) const { return axis == 0 ? nx : ny; }
  double spacing(int axis) const { return axis == 0 ? dx : dy; }
  double cell_volume() const { return dim == 1 ? dx : dx * dy; }
  double x_center(int i) const { return (i + 0.5) * dx; }
  double y_center(int j) const { return (j + 0.5) * dy; }
  int index(int i, int j = 0) const { return j * nx + i; }
  const BoundarySide& side(Side s) const { return sides[static_cast<int>(s)]; }
  bool periodic(int axis) const {
    return sides[2 * axis].kind == BoundaryKind::Periodic;
  }

  /// Throws std::invalid_argument on an inconsistent description.
  void validate() const;
};

/// Fields of the congested Euler system on a grid. Both Z and rho_star are
/// stored; the active scheme decides which is primary and refreshes the other.
struct GridState {
  Field rho;
  std::array<Field, 2> q;  // q[1] is empty in 1D
  Field Z;
  Field rho_star;
  double time = 0.0;

  static GridState zeros(const Grid& grid);

  void refresh_congestion_density() { rho_star = rho / Z; }
  void refresh_fraction() { Z = rho / rho_star; }
};

/// Field extended by `width` ghost layers on every non-degenerate axis.
class PaddedField {
 public:
  PaddedField() = default;
  PaddedField(const Grid& grid, int width);

  double& operator()(int i, int j = 0) { return data_[offset(i, j)]; }
  double operator()(int i, int j = 0) const { return data_[offset(i, j)]; }

  int width() const { return width_; }
  int width_y() const { return width_y_; }
  Field interior() const;
  const Field& raw() const { return data_; }
  /// Same layout for fields built on the same grid and width.
  Field& raw() { return data_; }

 private:
  std::ptrdiff_t offset(int i, int j) const {
    return static_cast<std::ptrdiff_t>(j + width_y_) * stride_ + (i + width_);
  }

  int nx_ = 0;
  int ny_ = 0;
  int width_ = 0;
  int width_y_ = 0;
  std::ptrdiff_t stride_ = 0;
  Field data_;
};

/// How ghost values of one field are produced from the boundary descriptors.
struct GhostRule {
  /// Axis whose walls negate the field (normal momentum), or -1.
  int flip_axis = -1;
  /// Ghost value on Dirichlet sides, indexed by Side.
  std::array<double, 4> dirichlet{};
};

/// Rule for a quantity whose Dirichlet value is computed from the exterior
/// state of each side.
GhostRule ghost_rule(const Grid& grid, const std::function<double(const ExteriorState&)>& exterior,
                     int flip_axis = -1);

enum class Quantity { Density, MomentumX, MomentumY, Fraction, CongestionDensity };
GhostRule ghost_rule(const Grid& grid, Quantity quantity);

/// Where the ghost at index `k` (outside [0, n)) along `axis` takes its
/// value from, for transverse index `t`.
struct GhostSource {
  bool dirichlet = false;
  int side = 0;     // Side index, meaningful for Dirichlet
  int source = 0;   // interior index along `axis` otherwise
  bool mirrored = false;  // true for wall reflection (normal components flip)
};
GhostSource ghost_source(const Grid& grid, int axis, int k, int t);

/// Copies `field` into a padded array and fills the ghosts. Corners in 2D are
/// filled by the x-side rule first, then the y-side rule.
PaddedField fill_ghosts(const Field& field, const Grid& grid, int width, const GhostRule& rule);

struct PaddedState {
  PaddedField rho;
  std::array<PaddedField, 2> q;
  PaddedField Z;
  PaddedField rho_star;
};

PaddedState fill_ghosts(const GridState& state, const Grid& grid, int width);

double total_mass(const GridState& state, const Grid& grid);

/// Sum |a - b| weighted by the cell volume.
double l1_error(const Field& a, const Field& b, const Grid& grid);

/// Clamps rho to kDensityFloor; returns the number of clamped cells.
std::size_t apply_density_floor(GridState& state);

}  // namespace congest
