#pragma once

// Exact solution of the 1D Riemann problem for the (rho, q, Z) system with
// total pressure p_eps = p + pi_eps, and its congested limit eps -> 0.
//
// Both nonlinear families keep the congestion density rho / Z constant, so
// every wave curve is parametrised by Z alone. The middle state (v_m, Z_m) is
// the intersection of the 1-curve issued from the left state with the
// 3-curve issued from the right state; a contact at speed v_m separates the
// two intermediate densities.

#include "congest/eos.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace congest {

class RiemannError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
/// The wave curves do not meet above the density floor.
class VacuumError : public RiemannError {
 public:
  using RiemannError::RiemannError;
};
/// The wave curves do not meet below Z = 1 - kSingularGuard.
class CongestionError : public RiemannError {
 public:
  using RiemannError::RiemannError;
};
/// limit_congested_solution was called on data whose eps = 0 intersection
/// lies below Z = 1.
class NotCongestedError : public RiemannError {
 public:
  using RiemannError::RiemannError;
};
class QuadratureError : public RiemannError {
 public:
  QuadratureError(const std::string& what, double achieved)
      : RiemannError(what), achieved_tolerance(achieved) {}
  double achieved_tolerance;
};

/// Lower end of the bracket used for the curve intersection.
inline constexpr double kRiemannFractionFloor = 1e-8;

struct PrimState {
  double rho = 1.0;
  double v = 0.0;
  double Z = 0.5;

  double q() const { return rho * v; }
  double rho_star() const { return rho / Z; }
};

enum class WaveKind { Degenerate, Shock, Rarefaction, Contact };

const char* to_string(WaveKind kind);

/// One nonlinear wave: a shock has lo == hi == the shock speed; a rarefaction
/// spans [lo, hi] (head and tail of the fan, ordered by position).
struct NonlinearWave {
  WaveKind kind = WaveKind::Degenerate;
  double lo = 0.0;
  double hi = 0.0;
};

struct RiemannFan {
  PrimState left;
  PrimState right;
  double v_mid = 0.0;
  double Z_mid = 0.0;
  double rho_mid_left = 0.0;
  double rho_mid_right = 0.0;
  NonlinearWave wave1;
  NonlinearWave wave3;
  WaveKind contact = WaveKind::Contact;

  PressureLawd law;
  /// False for the eps = 0 system (background pressure only).
  bool include_singular = true;
  /// True when built by limit_congested_solution (Z_mid == 1).
  bool congested_limit = false;
  /// Common total pressure of the congested intermediate states.
  double p_bar = 0.0;
  /// Number of sign changes of v_L - v_R found by the bracketing scan.
  int intersections = 1;

  double contact_speed() const { return v_mid; }
  double slowest_speed() const { return wave1.lo; }
  double fastest_speed() const { return wave3.hi; }
  PrimState mid_left() const { return {rho_mid_left, v_mid, Z_mid}; }
  PrimState mid_right() const { return {rho_mid_right, v_mid, Z_mid}; }
};

/// Velocity on the Hugoniot curve of the given family (1 or 3) issued from
/// `hat`, at density fraction Z.
double hugoniot_velocity(const PrimState& hat, double Z, int family, const PressureLawd& law,
                         bool include_singular = true);

/// Shock speed between `hat` and the Hugoniot state at Z. At Z == hat.Z the
/// acoustic eigenvalue of the family is returned.
double shock_speed(const PrimState& hat, double Z, int family, const PressureLawd& law,
                   bool include_singular = true);

/// Density of the wave-curve state at Z (the congestion density is fixed).
inline double curve_density(const PrimState& hat, double Z) { return Z * hat.rho / hat.Z; }

/// Integral of (1/s) sqrt(p_eps'(s) / rho_star) from z0 to z1.
double rarefaction_integral(double z0, double z1, double rho_star, const PressureLawd& law,
                            bool include_singular = true);

/// Velocity on the integral curve of the given family issued from `hat`.
double rarefaction_velocity(const PrimState& hat, double Z, int family, const PressureLawd& law,
                            bool include_singular = true);

/// Wave curve used by the Riemann solver: shock branch where the entropy
/// conditions select it, rarefaction branch otherwise. Family 1 is issued
/// from a left state, family 3 from a right state.
double wave_curve_velocity(const PrimState& hat, double Z, int family, const PressureLawd& law,
                           bool include_singular = true);

/// True when the family-1 (from the left) or family-3 (from the right) wave
/// reaching Z is a shock.
inline bool is_shock_branch(const PrimState& hat, double Z) { return Z > hat.Z; }

RiemannFan solve_riemann(const PrimState& left, const PrimState& right, const PressureLawd& law,
                         bool include_singular = true);

PrimState sample_solution(const RiemannFan& fan, double xi);

/// Three-wave congested solution of the eps -> 0 limit.
RiemannFan limit_congested_solution(const PrimState& left, const PrimState& right, double gamma);

/// Rankine-Hugoniot residuals (mass, momentum, fraction) across a shock of
/// the fan; family 1 or 3. Uses the fan's pressure law.
std::array<double, 3> rankine_hugoniot_residual(const RiemannFan& fan, int family);

}  // namespace congest
